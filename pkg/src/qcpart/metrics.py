"""Partition quality metrics and the two-method comparison report.

Fidelity uses the product-of-errors model
    F_p = (1 - eps_h)^H * (1 - eps_cnot)^(CNOT + 3*SWAP + equivalents)
with each SWAP counted as three CNOTs and other gates folded in as CNOT
equivalents (CCX: a configurable decomposition size) or as default
single-qubit errors. Estimated SWAPs are logical realignments: one per
shared global qubit whose local indices differ between two partitions.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .circuits import CCX, CNOT, H, SWAP, Circuit, ErrorModel, GateKind, depth
from .pipeline import Partition
from .rng import SplitMix64


@dataclass(frozen=True)
class SwapEstimate:
    total: int
    per_pair: Mapping[tuple[int, int], int]
    per_partition_attribution: tuple[int, ...]
    waived: int

    def __post_init__(self):
        if self.total != sum(self.per_pair.values()):
            raise ValueError("per-pair counts do not sum to total")
        if self.total != sum(self.per_partition_attribution):
            raise ValueError("attribution does not sum to total")


@dataclass(frozen=True)
class PartitionMetrics:
    gate_count: int
    depth: int
    h_count: int
    cnot_count: int
    swap_attributed: int
    fidelity: float

    @property
    def error_rate(self) -> float:
        return 1.0 - self.fidelity


@dataclass(frozen=True)
class MethodReport:
    name: str
    num_partitions: int
    cut_qubits: tuple[int, ...]
    swaps: SwapEstimate
    total_fidelity: float
    max_depth: int
    time_seconds: float
    partitions: tuple[PartitionMetrics, ...]
    gate_counts_valid: bool


@dataclass(frozen=True)
class ComparisonReport:
    baseline: MethodReport
    hypergraph: MethodReport


def cut_qubits(parts: Sequence[Partition]) -> set[int]:
    """Global qubits appearing in the maps of two or more partitions."""
    counts: Counter[int] = Counter()
    for p in parts:
        counts.update(p.qubit_map.keys())
    return {q for q, n in counts.items() if n >= 2}


def pairwise_cuts(parts: Sequence[Partition]) -> dict[tuple[int, int], set[int]]:
    """Non-empty qubit-map intersections for every partition pair i < j."""
    result = {}
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            shared = set(parts[i].qubit_map) & set(parts[j].qubit_map)
            if shared:
                result[(i, j)] = shared
    return result


def estimate_swaps(
    parts: Sequence[Partition], heuristic_on: bool = False, seed: int = 42
) -> SwapEstimate:
    """Count misaligned shared qubits over all partition pairs.

    Pairs are visited in lexicographic order, shared qubits ascending; each
    misalignment costs one SWAP attributed to the lower-index partition.
    With the teleportation heuristic on, once a qubit has accumulated more
    than 3 misalignments (waived ones included), each further cost is
    waived with probability 0.6, drawn from a splitmix64 stream seeded once
    per call.
    """
    rng = SplitMix64(seed)
    misalignments: Counter[int] = Counter()
    per_pair: dict[tuple[int, int], int] = {}
    attribution = [0] * len(parts)
    waived = 0
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            for q in sorted(set(parts[i].qubit_map) & set(parts[j].qubit_map)):
                if parts[i].qubit_map[q] == parts[j].qubit_map[q]:
                    continue
                misalignments[q] += 1
                if heuristic_on and misalignments[q] > 3 and rng.next_float() < 0.6:
                    waived += 1
                    continue
                per_pair[(i, j)] = per_pair.get((i, j), 0) + 1
                attribution[i] += 1
    return SwapEstimate(
        total=sum(per_pair.values()),
        per_pair=per_pair,
        per_partition_attribution=tuple(attribution),
        waived=waived,
    )


def fidelity(
    h_count: int,
    cnot_count: int,
    swap_count: int,
    other_gates: Mapping[GateKind, int] | None = None,
    model: ErrorModel | None = None,
) -> float:
    """Product-of-errors fidelity for one partition (computed in log space)."""
    model = model or ErrorModel()
    cnot_equivalents = cnot_count + 3 * swap_count
    single_count = 0
    for kind, count in (other_gates or {}).items():
        if count < 0:
            raise ValueError("gate counts must be >= 0")
        if kind == CCX:
            cnot_equivalents += model.ccx_cnot_equivalents * count
        elif kind == SWAP:
            cnot_equivalents += 3 * count
        elif kind.arity == 1:
            single_count += count
        else:
            cnot_equivalents += (kind.arity - 1) * count
    if min(h_count, cnot_count, swap_count) < 0:
        raise ValueError("gate counts must be >= 0")
    log_f = (
        h_count * math.log1p(-model.eps_h)
        + cnot_equivalents * math.log1p(-model.eps_cnot)
        + single_count * math.log1p(-model.eps_default_single)
    )
    return math.exp(log_f)


def total_fidelity(per_partition: Sequence[float]) -> float:
    result = 1.0
    for f in per_partition:
        if not 0.0 <= f <= 1.0:
            raise ValueError(f"fidelity {f} outside [0, 1]")
        result *= f
    return result


def partition_metrics(
    part: Partition, swap_attributed: int, model: ErrorModel | None = None
) -> PartitionMetrics:
    kinds = Counter(g.kind for g in part.subcircuit.gates)
    h_count = kinds.pop(H, 0)
    cnot_count = kinds.pop(CNOT, 0)
    return PartitionMetrics(
        gate_count=len(part.subcircuit.gates),
        depth=depth(part.subcircuit),
        h_count=h_count,
        cnot_count=cnot_count,
        swap_attributed=swap_attributed,
        fidelity=fidelity(h_count, cnot_count, swap_attributed, kinds, model),
    )


def validate_gate_counts(original: Circuit, parts: Sequence[Partition]) -> bool:
    """Multiset equality of (kind, global qubits) between circuit and partitions.

    SWAP gates are excluded on both sides; they may be communication
    artifacts rather than core operations.
    """
    def core(gates):
        return Counter((g.kind, g.qubits) for g in gates if g.kind != SWAP)

    partitioned = Counter()
    for p in parts:
        partitioned.update(core(p.global_gates()))
    return core(original.gates) == partitioned


def method_report(
    name: str,
    original: Circuit,
    parts: Sequence[Partition],
    time_seconds: float = 0.0,
    model: ErrorModel | None = None,
    heuristic_on: bool = False,
    seed: int = 42,
) -> MethodReport:
    swaps = estimate_swaps(parts, heuristic_on=heuristic_on, seed=seed)
    rows = tuple(
        partition_metrics(p, swaps.per_partition_attribution[i], model)
        for i, p in enumerate(parts)
    )
    return MethodReport(
        name=name,
        num_partitions=len(parts),
        cut_qubits=tuple(sorted(cut_qubits(parts))),
        swaps=swaps,
        total_fidelity=total_fidelity([r.fidelity for r in rows]),
        max_depth=max((r.depth for r in rows), default=0),
        time_seconds=time_seconds,
        partitions=rows,
        gate_counts_valid=validate_gate_counts(original, parts),
    )


def build_report(
    original: Circuit,
    baseline_parts: Sequence[Partition],
    hypergraph_parts: Sequence[Partition],
    timings: Mapping[str, float] | None = None,
    model: ErrorModel | None = None,
    heuristic_on: bool = False,
    seed: int = 42,
) -> ComparisonReport:
    timings = dict(timings or {})
    return ComparisonReport(
        baseline=method_report(
            "block-baseline", original, baseline_parts,
            timings.get("baseline", 0.0), model, heuristic_on, seed,
        ),
        hypergraph=method_report(
            "hypergraph", original, hypergraph_parts,
            timings.get("hypergraph", 0.0), model, heuristic_on, seed,
        ),
    )


def report_to_dict(report: ComparisonReport) -> dict:
    """Stable structured rendering; timings live under their own key."""
    def method(m: MethodReport) -> dict:
        return {
            "name": m.name,
            "num_partitions": m.num_partitions,
            "cut_qubits": list(m.cut_qubits),
            "swap_total": m.swaps.total,
            "swap_waived": m.swaps.waived,
            "swap_attribution": list(m.swaps.per_partition_attribution),
            "swap_per_pair": {
                f"{i}-{j}": n for (i, j), n in sorted(m.swaps.per_pair.items())
            },
            "total_fidelity": m.total_fidelity,
            "max_depth": m.max_depth,
            "gate_counts_valid": m.gate_counts_valid,
            "partitions": [
                {
                    "gate_count": r.gate_count,
                    "depth": r.depth,
                    "h_count": r.h_count,
                    "cnot_count": r.cnot_count,
                    "swap_attributed": r.swap_attributed,
                    "fidelity": r.fidelity,
                    "error_rate": r.error_rate,
                }
                for r in m.partitions
            ],
        }

    return {
        "baseline": method(report.baseline),
        "hypergraph": method(report.hypergraph),
        "timings": {
            "baseline_seconds": report.baseline.time_seconds,
            "hypergraph_seconds": report.hypergraph.time_seconds,
        },
    }


def format_report(report: ComparisonReport) -> str:
    """Fixed-width text table of the headline metrics."""
    header = (
        f"{'Method':<16}{'Parts':>6}{'CutQ':>6}{'SWAPs':>7}"
        f"{'Fidelity':>10}{'MaxDepth':>10}{'Time(s)':>9}"
    )
    lines = [header, "-" * len(header)]
    for m in (report.baseline, report.hypergraph):
        lines.append(
            f"{m.name:<16}{m.num_partitions:>6}{len(m.cut_qubits):>6}"
            f"{m.swaps.total:>7}{m.total_fidelity:>10.4f}{m.max_depth:>10}"
            f"{m.time_seconds:>9.3f}"
        )
    for m in (report.baseline, report.hypergraph):
        if not m.gate_counts_valid:
            lines.append(f"WARNING: gate count validation failed for {m.name}")
    return "\n".join(lines)
