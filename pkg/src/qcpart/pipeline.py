"""Labeled circuit -> trimmed partitions -> optional merge -> dependency DAG."""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .circuits import Circuit, ErrorModel, Gate
from .hypergraph import Hypergraph, circuit_to_hypergraph
from .partitioner import PartitionAssignment, SolverConfig, partition as solve_partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Partition:
    """A trimmed subcircuit plus its {global qubit -> local index} map.

    Locals are always the sorted-contiguous re-mapping of the active
    globals: sorting the globals ascending yields locals 0, 1, 2, ...
    """

    subcircuit: Circuit
    qubit_map: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "qubit_map", dict(self.qubit_map))
        locals_ = [self.qubit_map[g] for g in sorted(self.qubit_map)]
        if locals_ != list(range(len(locals_))):
            raise ValueError(f"qubit map is not sorted-contiguous: {self.qubit_map}")
        if self.subcircuit.num_qubits != len(self.qubit_map):
            raise ValueError("subcircuit qubit count does not match qubit map size")

    @property
    def inverse_map(self) -> dict[int, int]:
        return {local: glob for glob, local in self.qubit_map.items()}

    def global_gates(self) -> list[Gate]:
        """The partition's gates translated back to global qubit indices."""
        inv = self.inverse_map
        return [
            Gate(g.kind, tuple(inv[q] for q in g.qubits))
            for g in self.subcircuit.gates
        ]


@dataclass(frozen=True)
class DependencyDag:
    """Execution-order DAG: edge i -> j (i < j) per shared-qubit partition pair."""

    num_partitions: int
    edges: tuple[tuple[int, int, frozenset[int]], ...]

    def __post_init__(self):
        for i, j, shared in self.edges:
            if not (0 <= i < j < self.num_partitions):
                raise ValueError(f"bad edge ({i}, {j})")
            if not shared:
                raise ValueError(f"edge ({i}, {j}) carries no shared qubits")

    @property
    def num_edges(self) -> int:
        return len(self.edges)


def _contiguous_map(active_globals: set[int]) -> dict[int, int]:
    return {g: i for i, g in enumerate(sorted(active_globals))}


def partition_from_global_gates(gates: Sequence[Gate]) -> Partition:
    """Build a Partition (map + local-indexed subcircuit) from global-indexed gates."""
    active = {q for g in gates for q in g.qubits}
    qubit_map = _contiguous_map(active)
    local_gates = tuple(
        Gate(g.kind, tuple(qubit_map[q] for q in g.qubits)) for g in gates
    )
    return Partition(Circuit(len(qubit_map), local_gates), qubit_map)


def create_trimmed_partitions(
    circuit: Circuit, labels: PartitionAssignment | Sequence[int]
) -> list[Partition]:
    """Split a circuit by per-gate labels into local-indexed partitions.

    Partitions come out in ascending label order with gates in original
    order; label ids with no gates are skipped with a warning.
    """
    label_seq = labels.labels if isinstance(labels, PartitionAssignment) else tuple(labels)
    if len(label_seq) != len(circuit.gates):
        raise ValueError(
            f"number of labels ({len(label_seq)}) does not match "
            f"number of gates ({len(circuit.gates)})"
        )
    present = set(label_seq)
    if isinstance(labels, PartitionAssignment):
        for part_id in range(labels.k):
            if part_id not in present:
                logger.warning("partition %d is empty (no active qubits)", part_id)
    parts: list[Partition] = []
    for part_id in sorted(present):
        gates = [g for g, label in zip(circuit.gates, label_seq) if label == part_id]
        parts.append(partition_from_global_gates(gates))
    return parts


def shared_qubits(map_a: Mapping[int, int], map_b: Mapping[int, int]) -> set[int]:
    """Global qubits present in both maps."""
    return set(map_a.keys()) & set(map_b.keys())


def combine_partitions(a: Partition, b: Partition) -> Partition:
    """Merge two partitions: a's gates then b's, over a unified contiguous map."""
    return partition_from_global_gates(a.global_gates() + b.global_gates())


def merge_partitions(parts: Sequence[Partition], threshold: int) -> list[Partition]:
    """Multi-pass greedy merging of partitions sharing >= threshold qubits.

    Each pass scans in index order; every unconsumed partition merges with
    the later unconsumed partner sharing the most qubits (first maximum
    wins), provided the count meets the threshold. Passes repeat until one
    completes without a merge.
    """
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    current = list(parts)
    merged = True
    while merged:
        merged = False
        next_round: list[Partition] = []
        consumed: set[int] = set()
        for i, p1 in enumerate(current):
            if i in consumed:
                continue
            best_j, best_shared = -1, 0
            for j in range(i + 1, len(current)):
                if j in consumed:
                    continue
                num_shared = len(shared_qubits(p1.qubit_map, current[j].qubit_map))
                if num_shared >= threshold and num_shared > best_shared:
                    best_shared = num_shared
                    best_j = j
            if best_j >= 0:
                next_round.append(combine_partitions(p1, current[best_j]))
                consumed.add(i)
                consumed.add(best_j)
                merged = True
            else:
                next_round.append(p1)
                consumed.add(i)
        current = next_round
    return current


@dataclass(frozen=True)
class PipelineResult:
    hypergraph: Hypergraph
    assignment: PartitionAssignment
    partitions: tuple[Partition, ...]
    dag: DependencyDag


def run_hypergraph_pipeline(
    circuit: Circuit,
    k: int,
    model: ErrorModel | None = None,
    imbalance: float = 0.05,
    seed: int = 42,
    backend: str = "internal",
    merge_threshold: int | None = None,
) -> PipelineResult:
    """Full convert -> partition -> trim -> (merge) -> DAG pass.

    Merging runs only when merge_threshold is given; the default comparison
    path analyses the unmerged partitions.
    """
    model = model or ErrorModel()
    hg = circuit_to_hypergraph(circuit, model)
    config = SolverConfig(k=k, imbalance=imbalance, seed=seed, backend=backend)
    assignment = solve_partition(hg, config)
    parts = create_trimmed_partitions(circuit, assignment)
    if merge_threshold is not None:
        parts = merge_partitions(parts, merge_threshold)
    return PipelineResult(
        hypergraph=hg,
        assignment=assignment,
        partitions=tuple(parts),
        dag=build_dependency_graph(parts),
    )


def build_dependency_graph(parts: Sequence[Partition]) -> DependencyDag:
    """Edge i -> j for every i < j whose qubit maps intersect."""
    edges = []
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            shared = shared_qubits(parts[i].qubit_map, parts[j].qubit_map)
            if shared:
                edges.append((i, j, frozenset(shared)))
    return DependencyDag(len(parts), tuple(edges))
