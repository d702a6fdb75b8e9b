"""Fidelity-weighted hypergraph construction and hMETIS-dialect I/O.

One node per gate. Two hyperedge families:
  - gate-level: a singleton {gate} per multi-qubit gate, weight
    100 * arity / eps(gate), penalizing cuts through entangling operations;
  - temporal chain: all gates on one qubit (when >= 2), weight
    max(1, 100 * (m // 2) / eps_h), preserving per-qubit execution order.

Node weights are 10/eps for CNOT and 1/eps otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .circuits import CNOT, H, Circuit, ErrorModel, GateKind

GATE_LEVEL = "gate-level"
TEMPORAL = "temporal"
UNKNOWN = "unknown"


class HgrMode(str, Enum):
    """hMETIS serialization dialects.

    PAPER_RAW:        header ``E N 1``, un-normalized integer edge weights,
                      trailing node weights (golden-file target).
    PAPER_NORMALIZED: same layout with weights scaled to max 1e6.
    STANDARD:         fmt code 11 so external solvers read both weight kinds.
    """

    PAPER_RAW = "paper-raw"
    PAPER_NORMALIZED = "paper-normalized"
    STANDARD = "standard"


class HgrFormatError(ValueError):
    """Malformed hMETIS-dialect input."""


@dataclass(frozen=True)
class Hyperedge:
    members: tuple[int, ...]
    weight: float
    kind: str = UNKNOWN
    qubit: int | None = None  # set for temporal chains


@dataclass(frozen=True)
class Hypergraph:
    num_nodes: int
    node_weights: tuple[float, ...]
    hyperedges: tuple[Hyperedge, ...]

    def __post_init__(self):
        if len(self.node_weights) != self.num_nodes:
            raise ValueError("one weight per node required")
        for e in self.hyperedges:
            if not e.members:
                raise ValueError("empty hyperedge")
            for v in e.members:
                if not 0 <= v < self.num_nodes:
                    raise ValueError(f"hyperedge member {v} out of range")

    @property
    def num_edges(self) -> int:
        return len(self.hyperedges)


def _eps_for_node(kind: GateKind, model: ErrorModel) -> float:
    if kind == CNOT:
        return model.eps_cnot
    if kind == H:
        return model.eps_h
    return model.eps_default_single


def node_weight(kind: GateKind, model: ErrorModel) -> float:
    """10/eps for CNOT (10x criticality factor), 1/eps for everything else."""
    factor = 10.0 if kind == CNOT else 1.0
    return factor / _eps_for_node(kind, model)


def gate_level_edge_weight(arity: int, eps: float) -> float:
    if arity < 2:
        raise ValueError("gate-level hyperedges exist only for multi-qubit gates")
    return 100.0 * arity / eps


def temporal_edge_weight(gates_on_qubit: int, model: ErrorModel) -> float:
    if gates_on_qubit < 2:
        raise ValueError("temporal chains require >= 2 gates on the qubit")
    return max(1.0, 100.0 * (gates_on_qubit // 2) / model.eps_h)


def circuit_to_hypergraph(circuit: Circuit, model: ErrorModel | None = None) -> Hypergraph:
    """Build the weighted hypergraph for a circuit.

    Gate-level hyperedges come first (in gate order), then one temporal
    chain per qubit hosting at least two gates (in qubit order).
    """
    model = model or ErrorModel()
    node_weights = tuple(node_weight(g.kind, model) for g in circuit.gates)

    edges: list[Hyperedge] = []
    for idx, gate in enumerate(circuit.gates):
        if gate.kind.arity > 1:
            eps = model.eps_cnot if gate.kind == CNOT else model.eps_default_multi
            edges.append(
                Hyperedge(
                    members=(idx,),
                    weight=gate_level_edge_weight(gate.kind.arity, eps),
                    kind=GATE_LEVEL,
                )
            )

    gates_per_qubit: list[list[int]] = [[] for _ in range(circuit.num_qubits)]
    for idx, gate in enumerate(circuit.gates):
        for q in gate.qubits:
            gates_per_qubit[q].append(idx)
    for q, members in enumerate(gates_per_qubit):
        if len(members) >= 2:
            edges.append(
                Hyperedge(
                    members=tuple(members),
                    weight=temporal_edge_weight(len(members), model),
                    kind=TEMPORAL,
                    qubit=q,
                )
            )

    return Hypergraph(len(circuit.gates), node_weights, tuple(edges))


def normalize_weights(hg: Hypergraph) -> Hypergraph:
    """Scale hyperedge weights to w * 1e6 / max(w), rounded, floored at 1."""
    if not hg.hyperedges:
        return hg
    max_w = max(e.weight for e in hg.hyperedges)
    if max_w <= 0:
        return hg
    scaled = tuple(
        replace(e, weight=float(max(1, round(e.weight * 1e6 / max_w))))
        for e in hg.hyperedges
    )
    return Hypergraph(hg.num_nodes, hg.node_weights, scaled)


def write_hgr(hg: Hypergraph, mode: HgrMode = HgrMode.PAPER_NORMALIZED) -> str:
    """Serialize to the hMETIS dialect (LF endings, 1-based node indices)."""
    mode = HgrMode(mode)
    if mode == HgrMode.PAPER_NORMALIZED:
        hg = normalize_weights(hg)
    fmt = "11" if mode == HgrMode.STANDARD else "1"
    lines = [f"{hg.num_edges} {hg.num_nodes} {fmt}"]
    for e in hg.hyperedges:
        members = " ".join(str(v + 1) for v in e.members)
        lines.append(f"{int(round(e.weight))} {members}")
    for w in hg.node_weights:
        lines.append(str(int(round(w))))
    return "\n".join(lines) + "\n"


def read_hgr(text: str) -> Hypergraph:
    """Parse any write_hgr mode. Hyperedge kinds are not recoverable."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise HgrFormatError("empty input")
    header = lines[0].split()
    if len(header) not in (2, 3):
        raise HgrFormatError(f"malformed header {lines[0]!r}")
    try:
        num_edges, num_nodes = int(header[0]), int(header[1])
    except ValueError:
        raise HgrFormatError(f"malformed header {lines[0]!r}")
    fmt = header[2] if len(header) == 3 else "0"
    if fmt not in ("1", "11"):
        raise HgrFormatError(f"unsupported fmt code {fmt!r}")
    if len(lines) - 1 < num_edges:
        raise HgrFormatError(
            f"expected {num_edges} hyperedge lines, found {len(lines) - 1}"
        )

    edges: list[Hyperedge] = []
    for ln in lines[1 : 1 + num_edges]:
        fieldvals = ln.split()
        if len(fieldvals) < 2:
            raise HgrFormatError(f"hyperedge line too short: {ln!r}")
        try:
            weight = int(fieldvals[0])
            members = tuple(int(t) - 1 for t in fieldvals[1:])
        except ValueError:
            raise HgrFormatError(f"bad integer in hyperedge line {ln!r}")
        for v in members:
            if not 0 <= v < num_nodes:
                raise HgrFormatError(f"node index {v + 1} out of range")
        edges.append(Hyperedge(members=members, weight=float(weight)))

    weight_lines = lines[1 + num_edges :]
    if len(weight_lines) < num_nodes:
        raise HgrFormatError(
            f"expected {num_nodes} node weight lines, found {len(weight_lines)}"
        )
    try:
        node_weights = tuple(float(int(ln)) for ln in weight_lines[:num_nodes])
    except ValueError:
        raise HgrFormatError("bad integer in node weight section")
    return Hypergraph(num_nodes, node_weights, tuple(edges))
