"""km1 hypergraph partitioning.

The internal solver is a deterministic multilevel bisection scheme:
heavy-connectivity matching for coarsening, greedy balanced initial
assignment, then exact-gain boundary refinement. k > 2 is handled by
recursive bisection. An external-solver adapter mirrors the usual
Mt-KaHyPar style invocation for users who have a binary available.

All randomness comes from the splitmix64 generator seeded from the config,
so identical inputs always produce identical labels.
"""

from __future__ import annotations

import math
import os
import subprocess
import tempfile
from dataclasses import dataclass

from .hypergraph import HgrMode, Hypergraph, normalize_weights, write_hgr
from .rng import SplitMix64

INTERNAL = "internal"
_RESTARTS = 4


class SolverError(RuntimeError):
    """Partitioning failed (external process error or infeasible balance)."""


@dataclass(frozen=True)
class PartitionAssignment:
    labels: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        for label in self.labels:
            if not 0 <= label < self.k:
                raise ValueError(f"label {label} outside [0, {self.k})")


@dataclass(frozen=True)
class SolverConfig:
    k: int
    imbalance: float = 0.05
    seed: int = 42
    backend: str = INTERNAL  # INTERNAL or a path to an external solver binary

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.imbalance < 0:
            raise ValueError("imbalance must be >= 0")


def dynamic_k(num_ops: int, num_qubits: int, block_size: int) -> int:
    """max(2, min(num_ops // block_size, floor(sqrt(num_qubits))))."""
    if block_size < 1:
        raise ValueError("block_size must be >= 1")
    if num_qubits < 1:
        raise ValueError("num_qubits must be >= 1")
    return max(2, min(num_ops // block_size, math.isqrt(num_qubits)))


def km1(hg: Hypergraph, assignment: PartitionAssignment) -> float:
    """Sum over hyperedges of w(e) * (number of parts e touches - 1)."""
    if len(assignment.labels) != hg.num_nodes:
        raise ValueError("assignment does not match hypergraph")
    total = 0.0
    for e in hg.hyperedges:
        spanned = len({assignment.labels[v] for v in e.members})
        total += e.weight * (spanned - 1)
    return total


def balance_cap(hg: Hypergraph, k: int, imbalance: float) -> float:
    return (1.0 + imbalance) * math.ceil(sum(hg.node_weights) / k)


def check_balance(hg: Hypergraph, assignment: PartitionAssignment, imbalance: float) -> bool:
    """True iff every part's node weight is within (1+imbalance)*ceil(total/k)."""
    cap = balance_cap(hg, assignment.k, imbalance)
    part_weights = [0.0] * assignment.k
    for v, label in enumerate(assignment.labels):
        part_weights[label] += hg.node_weights[v]
    return all(w <= cap for w in part_weights)


def random_balanced_assignment(hg: Hypergraph, k: int, seed: int) -> PartitionAssignment:
    """Round-robin labels over a seeded shuffle of the nodes.

    Exactly balanced for unit node weights; also used as one of the internal
    solver's restart points, so the solver's km1 never exceeds this one's
    after refinement.
    """
    order = list(range(hg.num_nodes))
    SplitMix64(seed).shuffle(order)
    labels = [0] * hg.num_nodes
    for pos, v in enumerate(order):
        labels[v] = pos % k
    return PartitionAssignment(tuple(labels), k)


# ---------------------------------------------------------------------------
# Internal solver
# ---------------------------------------------------------------------------


@dataclass
class _Instance:
    """A bisection sub-problem over contracted clusters of original nodes."""

    clusters: list[list[int]]  # original node ids per cluster
    weights: list[float]
    edges: list[tuple[float, tuple[int, ...]]]  # weight, cluster indices (>= 2 distinct)
    cap0: float
    cap1: float


def _induce(hg: Hypergraph, nodes: list[int], cap0: float, cap1: float) -> _Instance:
    index = {v: i for i, v in enumerate(nodes)}
    edges = []
    for e in hg.hyperedges:
        members = tuple(sorted({index[v] for v in e.members if v in index}))
        if len(members) >= 2:
            edges.append((e.weight, members))
    return _Instance(
        clusters=[[v] for v in nodes],
        weights=[hg.node_weights[v] for v in nodes],
        edges=edges,
        cap0=cap0,
        cap1=cap1,
    )


def _contract(inst: _Instance, rng: SplitMix64, max_cluster: float) -> _Instance | None:
    """One round of heavy-connectivity matching; None when nothing matched."""
    n = len(inst.clusters)
    connectivity: dict[tuple[int, int], float] = {}
    for w, members in inst.edges:
        share = w / (len(members) - 1)
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                pair = (members[i], members[j])
                connectivity[pair] = connectivity.get(pair, 0.0) + share

    neighbors: dict[int, list[tuple[float, int]]] = {}
    for (a, b), w in connectivity.items():
        neighbors.setdefault(a, []).append((w, b))
        neighbors.setdefault(b, []).append((w, a))

    order = list(range(n))
    rng.shuffle(order)
    merged_into = list(range(n))
    matched = [False] * n
    any_match = False
    for v in order:
        if matched[v]:
            continue
        best = -1
        for _, u in sorted(neighbors.get(v, []), key=lambda t: (-t[0], t[1])):
            if matched[u] or u == v:
                continue
            if inst.weights[v] + inst.weights[u] > max_cluster:
                continue
            best = u  # list is sorted; first feasible neighbor is the heaviest
            break
        if best >= 0:
            matched[v] = matched[best] = True
            merged_into[best] = v
            any_match = True
    if not any_match:
        return None

    new_id: dict[int, int] = {}
    clusters: list[list[int]] = []
    weights: list[float] = []
    for v in range(n):
        root = merged_into[v]
        if root not in new_id:
            new_id[root] = len(clusters)
            clusters.append([])
            weights.append(0.0)
        cid = new_id[root]
        clusters[cid].extend(inst.clusters[v])
        weights[cid] += inst.weights[v]

    edges = []
    for w, members in inst.edges:
        mapped = tuple(sorted({new_id[merged_into[v]] for v in members}))
        if len(mapped) >= 2:
            edges.append((w, mapped))
    return _Instance(clusters, weights, edges, inst.cap0, inst.cap1)


def _sides_feasible(side_weights: list[float], inst: _Instance) -> bool:
    return side_weights[0] <= inst.cap0 and side_weights[1] <= inst.cap1


def _greedy_initial(inst: _Instance, rng: SplitMix64) -> list[int]:
    """Heaviest-first assignment to the side with the most remaining headroom."""
    order = sorted(range(len(inst.weights)), key=lambda v: (-inst.weights[v], v))
    side = [0] * len(inst.weights)
    loads = [0.0, 0.0]
    caps = (inst.cap0, inst.cap1)
    for v in order:
        head0 = caps[0] - loads[0] - inst.weights[v]
        head1 = caps[1] - loads[1] - inst.weights[v]
        pick = 0 if head0 >= head1 else 1
        side[v] = pick
        loads[pick] += inst.weights[v]
    return side


def _bisection_cost(inst: _Instance, side: list[int]) -> float:
    cost = 0.0
    for w, members in inst.edges:
        if len({side[v] for v in members}) > 1:
            cost += w
    return cost


def _move_gain(inst: _Instance, side: list[int], incident: dict[int, list[int]], v: int) -> float:
    gain = 0.0
    for ei in incident.get(v, ()):
        w, members = inst.edges[ei]
        same = other = 0
        for u in members:
            if u == v:
                continue
            if side[u] == side[v]:
                same += 1
            else:
                other += 1
        if other == 0 and same > 0:
            gain -= w  # move would newly cut this edge
        elif same == 0 and other > 0:
            gain += w  # move would uncut it
    return gain


def _refine(inst: _Instance, side: list[int]) -> None:
    """Fiduccia-Mattheyses refinement with exact cut gains.

    Each pass tentatively moves every cluster at most once, always taking
    the best-gain move (lower cluster index on ties) even when it is
    negative. A move may overflow the target cap by up to the heaviest
    cluster weight so that weight exchanges stay reachable, but the pass
    rolls back to the best prefix whose loads satisfy both caps. Passes
    repeat while they improve the cut, so the result is never worse than
    the (assumed feasible) input.
    """
    incident: dict[int, list[int]] = {}
    for ei, (_, members) in enumerate(inst.edges):
        for v in members:
            incident.setdefault(v, []).append(ei)
    caps = (inst.cap0, inst.cap1)
    slack = max(inst.weights, default=0.0)

    improved = True
    while improved:
        improved = False
        loads = [0.0, 0.0]
        for v, s in enumerate(side):
            loads[s] += inst.weights[v]
        locked = [False] * len(side)
        moves: list[int] = []
        running = 0.0
        best_running, best_prefix = 0.0, 0
        for _ in range(len(side)):
            best_v, best_gain = -1, -math.inf
            for v in range(len(side)):
                if locked[v]:
                    continue
                target = 1 - side[v]
                if loads[target] + inst.weights[v] > caps[target] + slack:
                    continue
                gain = _move_gain(inst, side, incident, v)
                if gain > best_gain:
                    best_v, best_gain = v, gain
            if best_v < 0:
                break
            loads[side[best_v]] -= inst.weights[best_v]
            side[best_v] = 1 - side[best_v]
            loads[side[best_v]] += inst.weights[best_v]
            locked[best_v] = True
            moves.append(best_v)
            running += best_gain
            feasible = loads[0] <= caps[0] and loads[1] <= caps[1]
            if feasible and running > best_running:
                best_running, best_prefix = running, len(moves)
        for v in moves[best_prefix:]:
            side[v] = 1 - side[v]
        if best_running > 0:
            improved = True


def _repair_balance(inst: _Instance, side: list[int]) -> bool:
    """Move lightest-damage clusters off an overloaded side. True on success."""
    incident: dict[int, list[int]] = {}
    for ei, (_, members) in enumerate(inst.edges):
        for v in members:
            incident.setdefault(v, []).append(ei)
    loads = [0.0, 0.0]
    for v, s in enumerate(side):
        loads[s] += inst.weights[v]
    caps = (inst.cap0, inst.cap1)
    for _ in range(len(side)):
        over = next((s for s in (0, 1) if loads[s] > caps[s]), None)
        if over is None:
            return True
        candidates = [v for v in range(len(side)) if side[v] == over]
        candidates.sort(key=lambda v: (-_move_gain(inst, side, incident, v), v))
        moved = False
        for v in candidates:
            target = 1 - over
            if loads[target] + inst.weights[v] <= caps[target]:
                loads[over] -= inst.weights[v]
                side[v] = target
                loads[target] += inst.weights[v]
                moved = True
                break
        if not moved:
            return False
    return _sides_feasible(loads, inst)


def _project(inst: _Instance, coarse: _Instance, coarse_side: list[int]) -> list[int]:
    label_of_node = {}
    for cid, cluster in enumerate(coarse.clusters):
        for v in cluster:
            label_of_node[v] = coarse_side[cid]
    return [label_of_node[inst.clusters[i][0]] for i in range(len(inst.clusters))]


def _solve_bisection(inst: _Instance, rng: SplitMix64) -> list[int] | None:
    """Multilevel bisection of one instance; None if no balanced split found."""
    max_cluster = max(inst.cap0, inst.cap1) / 2.0
    levels = [inst]
    while len(levels[-1].clusters) > 8:
        coarser = _contract(levels[-1], rng, max_cluster)
        if coarser is None or len(coarser.clusters) == len(levels[-1].clusters):
            break
        levels.append(coarser)

    best_side: list[int] | None = None
    best_cost = math.inf
    for restart in range(_RESTARTS):
        coarse = levels[-1]
        if restart == 0:
            side = _greedy_initial(coarse, rng)
        else:
            side = [rng.next_below(2) for _ in coarse.clusters]
        loads = [0.0, 0.0]
        for v, s in enumerate(side):
            loads[s] += coarse.weights[v]
        if not _sides_feasible(loads, coarse):
            if not _repair_balance(coarse, side):
                continue
        _refine(coarse, side)
        for level in range(len(levels) - 2, -1, -1):
            side = _project(levels[level], levels[level + 1], side)
            _refine(levels[level], side)
        loads = [0.0, 0.0]
        for v, s in enumerate(side):
            loads[s] += inst.weights[v]
        if not _sides_feasible(loads, inst):
            if not _repair_balance(inst, side):
                continue
            _refine(inst, side)
        cost = _bisection_cost(inst, side)
        if cost < best_cost:
            best_cost, best_side = cost, list(side)

    if best_side is None:
        # Coarse-level restarts could not be repaired into balance; retry
        # flat on the finest level where individual clusters are lighter.
        for _ in range(_RESTARTS):
            side = [rng.next_below(2) for _ in inst.clusters]
            loads = [0.0, 0.0]
            for v, s in enumerate(side):
                loads[s] += inst.weights[v]
            if not _sides_feasible(loads, inst) and not _repair_balance(inst, side):
                continue
            _refine(inst, side)
            cost = _bisection_cost(inst, side)
            if cost < best_cost:
                best_cost, best_side = cost, list(side)
    return best_side


def _partition_internal(hg: Hypergraph, config: SolverConfig) -> PartitionAssignment:
    k = config.k
    if k > hg.num_nodes:
        raise SolverError(f"k={k} exceeds node count {hg.num_nodes}")
    if k == 1 or hg.num_nodes == 0:
        return PartitionAssignment(tuple([0] * hg.num_nodes), k)

    hg = normalize_weights(hg)
    cap = balance_cap(hg, k, config.imbalance)
    rng = SplitMix64(config.seed)
    labels = [0] * hg.num_nodes

    # Recursive bisection: split the k target parts into two groups and
    # bound each side by (parts on that side) * final cap.
    stack: list[tuple[list[int], int, int]] = [(list(range(hg.num_nodes)), 0, k)]
    while stack:
        nodes, first_label, parts = stack.pop()
        if parts == 1:
            for v in nodes:
                labels[v] = first_label
            continue
        k0 = (parts + 1) // 2
        k1 = parts - k0
        inst = _induce(hg, nodes, cap0=k0 * cap, cap1=k1 * cap)
        # each side must also leave the other side enough room
        total = sum(inst.weights)
        inst.cap0 = min(inst.cap0, total)
        inst.cap1 = min(inst.cap1, total)
        side = _solve_bisection(inst, rng)
        if side is None:
            raise SolverError("no balanced bisection found at the configured imbalance")
        left = [nodes[i] for i in range(len(nodes)) if side[i] == 0]
        right = [nodes[i] for i in range(len(nodes)) if side[i] == 1]
        if not left or not right:
            raise SolverError("degenerate bisection (one side empty)")
        stack.append((left, first_label, k0))
        stack.append((right, first_label + k0, k1))

    # A refined seeded random assignment is one more candidate, which also
    # upper-bounds the result by that assignment's km1.
    result = PartitionAssignment(tuple(labels), k)
    if k == 2:
        rand = random_balanced_assignment(hg, k, config.seed)
        inst = _induce(hg, list(range(hg.num_nodes)), cap0=cap, cap1=cap)
        side = list(rand.labels)
        loads = [0.0, 0.0]
        for v, s in enumerate(side):
            loads[s] += inst.weights[v]
        if _sides_feasible(loads, inst):
            _refine(inst, side)
            candidate = PartitionAssignment(tuple(side), k)
            if km1(hg, candidate) < km1(hg, result):
                result = candidate

    if not check_balance(hg, result, config.imbalance):
        raise SolverError("internal solver produced an unbalanced assignment")
    return result


# ---------------------------------------------------------------------------
# External solver adapter
# ---------------------------------------------------------------------------


def _partition_external(hg: Hypergraph, config: SolverConfig) -> PartitionAssignment:
    binary = config.backend
    with tempfile.TemporaryDirectory(prefix="qcpart-") as tmp:
        input_path = os.path.join(tmp, "circuit.hgr")
        with open(input_path, "w") as fh:
            fh.write(write_hgr(hg, HgrMode.STANDARD))
        cmd = [
            binary,
            "-h", input_path,
            "-k", str(config.k),
            "-e", str(config.imbalance),
            "-o", "km1",
            "-m", "direct",
            "--seed", str(config.seed),
            "--write-partition-file=true",
        ]
        proc = subprocess.run(cmd, capture_output=True, text=True)
        if proc.returncode != 0:
            raise SolverError(f"external solver failed: {proc.stderr.strip()}")
        candidates = [
            os.path.join(tmp, name)
            for name in os.listdir(tmp)
            if ".part" in name and name != "circuit.hgr"
        ]
        if not candidates:
            raise SolverError("partition file not found next to solver input")
        partition_file = max(candidates, key=os.path.getmtime)
        labels = []
        with open(partition_file) as fh:
            for line in fh:
                line = line.strip()
                if line:
                    labels.append(int(line))
    if len(labels) != hg.num_nodes:
        raise SolverError(
            f"label count mismatch: {len(labels)} labels for {hg.num_nodes} nodes"
        )
    return PartitionAssignment(tuple(labels), config.k)


def partition(hg: Hypergraph, config: SolverConfig) -> PartitionAssignment:
    """Assign each node to one of config.k parts minimizing km1 under balance."""
    if config.backend == INTERNAL:
        return _partition_internal(hg, config)
    return _partition_external(hg, config)
