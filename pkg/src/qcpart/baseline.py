"""Block-size-driven baseline partitioner and fixture replay.

The live grouping heuristic is a stand-in for stream-style block
partitioners: gates are packed into the earliest open block with qubit
capacity, guarded so a gate never jumps behind a later block that already
touched one of its qubits. Published reference partitions are replayed
through JSON fixtures instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .circuits import Circuit
from .pipeline import Partition, partition_from_global_gates


class FixtureError(ValueError):
    """Invalid gate-index fixture."""


@dataclass(frozen=True)
class BaselineConfig:
    block_size: int  # max distinct qubits per block

    def __post_init__(self):
        if self.block_size < 1:
            raise ValueError("block_size must be >= 1")


def block_partition(circuit: Circuit, config: BaselineConfig) -> list[list[int]]:
    """Greedy streaming grouping of gate indices into qubit-capacity blocks.

    A gate joins the earliest open block whose qubit set stays within
    block_size, unless a block opened later already contains a gate on any
    of its qubits (which would reorder causally dependent gates).
    """
    blocks: list[dict] = []  # each: {"qubits": set, "gates": list}
    for idx, gate in enumerate(circuit.gates):
        if gate.kind.arity > config.block_size:
            raise ValueError(
                f"gate {gate.kind.name}{gate.qubits} exceeds block size "
                f"{config.block_size}"
            )
        chosen = None
        for pos, block in enumerate(blocks):
            if len(block["qubits"] | set(gate.qubits)) > config.block_size:
                continue
            blocked = any(
                later["qubits"] & set(gate.qubits) for later in blocks[pos + 1 :]
            )
            if not blocked:
                chosen = block
                break
        if chosen is None:
            chosen = {"qubits": set(), "gates": []}
            blocks.append(chosen)
        chosen["qubits"] |= set(gate.qubits)
        chosen["gates"].append(idx)
    return [block["gates"] for block in blocks]


def remap_groups(circuit: Circuit, groups: list[list[int]]) -> list[Partition]:
    """Apply the sorted-contiguous local re-mapping to each gate-index group."""
    seen: set[int] = set()
    for group in groups:
        for idx in group:
            if idx in seen:
                raise FixtureError(f"gate index {idx} appears in more than one group")
            seen.add(idx)
    return [
        partition_from_global_gates([circuit.gates[idx] for idx in group])
        for group in groups
    ]


def load_fixture(text: str, circuit: Circuit) -> list[list[int]]:
    """Parse a JSON fixture: {"partitions": [[gate indices...], ...]}."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"invalid JSON: {exc}")
    groups = doc.get("partitions") if isinstance(doc, dict) else doc
    if not isinstance(groups, list) or not all(isinstance(g, list) for g in groups):
        raise FixtureError("fixture must hold a list of gate-index lists")
    seen: set[int] = set()
    result: list[list[int]] = []
    for group in groups:
        indices = []
        for idx in group:
            if not isinstance(idx, int):
                raise FixtureError(f"non-integer gate index {idx!r}")
            if not 0 <= idx < len(circuit.gates):
                raise FixtureError(f"gate index {idx} out of range")
            if idx in seen:
                raise FixtureError(f"duplicate gate index {idx}")
            seen.add(idx)
            indices.append(idx)
        result.append(indices)
    return result


def builtin_fixture_text(name: str) -> str:
    """Text of a fixture shipped with the package (e.g. 'quick_s')."""
    return resources.files("qcpart").joinpath(f"data/{name}.json").read_text()
