"""Shared fixtures: the 6-qubit benchmark circuit and its reference data."""

from __future__ import annotations

import pytest

import qcpart as q

# Reference 2-way label vector for the benchmark circuit (one label per gate).
REFERENCE_LABELS = (0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1)

# Reference block-baseline grouping as gate indices per partition.
BASELINE_GROUPS = [
    [0, 2, 3, 4, 5, 6, 8, 9, 10, 11, 13],
    [7],
    [12, 15, 17, 19, 20],
    [1, 14],
    [16],
    [18, 21],
]

# Byte-exact raw-mode hypergraph file for the benchmark circuit.
GOLDEN_HGR = """16 22 1
4000 3
4000 5
4000 6
4000 8
4000 11
4000 13
4000 15
4000 17
4000 19
4000 22
400000 1 3 4 6 9 11 13 15 17
200000 5 7 11 19
200000 6 10 12 14
100000 2 15
300000 8 13 16 18 20 21 22
300000 3 5 8 17 19 22
1000
1000
200
1000
200
200
1000
200
1000
1000
200
1000
200
1000
200
1000
200
1000
200
1000
1000
200
"""


@pytest.fixture
def circuit_s() -> q.Circuit:
    return q.benchmark_circuit("s")


@pytest.fixture
def hypergraph_s(circuit_s) -> q.Hypergraph:
    return q.circuit_to_hypergraph(circuit_s)


@pytest.fixture
def reference_assignment() -> q.PartitionAssignment:
    return q.PartitionAssignment(REFERENCE_LABELS, 2)


@pytest.fixture
def reference_partitions(circuit_s, reference_assignment) -> list[q.Partition]:
    return q.create_trimmed_partitions(circuit_s, reference_assignment)


@pytest.fixture
def baseline_partitions(circuit_s) -> list[q.Partition]:
    return q.remap_groups(circuit_s, BASELINE_GROUPS)
