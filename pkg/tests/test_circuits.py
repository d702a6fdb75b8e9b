import pytest

import qcpart as q
from qcpart.circuits import CircuitParseError


class TestGates:
    def test_builtin_arities(self):
        assert q.H.arity == 1
        assert q.CNOT.arity == 2
        assert q.SWAP.arity == 2
        assert q.CCX.arity == 3

    def test_gate_arity_mismatch_rejected(self):
        with pytest.raises(q.CircuitError):
            q.Gate(q.CNOT, (1,))

    def test_duplicate_qubits_rejected(self):
        with pytest.raises(q.CircuitError):
            q.cnot(2, 2)

    def test_other_kind_respects_builtin_arity(self):
        with pytest.raises(q.CircuitError):
            q.other_kind("CNOT", 3)
        assert q.other_kind("CNOT", 2) is q.CNOT
        rz = q.other_kind("RZ", 1)
        assert rz.arity == 1


class TestCircuit:
    def test_out_of_range_qubit_rejected(self):
        with pytest.raises(q.CircuitError):
            q.Circuit(2, (q.h(2),))

    def test_len(self, circuit_s):
        assert len(circuit_s) == 22

    def test_benchmark_sizes(self):
        s = q.benchmark_circuit("s")
        m = q.benchmark_circuit("m")
        l = q.benchmark_circuit("l")
        assert (s.num_qubits, len(s.gates)) == (6, 22)
        assert (m.num_qubits, len(m.gates)) == (10, 55)
        assert (l.num_qubits, len(l.gates)) == (24, 88)

    def test_unknown_benchmark(self):
        with pytest.raises(q.CircuitError):
            q.benchmark_circuit("xl")


class TestDepth:
    def test_empty_circuit(self):
        assert q.depth(q.Circuit(3)) == 0

    def test_parallel_gates_share_layer(self):
        c = q.Circuit(2, (q.h(0), q.h(1)))
        assert q.depth(c) == 1

    def test_chain(self):
        c = q.Circuit(3, (q.cnot(0, 1), q.cnot(1, 2), q.cnot(0, 2)))
        assert q.depth(c) == 3

    def test_benchmark_depth(self, circuit_s):
        assert q.depth(circuit_s) == 12


class TestSerialization:
    def test_round_trip(self, circuit_s):
        assert q.parse_circuit(q.serialize_circuit(circuit_s)) == circuit_s

    def test_comments_and_blanks(self):
        text = "# header\n\nqubits 2  # two wires\nh 0\ncx 0 1\n"
        c = q.parse_circuit(text)
        assert c == q.Circuit(2, (q.h(0), q.cnot(0, 1)))

    def test_custom_gate(self):
        c = q.parse_circuit("qubits 3\ng RZZ 2 0 2\n")
        assert c.gates[0].kind.name == "RZZ"
        assert c.gates[0].qubits == (0, 2)
        assert q.parse_circuit(q.serialize_circuit(c)) == c

    def test_missing_header(self):
        with pytest.raises(CircuitParseError):
            q.parse_circuit("h 0\n")

    def test_unknown_mnemonic(self):
        with pytest.raises(CircuitParseError, match="line 2"):
            q.parse_circuit("qubits 2\nfoo 0\n")

    def test_qubit_out_of_range(self):
        with pytest.raises(CircuitParseError):
            q.parse_circuit("qubits 2\ncx 0 5\n")


class TestErrorModel:
    def test_defaults(self):
        m = q.ErrorModel()
        assert m.eps_h == 0.001
        assert m.eps_cnot == 0.05
        assert m.ccx_cnot_equivalents == 6

    def test_rates_validated(self):
        with pytest.raises(q.CircuitError):
            q.ErrorModel(eps_cnot=0.0)
        with pytest.raises(q.CircuitError):
            q.ErrorModel(eps_h=1.5)
