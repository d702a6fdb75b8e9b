"""Circuit IR: gate catalog, depth, text serialization, benchmark circuits.

A circuit is an ordered gate list over a fixed qubit count. Gate order is
significant everywhere in the pipeline; all types are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass


class CircuitError(ValueError):
    """Invalid circuit construction or serialization input."""


class CircuitParseError(CircuitError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class GateKind:
    """A gate type with a fixed arity (H=1, CNOT/SWAP=2, CCX=3)."""

    name: str
    arity: int

    def __post_init__(self):
        if self.arity < 1:
            raise CircuitError(f"gate arity must be >= 1, got {self.arity}")


H = GateKind("H", 1)
CNOT = GateKind("CNOT", 2)
SWAP = GateKind("SWAP", 2)
CCX = GateKind("CCX", 3)

_BUILTIN_KINDS = {k.name: k for k in (H, CNOT, SWAP, CCX)}


def other_kind(name: str, arity: int) -> GateKind:
    """Kind for a gate outside the built-in catalog."""
    if name in _BUILTIN_KINDS:
        builtin = _BUILTIN_KINDS[name]
        if builtin.arity != arity:
            raise CircuitError(f"{name} has fixed arity {builtin.arity}")
        return builtin
    return GateKind(name, arity)


@dataclass(frozen=True)
class Gate:
    """A gate applied to an ordered tuple of global qubit indices.

    For CNOT the tuple is (control, target).
    """

    kind: GateKind
    qubits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(self.qubits))
        if len(self.qubits) != self.kind.arity:
            raise CircuitError(
                f"{self.kind.name} expects {self.kind.arity} qubits, got {self.qubits}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"duplicate qubit in gate {self.kind.name}{self.qubits}")


def h(q: int) -> Gate:
    return Gate(H, (q,))


def cnot(control: int, target: int) -> Gate:
    return Gate(CNOT, (control, target))


def swap(a: int, b: int) -> Gate:
    return Gate(SWAP, (a, b))


def ccx(a: int, b: int, target: int) -> Gate:
    return Gate(CCX, (a, b, target))


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.num_qubits:
                    raise CircuitError(
                        f"qubit {q} out of range for {self.num_qubits}-qubit circuit"
                    )

    def __len__(self) -> int:
        return len(self.gates)


@dataclass(frozen=True)
class ErrorModel:
    """Gate error rates used for hypergraph weighting and fidelity estimation."""

    eps_h: float = 0.001
    eps_cnot: float = 0.05
    eps_default_single: float = 0.001
    eps_default_multi: float = 0.05
    ccx_cnot_equivalents: int = 6

    def __post_init__(self):
        for name in ("eps_h", "eps_cnot", "eps_default_single", "eps_default_multi"):
            rate = getattr(self, name)
            if not 0.0 < rate < 1.0:
                raise CircuitError(f"{name} must be in (0, 1), got {rate}")


def depth(circuit: Circuit) -> int:
    """Length of the longest chain under as-soon-as-possible layering.

    A gate is scheduled one layer after the most recent prior gate sharing
    any of its qubits. Empty circuit has depth 0.
    """
    last_layer = [0] * circuit.num_qubits
    result = 0
    for g in circuit.gates:
        layer = 1 + max(last_layer[q] for q in g.qubits)
        for q in g.qubits:
            last_layer[q] = layer
        result = max(result, layer)
    return result


_MNEMONICS = {"h": H, "cx": CNOT, "swap": SWAP, "ccx": CCX}
_KIND_TO_MNEMONIC = {H: "h", CNOT: "cx", SWAP: "swap", CCX: "ccx"}


def parse_circuit(text: str) -> Circuit:
    """Parse the circuit text format.

    First non-comment line is ``qubits N``; then one gate per line
    (``h q``, ``cx c t``, ``swap a b``, ``ccx a b c`` or
    ``g <name> <arity> q...``). ``#`` starts a comment, blank lines ignored.
    """
    num_qubits = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if num_qubits is None:
            if tokens[0] != "qubits" or len(tokens) != 2:
                raise CircuitParseError("expected 'qubits N' header", lineno)
            try:
                num_qubits = int(tokens[1])
            except ValueError:
                raise CircuitParseError(f"bad qubit count {tokens[1]!r}", lineno)
            if num_qubits < 0:
                raise CircuitParseError("qubit count must be >= 0", lineno)
            continue
        try:
            if tokens[0] == "g":
                if len(tokens) < 3:
                    raise CircuitParseError("expected 'g <name> <arity> q...'", lineno)
                kind = other_kind(tokens[1], int(tokens[2]))
                qubits = tuple(int(t) for t in tokens[3:])
            elif tokens[0] in _MNEMONICS:
                kind = _MNEMONICS[tokens[0]]
                qubits = tuple(int(t) for t in tokens[1:])
            else:
                raise CircuitParseError(f"unknown gate {tokens[0]!r}", lineno)
        except CircuitParseError:
            raise
        except ValueError:
            raise CircuitParseError(f"bad integer in {line!r}", lineno)
        if len(qubits) != kind.arity:
            raise CircuitParseError(
                f"{kind.name} expects {kind.arity} qubits, got {len(qubits)}", lineno
            )
        for q in qubits:
            if not 0 <= q < num_qubits:
                raise CircuitParseError(f"qubit {q} out of range", lineno)
        try:
            gates.append(Gate(kind, qubits))
        except CircuitError as exc:
            raise CircuitParseError(str(exc), lineno)
    if num_qubits is None:
        raise CircuitParseError("missing 'qubits N' header", 1)
    return Circuit(num_qubits, tuple(gates))


def serialize_circuit(circuit: Circuit) -> str:
    """Inverse of parse_circuit: parse(serialize(c)) == c."""
    lines = [f"qubits {circuit.num_qubits}"]
    for g in circuit.gates:
        qubits = " ".join(str(q) for q in g.qubits)
        mnemonic = _KIND_TO_MNEMONIC.get(g.kind)
        if mnemonic is not None:
            lines.append(f"{mnemonic} {qubits}")
        else:
            lines.append(f"g {g.kind.name} {g.kind.arity} {qubits}")
    return "\n".join(lines) + "\n"


# Benchmark "S": 6 qubits, 22 gates, embedded verbatim as a fixture since its
# original generator used a host-language PRNG that is not reproducible here.
_CIRCUIT_S_GATES = (
    h(0),
    h(3),
    cnot(5, 0),
    h(0),
    cnot(1, 5),
    cnot(0, 2),
    h(1),
    cnot(5, 4),
    h(0),
    h(2),
    cnot(1, 0),
    h(2),
    cnot(0, 4),
    h(2),
    cnot(3, 0),
    h(4),
    cnot(0, 5),
    h(4),
    cnot(1, 5),
    h(4),
    h(4),
    cnot(4, 5),
)


def _circuit_m() -> Circuit:
    # 10 qubits / 55 gates: H layer, linear CNOT chain, second H layer,
    # then stride-2..5 CNOT fans (8 + 7 + 6 + 5 gates).
    gates: list[Gate] = [h(q) for q in range(10)]
    gates += [cnot(q, q + 1) for q in range(9)]
    gates += [h(q) for q in range(10)]
    for stride in (2, 3, 4, 5):
        gates += [cnot(q, q + stride) for q in range(10 - stride)]
    return Circuit(10, tuple(gates))


def _circuit_l() -> Circuit:
    # 24 qubits / 88 gates: H layer, CNOT chain, CCX layer, stride-2 and
    # stride-3 CNOT layers (24 + 23 + 8 + 22 + 11 gates).
    gates: list[Gate] = [h(q) for q in range(24)]
    gates += [cnot(q, q + 1) for q in range(23)]
    gates += [ccx(q, q + 1, q + 2) for q in range(0, 22, 3)]
    gates += [cnot(q, q + 2) for q in range(22)]
    gates += [cnot(q, q + 3) for q in range(11)]
    return Circuit(24, tuple(gates))


def benchmark_circuit(which: str) -> Circuit:
    """Built-in benchmark circuits: 's' (6q/22g), 'm' (10q/55g), 'l' (24q/88g)."""
    key = which.lower()
    if key == "s":
        return Circuit(6, _CIRCUIT_S_GATES)
    if key == "m":
        return _circuit_m()
    if key == "l":
        return _circuit_l()
    raise CircuitError(f"unknown benchmark {which!r} (expected 's', 'm' or 'l')")
