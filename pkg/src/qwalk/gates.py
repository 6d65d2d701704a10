"""Gate vocabulary, the immutable :class:`Circuit` container and its cost accounting.

Qubit convention for an (n+1)-qubit walk register: position qubit ``j`` carries
bit ``2**j`` of the lattice site, the velocity qubit is index ``n`` and is the
most significant bit of the joint basis label ``|v, x_{n-1} ... x_0>``.
Velocity ``+1`` is ``|0>``, velocity ``-1`` is ``|1>``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields, replace
from typing import Any, ClassVar, Iterable

from .costs import MCX_METHODS, block_cost

SCHEMA_VERSION = 1

ON_ONE = "on_one"
ON_ZERO = "on_zero"
POLARITIES = (ON_ONE, ON_ZERO)


class CircuitError(ValueError):
    """Raised for malformed gates or circuits."""


@dataclass(frozen=True)
class Gate:
    kind: ClassVar[str] = ""

    @property
    def qubits(self) -> tuple[int, ...]:
        raise NotImplementedError

    def adjoint(self) -> Gate:
        return self

    def validate(self, num_qubits: int) -> None:
        qs = self.qubits
        if len(set(qs)) != len(qs):
            raise CircuitError(f"duplicate qubit index in {self}")
        for q in qs:
            if not isinstance(q, int) or not 0 <= q < num_qubits:
                raise CircuitError(f"qubit index {q} out of range for {num_qubits} qubits in {self}")


@dataclass(frozen=True)
class Hadamard(Gate):
    target: int
    kind: ClassVar[str] = "h"

    @property
    def qubits(self):
        return (self.target,)


@dataclass(frozen=True)
class PauliX(Gate):
    target: int
    kind: ClassVar[str] = "x"

    @property
    def qubits(self):
        return (self.target,)


def _phase_angle(k: int | None, sign: int, angle: float | None) -> float:
    if k is not None:
        return sign * 2.0 * math.pi / 2**k
    return angle


def _check_phase_fields(gate) -> None:
    if (gate.k is None) == (gate.angle is None):
        raise CircuitError("phase gate needs exactly one of k (dyadic level) or angle (radians)")
    if gate.k is not None and gate.k < 0:
        raise CircuitError(f"phase level k must be >= 0, got {gate.k}")
    if gate.sign not in (1, -1):
        raise CircuitError(f"phase sign must be +1 or -1, got {gate.sign}")


@dataclass(frozen=True)
class Phase(Gate):
    """diag(1, e^{i lam}) with lam = sign * 2pi / 2**k, or lam = angle when k is None."""

    target: int
    k: int | None = None
    sign: int = 1
    angle: float | None = None
    kind: ClassVar[str] = "phase"

    def __post_init__(self):
        _check_phase_fields(self)

    @property
    def qubits(self):
        return (self.target,)

    @property
    def lam(self) -> float:
        return _phase_angle(self.k, self.sign, self.angle)

    def adjoint(self):
        if self.k is not None:
            return replace(self, sign=-self.sign)
        return replace(self, angle=-self.angle)


@dataclass(frozen=True)
class Rotation(Gate):
    """Z rotation exp(-i theta Z / 2)."""

    target: int
    theta: float
    kind: ClassVar[str] = "rotation"

    @property
    def qubits(self):
        return (self.target,)

    def adjoint(self):
        return replace(self, theta=-self.theta)


@dataclass(frozen=True)
class ScatterS(Gate):
    """Walk scattering e^{i alpha} [[i sin t, cos t], [cos t, i sin t]]."""

    target: int
    alpha: float
    theta: float
    kind: ClassVar[str] = "scatter"

    @property
    def qubits(self):
        return (self.target,)

    def adjoint(self):
        # S(a, t)^dagger == S(-a, -t)
        return replace(self, alpha=-self.alpha, theta=-self.theta)


@dataclass(frozen=True)
class ControlledPhase(Gate):
    control: int
    target: int
    k: int | None = None
    sign: int = 1
    angle: float | None = None
    kind: ClassVar[str] = "cphase"

    def __post_init__(self):
        _check_phase_fields(self)

    @property
    def qubits(self):
        return (self.control, self.target)

    @property
    def lam(self) -> float:
        return _phase_angle(self.k, self.sign, self.angle)

    def adjoint(self):
        if self.k is not None:
            return replace(self, sign=-self.sign)
        return replace(self, angle=-self.angle)


@dataclass(frozen=True)
class CNOT(Gate):
    control: int
    target: int
    kind: ClassVar[str] = "cnot"

    @property
    def qubits(self):
        return (self.control, self.target)


@dataclass(frozen=True)
class ControlledRotation(Gate):
    """Z rotation on ``target`` applied when ``control`` is |1> (on_one) or |0> (on_zero)."""

    control: int
    target: int
    theta: float
    polarity: str = ON_ONE
    kind: ClassVar[str] = "crotation"

    def __post_init__(self):
        if self.polarity not in POLARITIES:
            raise CircuitError(f"polarity must be one of {POLARITIES}, got {self.polarity!r}")

    @property
    def qubits(self):
        return (self.control, self.target)

    def adjoint(self):
        return replace(self, theta=-self.theta)


@dataclass(frozen=True)
class MultiControlledX(Gate):
    """Generalized CNOT, kept as one opaque block with closed-form cost."""

    controls: tuple[int, ...]
    target: int
    method: str = "no_ancilla"
    kind: ClassVar[str] = "mcx"

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(self.controls))
        if self.method not in MCX_METHODS:
            raise CircuitError(f"method must be one of {MCX_METHODS}, got {self.method!r}")

    @property
    def qubits(self):
        return (*self.controls, self.target)


GATE_TYPES: dict[str, type[Gate]] = {
    cls.kind: cls
    for cls in (Hadamard, PauliX, Phase, Rotation, ScatterS, ControlledPhase,
                CNOT,ControlledRotation, MultiControlledX)
}


def gate_cost(gate: Gate) -> tuple[int, int]:
    """(size, depth) contribution of a single gate."""
    if isinstance(gate, MultiControlledX):
        c = block_cost(len(gate.qubits), gate.method)
        return c.size, c.depth
    return 1, 1


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = field(default=())

    def __post_init__(self):
        if not isinstance(self.num_qubits, int) or self.num_qubits < 1:
            raise CircuitError(f"num_qubits must be >= 1, got {self.num_qubits}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            g.validate(self.num_qubits)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    @property
    def size(self) -> int:
        return size(self)

    @property
    def depth(self) -> int:
        return depth(self)


def new_circuit(num_qubits: int) -> Circuit:
    return Circuit(num_qubits)


def append(circuit: Circuit, gate: Gate) -> Circuit:
    gate.validate(circuit.num_qubits)
    return Circuit(circuit.num_qubits, circuit.gates + (gate,))


def extend(circuit: Circuit, gates: Iterable[Gate]) -> Circuit:
    return Circuit(circuit.num_qubits, circuit.gates + tuple(gates))


def compose(*circuits: Circuit) -> Circuit:
    """Concatenate circuits; the first one runs first."""
    if not circuits:
        raise CircuitError("compose needs at least one circuit")
    width = circuits[0].num_qubits
    for c in circuits[1:]:
        if c.num_qubits != width:
            raise CircuitError(f"register width mismatch: {width} vs {c.num_qubits}")
    return Circuit(width, tuple(g for c in circuits for g in c.gates))


def inverse(circuit: Circuit) -> Circuit:
    return Circuit(circuit.num_qubits, tuple(g.adjoint() for g in reversed(circuit.gates)))


def widen(circuit: Circuit, num_qubits: int) -> Circuit:
    """Same gates on a larger register; qubit indices are kept."""
    if num_qubits < circuit.num_qubits:
        raise CircuitError("cannot narrow a circuit")
    return Circuit(num_qubits, circuit.gates)


def size(circuit: Circuit) -> int:
    return sum(gate_cost(g)[0] for g in circuit.gates)


def depth(circuit: Circuit) -> int:
    # ASAP layering; a costed block advances all of its qubits by its depth
    level = [0] * circuit.num_qubits
    for g in circuit.gates:
        d = gate_cost(g)[1]
        qs = g.qubits
        top = max(level[q] for q in qs) + d
        for q in qs:
            level[q] = top
    return max(level, default=0)


def gate_to_dict(gate: Gate) -> dict[str, Any]:
    out: dict[str, Any] = {"kind": gate.kind}
    for f in fields(gate):
        v = getattr(gate, f.name)
        out[f.name] = list(v) if isinstance(v, tuple) else v
    return out


def gate_from_dict(data: dict[str, Any]) -> Gate:
    data = dict(data)
    try:
        cls = GATE_TYPES[data.pop("kind")]
    except KeyError as exc:
        raise CircuitError(f"unknown or missing gate kind in {data}") from exc
    names = {f.name for f in fields(cls)}
    extra = set(data) - names
    if extra:
        raise CircuitError(f"unexpected fields {sorted(extra)} for gate kind {cls.kind!r}")
    if "controls" in data:
        data["controls"] = tuple(data["controls"])
    return cls(**data)


def circuit_to_dict(circuit: Circuit) -> dict[str, Any]:
    return {
        "version": SCHEMA_VERSION,
        "num_qubits": circuit.num_qubits,
        "gates": [gate_to_dict(g) for g in circuit.gates],
    }


def circuit_from_dict(data: dict[str, Any]) -> Circuit:
    if data.get("version") != SCHEMA_VERSION:
        raise CircuitError(f"unsupported circuit schema version {data.get('version')!r}")
    return Circuit(data["num_qubits"], tuple(gate_from_dict(g) for g in data["gates"]))


def to_json(circuit: Circuit, **kwargs) -> str:
    return json.dumps(circuit_to_dict(circuit), **kwargs)


def from_json(text: str) -> Circuit:
    return circuit_from_dict(json.loads(text))
