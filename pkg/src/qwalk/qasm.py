"""OpenQASM 2.0 emission (emit only, no parsing)."""
from __future__ import annotations

import math

from .gates import (
    CNOT, ON_ZERO, Circuit, CircuitError, ControlledPhase, ControlledRotation, Gate,
    Hadamard, MultiControlledX, PauliX, Phase, Rotation, ScatterS,
)


class UnsupportedGateError(CircuitError):
    """Gate has no OpenQASM 2.0 qelib1 rendering."""


def _fmt_dyadic(k: int, sign: int) -> str:
    # sign * 2pi / 2^k == sign * pi / 2^(k-1)
    if k == 0:
        body = "2*pi"
    elif k == 1:
        body = "pi"
    else:
        body = f"pi/{2 ** (k - 1)}"
    return body if sign > 0 else f"-{body}"


def _fmt_angle(gate) -> str:
    if getattr(gate, "k", None) is not None:
        return _fmt_dyadic(gate.k, gate.sign)
    return repr(float(gate.lam))


def _q(i: int) -> str:
    return f"q[{i}]"


def gate_lines(gate: Gate) -> list[str]:
    if isinstance(gate, Hadamard):
        return [f"h {_q(gate.target)};"]
    if isinstance(gate, PauliX):
        return [f"x {_q(gate.target)};"]
    if isinstance(gate, CNOT):
        return [f"cx {_q(gate.control)},{_q(gate.target)};"]
    if isinstance(gate, Phase):
        return [f"u1({_fmt_angle(gate)}) {_q(gate.target)};"]
    if isinstance(gate, ControlledPhase):
        return [f"cu1({_fmt_angle(gate)}) {_q(gate.control)},{_q(gate.target)};"]
    if isinstance(gate, Rotation):
        # u1 equals the Z rotation up to a global phase
        return [f"u1({gate.theta!r}) {_q(gate.target)};"]
    if isinstance(gate, ControlledRotation):
        # controlled exp(-i t Z/2) == u1(-t/2) on control, then cu1(t)
        c, t = _q(gate.control), _q(gate.target)
        body = [f"u1({-gate.theta / 2!r}) {c};", f"cu1({gate.theta!r}) {c},{t};"]
        if gate.polarity == ON_ZERO:
            return [f"x {c};", *body, f"x {c};"]
        return body
    if isinstance(gate, ScatterS):
        # S(a, t) == i e^{ia} Rx(pi - 2t)
        return [f"rx({math.pi - 2 * gate.theta!r}) {_q(gate.target)};"]
    if isinstance(gate, MultiControlledX):
        nc = len(gate.controls)
        if nc == 0:
            return [f"x {_q(gate.target)};"]
        if nc == 1:
            return [f"cx {_q(gate.controls[0])},{_q(gate.target)};"]
        if nc == 2:
            a, b = gate.controls
            return [f"ccx {_q(a)},{_q(b)},{_q(gate.target)};"]
        raise UnsupportedGateError(
            f"generalized CNOT with {nc} controls has no qelib1 form; "
            "only blocks with at most 2 controls (ccx) can be emitted"
        )
    raise UnsupportedGateError(f"no OpenQASM 2.0 rendering for {gate!r}")


def to_qasm(circuit: Circuit, measure: bool = True) -> str:
    """Render ``circuit`` as an OpenQASM 2.0 program; qubit ``i`` maps to ``q[i]``."""
    nq = circuit.num_qubits
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{nq}];", f"creg c[{nq}];"]
    for g in circuit.gates:
        lines.extend(gate_lines(g))
    if measure:
        lines.extend(f"measure q[{i}] -> c[{i}];" for i in range(nq))
    return "\n".join(lines) + "\n"
