"""Dense statevector simulation, exact distributions and seeded shot sampling.

Basis index is ``sum(bit_i * 2**i)``; bitstrings are rendered most significant
qubit first, so for a walk register the leftmost character is the velocity.
"""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .gates import (
    CNOT, ON_ONE, Circuit, ControlledPhase, ControlledRotation, Gate, Hadamard,
    MultiControlledX, PauliX, Phase, Rotation, ScatterS,
)

MAX_UNITARY_QUBITS = 12
NORM_TOL = 1e-8
PROB_CUTOFF = 1e-12

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


class SimulationError(ValueError):
    pass


def phase_matrix(lam: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * lam)]).astype(complex)


def rz_matrix(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def scatter_matrix(alpha: float, theta: float) -> np.ndarray:
    d = 1j * np.sin(theta)
    o = np.cos(theta)
    return np.exp(1j * alpha) * np.array([[d, o], [o, d]], dtype=complex)


def _decompose(gate: Gate) -> tuple[np.ndarray, int, dict[int, int]]:
    """2x2 matrix, target qubit, and {control: required value}."""
    if isinstance(gate, Hadamard):
        return _H, gate.target, {}
    if isinstance(gate, PauliX):
        return _X, gate.target, {}
    if isinstance(gate, Phase):
        return phase_matrix(gate.lam), gate.target, {}
    if isinstance(gate, Rotation):
        return rz_matrix(gate.theta), gate.target, {}
    if isinstance(gate, ScatterS):
        return scatter_matrix(gate.alpha, gate.theta), gate.target, {}
    if isinstance(gate, CNOT):
        return _X, gate.target, {gate.control: 1}
    if isinstance(gate, ControlledPhase):
        return phase_matrix(gate.lam), gate.target, {gate.control: 1}
    if isinstance(gate, ControlledRotation):
        return rz_matrix(gate.theta), gate.target, {gate.control: int(gate.polarity == ON_ONE)}
    if isinstance(gate, MultiControlledX):
        return _X, gate.target, {c: 1 for c in gate.controls}
    raise SimulationError(f"cannot simulate {gate!r}")


def _apply_tensor(t: np.ndarray, gate: Gate, nq: int) -> None:
    """Apply ``gate`` in place to ``t`` of shape (2,)*nq + (batch,).

    Axis ``a`` of the tensor holds qubit ``nq - 1 - a``.
    """
    u, target, controls = _decompose(gate)
    idx: list = [slice(None)] * (nq + 1)
    for c, val in controls.items():
        idx[nq - 1 - c] = val
    sub = t[tuple(idx)]
    taxis = nq - 1 - target
    # integer indices drop axes; shift the target axis left by the dropped ones before it
    taxis -= sum(1 for c in controls if nq - 1 - c < taxis)
    view = np.moveaxis(sub, taxis, 0)
    view[...] = np.tensordot(u, view, axes=(1, 0))


def basis_state(num_qubits: int, bitstring: str) -> np.ndarray:
    if len(bitstring) != num_qubits or set(bitstring) - {"0", "1"}:
        raise SimulationError(f"bitstring {bitstring!r} is not {num_qubits} characters of 0/1")
    psi = np.zeros(2**num_qubits, dtype=complex)
    psi[int(bitstring, 2)] = 1.0
    return psi


def _as_tensor(state: np.ndarray, nq: int) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    if state.shape[0] != 2**nq:
        raise SimulationError(f"state of length {state.shape[0]} does not fit {nq} qubits")
    return state.reshape((2,) * nq + (-1,)).copy()


def apply_gate(state: np.ndarray, gate: Gate) -> np.ndarray:
    nq = int(round(math.log2(len(state))))
    gate.validate(nq)
    t = _as_tensor(state, nq)
    _apply_tensor(t, gate, nq)
    return t.reshape(-1)


def run(circuit: Circuit, initial: np.ndarray) -> np.ndarray:
    nq = circuit.num_qubits
    t = _as_tensor(initial, nq)
    for g in circuit.gates:
        _apply_tensor(t, g, nq)
    return t.reshape(-1)


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    nq = circuit.num_qubits
    if nq > MAX_UNITARY_QUBITS:
        raise SimulationError(f"register of {nq} qubits too wide for a dense unitary")
    dim = 2**nq
    t = np.eye(dim, dtype=complex).reshape((2,) * nq + (dim,))
    for g in circuit.gates:
        _apply_tensor(t, g, nq)
    return t.reshape(dim, dim)


def bitstring(index: int, num_qubits: int) -> str:
    return format(index, f"0{num_qubits}b")


def distribution(state: np.ndarray) -> dict[str, float]:
    state = np.asarray(state)
    probs = np.abs(state) ** 2
    total = probs.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise SimulationError(f"state is not normalized (sum of probabilities {total})")
    nq = int(round(math.log2(len(state))))
    return {bitstring(i, nq): float(p) for i, p in enumerate(probs) if p > PROB_CUTOFF}


def sample(dist: dict[str, float], shots: int, seed: int) -> dict[str, int]:
    if not dist:
        raise SimulationError("cannot sample an empty distribution")
    if shots < 1:
        raise SimulationError(f"shots must be >= 1, got {shots}")
    keys = sorted(dist)
    p = np.array([dist[k] for k in keys], dtype=float)
    p /= p.sum()
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(shots, p)
    return {k: int(c) for k, c in zip(keys, draws) if c > 0}


def empirical(counts: dict[str, int]) -> dict[str, float]:
    shots = sum(counts.values())
    return {k: c / shots for k, c in counts.items()}


def _to_csv(header: tuple[str, str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def distribution_to_csv(dist: dict[str, float]) -> str:
    return _to_csv(("bitstring", "probability"), ((k, repr(dist[k])) for k in sorted(dist)))


def counts_to_csv(counts: dict[str, int]) -> str:
    return _to_csv(("bitstring", "count"), ((k, counts[k]) for k in sorted(counts)))


def distribution_to_json(dist: dict[str, float]) -> str:
    return json.dumps({k: dist[k] for k in sorted(dist)}, indent=2)


def counts_to_json(counts: dict[str, int]) -> str:
    return json.dumps({k: counts[k] for k in sorted(counts)}, indent=2)
