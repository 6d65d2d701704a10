import math

import numpy as np
import pytest
from hypothesis import strategies as st

from qwalk.gates import (
    CNOT, ON_ONE, ON_ZERO, Circuit, ControlledPhase, ControlledRotation, Hadamard,
    MultiControlledX, PauliX, Phase, Rotation, ScatterS,
)

angles = st.floats(min_value=-2 * math.pi, max_value=2 * math.pi, allow_nan=False)


@st.composite
def gates_on(draw, nq: int):
    """Any gate of the vocabulary that fits an nq-qubit register."""
    q = st.integers(0, nq - 1)
    kinds = ["h", "x", "phase", "phase_rad", "rot", "scatter"]
    if nq >= 2:
        kinds += ["cnot", "cphase", "crot"]
    if nq >= 3:
        kinds += ["mcx"]
    kind = draw(st.sampled_from(kinds))
    if kind in ("h", "x", "phase", "phase_rad", "rot", "scatter"):
        t = draw(q)
        return {
            "h": lambda: Hadamard(t),
            "x": lambda: PauliX(t),
            "phase": lambda: Phase(t, k=draw(st.integers(0, 6)), sign=draw(st.sampled_from([1, -1]))),
            "phase_rad": lambda: Phase(t, angle=draw(angles)),
            "rot": lambda: Rotation(t, draw(angles)),
            "scatter": lambda: ScatterS(t, draw(angles), draw(angles)),
        }[kind]()
    if kind == "mcx":
        qs = draw(st.permutations(range(nq)))
        m = draw(st.integers(2, nq))
        return MultiControlledX(tuple(qs[: m - 1]), qs[m - 1],
                                draw(st.sampled_from(["no_ancilla", "ancilla"])))
    c, t = draw(st.permutations(range(nq)))[:2]
    if kind == "cnot":
        return CNOT(c, t)
    if kind == "cphase":
        if draw(st.booleans()):
            return ControlledPhase(c, t, k=draw(st.integers(0, 6)), sign=draw(st.sampled_from([1, -1])))
        return ControlledPhase(c, t, angle=draw(angles))
    return ControlledRotation(c, t, draw(angles), draw(st.sampled_from([ON_ONE, ON_ZERO])))


@st.composite
def circuits(draw, min_qubits: int = 1, max_qubits: int = 5, max_gates: int = 25):
    nq = draw(st.integers(min_qubits, max_qubits))
    gates = draw(st.lists(gates_on(nq), max_size=max_gates))
    return Circuit(nq, gates)


def random_state(rng: np.random.Generator, nq: int) -> np.ndarray:
    v = rng.normal(size=2**nq) + 1j * rng.normal(size=2**nq)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
