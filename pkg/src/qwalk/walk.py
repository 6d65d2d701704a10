"""Walk circuit constructors: scattering, direction control, the two shift
implementations and the full step.

One step is scattering on the velocity qubit followed by propagation. The
propagation uses a single increment sandwiched between velocity-controlled bit
flips of every position qubit, so the same increment serves both directions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import costs
from .gates import (
    CNOT, Circuit, ControlledPhase, Gate, Hadamard, MultiControlledX, PauliX, Phase,
    ScatterS, compose, depth, inverse, size, widen,
)

SHIFT_IMPLS = ("qft", "mcx")

# (alpha, theta) giving S = [[1, i], [i, 1]] / sqrt(2)
HADAMARD_LIKE = (math.pi / 2, -math.pi / 4)


@dataclass(frozen=True)
class WalkSpec:
    n: int
    steps: int = 1
    alpha: float = HADAMARD_LIKE[0]
    theta: float = HADAMARD_LIKE[1]
    shift_impl: str = "qft"
    initial: str | None = None
    mcx_method: str = "no_ancilla"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.steps < 0:
            raise ValueError(f"steps must be >= 0, got {self.steps}")
        if self.shift_impl not in SHIFT_IMPLS:
            raise ValueError(f"shift_impl must be one of {SHIFT_IMPLS}, got {self.shift_impl!r}")
        if self.mcx_method not in costs.MCX_METHODS:
            raise ValueError(f"mcx_method must be one of {costs.MCX_METHODS}")
        if self.initial is None:
            object.__setattr__(self, "initial", "0" * (self.n + 1))
        if len(self.initial) != self.n + 1 or set(self.initial) - {"0", "1"}:
            raise ValueError(f"initial must be {self.n + 1} characters of 0/1, got {self.initial!r}")

    @property
    def num_qubits(self) -> int:
        return self.n + 1

    @property
    def sites(self) -> int:
        return 2**self.n


def scattering_circuit(n: int, alpha: float, theta: float) -> Circuit:
    return Circuit(n + 1, (ScatterS(n, alpha, theta),))


def cvj_circuit(n: int, order: list[int] | None = None) -> Circuit:
    """Velocity-controlled flip of every position qubit (ascending target by default)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    targets = range(n) if order is None else order
    if sorted(targets) != list(range(n)):
        raise ValueError(f"order must be a permutation of 0..{n - 1}")
    return Circuit(n + 1, tuple(CNOT(n, j) for j in targets))


def _swap(a: int, b: int) -> list[Gate]:
    return [CNOT(a, b), CNOT(b, a), CNOT(a, b)]


def qft_circuit(n: int, include_swaps: bool = False) -> Circuit:
    """Hadamard plus controlled-phase ladder on ``n`` qubits.

    Without swaps the output register is bit-reversed; the swap-free form is
    what the shift uses.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    gates: list[Gate] = []
    for i in reversed(range(n)):
        gates.append(Hadamard(i))
        for j in reversed(range(i)):
            gates.append(ControlledPhase(j, i, k=i - j + 1))
    if include_swaps:
        for i in range(n // 2):
            gates.extend(_swap(i, n - 1 - i))
    return Circuit(n, gates)


def omega_circuit(n: int, conjugate: bool = False, swap_absorbed: bool = False) -> Circuit:
    """The shift's eigenphases diag(w^x), w = e^{2 pi i / 2^n}, as n phase gates.

    Qubit j gets R_{n-j}; with ``swap_absorbed`` it gets R_{j+1} instead, which
    undoes the bit reversal of a swap-free QFT.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    sign = -1 if conjugate else 1
    return Circuit(n, tuple(
        Phase(j, k=(j + 1) if swap_absorbed else (n - j), sign=sign) for j in range(n)
    ))


def shift_qft(n: int) -> Circuit:
    f = qft_circuit(n, include_swaps=False)
    return compose(f, omega_circuit(n, swap_absorbed=True), inverse(f))


def shift_qft_with_swaps(n: int) -> Circuit:
    """Reference variant: full QFT including swaps and the plain phase assignment."""
    f = qft_circuit(n, include_swaps=True)
    return compose(f, omega_circuit(n), inverse(f))


def shift_mcx(n: int, method: str = "no_ancilla") -> Circuit:
    """Ripple increment: flip bit k when all lower bits are set, highest bit first."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    gates: list[Gate] = []
    for k in reversed(range(n)):
        if k == 0:
            gates.append(PauliX(0))
        elif k == 1:
            gates.append(CNOT(0, 1))
        else:
            gates.append(MultiControlledX(tuple(range(k)), k, method))
    return Circuit(n, gates)


def shift_circuit(n: int, shift_impl: str = "qft", mcx_method: str = "no_ancilla") -> Circuit:
    if shift_impl == "qft":
        return shift_qft(n)
    if shift_impl == "mcx":
        return shift_mcx(n, mcx_method)
    raise ValueError(f"shift_impl must be one of {SHIFT_IMPLS}, got {shift_impl!r}")


def mcx_cost(n_total: int, method: str = "no_ancilla") -> costs.BlockCost:
    return costs.mcx_cost(n_total, method)


def shift_cost_summary(n: int) -> dict:
    """Sizes and depths of the three increment implementations on n qubits.

    The QFT depth is measured on the constructed circuit; the generalized CNOT
    figures are the closed forms. ``mcx_ancilla`` is None below n = 4.
    """
    if n < 3:
        raise ValueError(f"cost summary needs n >= 3, got {n}")
    q = shift_qft(n)
    return {
        "qft": (size(q), depth(q)),
        "mcx_no_ancilla": costs.mcx_shift_no_ancilla(n),
        "mcx_ancilla": costs.mcx_shift_ancilla(n) if n >= 4 else None,
    }


def propagation_sigma(n: int, shift_impl: str = "qft", mcx_method: str = "no_ancilla") -> Circuit:
    cv = cvj_circuit(n)
    shift = widen(shift_circuit(n, shift_impl, mcx_method), n + 1)
    return compose(cv, shift, cv)


def walk_circuit(spec: WalkSpec) -> Circuit:
    step = compose(
        scattering_circuit(spec.n, spec.alpha, spec.theta),
        propagation_sigma(spec.n, spec.shift_impl, spec.mcx_method),
    )
    return Circuit(spec.n + 1, step.gates * spec.steps)


def preparation_circuit(bits: str) -> Circuit:
    """X gates turning |0...0> into the basis state ``bits`` (leftmost = highest qubit)."""
    nq = len(bits)
    return Circuit(nq, tuple(PauliX(nq - 1 - i) for i, b in enumerate(bits) if b == "1"))
