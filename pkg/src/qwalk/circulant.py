"""Propagation by unitary circulant (convolution) matrices.

A circulant C with first row c is F^-1 diag(e^{i theta}) F, so a velocity-controlled
pair of circulants becomes QFT, a pair of velocity-controlled diagonal unitaries,
and the inverse QFT. Diagonals are synthesized exactly from the Walsh-Hadamard
transform of their phase vector as a parity network of Z rotations and CNOTs.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

from .gates import (
    CNOT, ON_ONE, ON_ZERO, POLARITIES, Circuit, ControlledPhase, ControlledRotation,
    Gate, PauliX, Phase, Rotation, compose, inverse, widen,
)
from .walk import qft_circuit, scattering_circuit

UNITARY_TOL = 1e-8
ZERO_COEFF = 1e-12


class KernelError(ValueError):
    pass


def _num_qubits(length: int) -> int:
    n = length.bit_length() - 1
    if length < 1 or 2**n != length:
        raise KernelError(f"length {length} is not a power of two")
    return n


def spectrum_of_circulant(kernel) -> np.ndarray:
    """Eigenphases theta_k of the circulant with first row ``kernel``.

    Uses F|x> = N^{-1/2} sum_k e^{+2 pi i x k / N}|k>, under which the k-th
    eigenvalue is sum_d c_d e^{-2 pi i d k / N}, i.e. numpy's forward FFT.
    """
    c = np.asarray(kernel, dtype=complex)
    _num_qubits(len(c))
    lam = np.fft.fft(c)
    dev = np.max(np.abs(np.abs(lam) - 1.0))
    if dev > UNITARY_TOL:
        raise KernelError(f"circulant is not unitary: eigenvalue modulus off by {dev:.3g}")
    return np.angle(lam)


def kernel_from_spectrum(thetas) -> np.ndarray:
    return np.fft.ifft(np.exp(1j * np.asarray(thetas, dtype=float)))


def walsh_coefficients(thetas) -> np.ndarray:
    """a_s with theta_x = sum_s a_s (-1)^{popcount(s & x)}."""
    a = np.array(thetas, dtype=float)
    _num_qubits(len(a))
    h = 1
    while h < len(a):
        a = a.reshape(-1, 2, h)
        a = np.stack((a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]), axis=1).reshape(-1)
        h *= 2
    return a / len(a)


def _parity_network(
    coeffs: np.ndarray, n: int, rotation: Callable[[int, float], Gate], cutoff: float
) -> list[Gate]:
    gates: list[Gate] = []
    for t in range(n):
        high = n - 1 - t
        current = 0
        for i in range(2**high):
            g = i ^ (i >> 1)
            a = coeffs[(1 << t) | (g << (t + 1))]
            if abs(a) <= cutoff:
                continue
            diff = current ^ g
            gates.extend(CNOT(t + 1 + b, t) for b in range(high) if diff >> b & 1)
            current = g
            # e^{i a (-1)^p} == exp(-i (-2a) Z / 2) on the parity qubit
            gates.append(rotation(t, -2.0 * a))
        gates.extend(CNOT(t + 1 + b, t) for b in range(high) if current >> b & 1)
    return gates


def _kept(coeffs: np.ndarray, truncate: float | None) -> np.ndarray:
    if truncate is None:
        return coeffs
    kept = np.where(np.abs(coeffs) >= truncate, coeffs, 0.0)
    kept[0] = coeffs[0]
    return kept


def diagonal_circuit(thetas, truncate: float | None = None) -> Circuit:
    """Circuit for diag(e^{i theta_x}) up to the global phase e^{i a_0}.

    ``truncate`` drops Walsh terms of magnitude below it; see
    :func:`truncation_error` for the resulting operator-norm error.
    """
    coeffs = _kept(walsh_coefficients(thetas), truncate)
    n = _num_qubits(len(coeffs))
    if n < 1:
        raise KernelError("diagonal needs at least 2 entries")
    gates = _parity_network(coeffs, n, lambda t, th: Rotation(t, th), ZERO_COEFF)
    return Circuit(n, gates)


def truncation_error(thetas, truncate: float | None) -> float:
    """max_x |e^{i theta_x} - e^{i theta'_x}| for the truncated Walsh series theta'."""
    thetas = np.asarray(thetas, dtype=float)
    kept = _kept(walsh_coefficients(thetas), truncate)
    approx = walsh_coefficients(kept) * len(kept)  # the transform is its own inverse up to 1/N
    return float(np.max(np.abs(np.exp(1j * thetas) - np.exp(1j * approx))))


def controlled_diagonal(thetas, polarity: str = ON_ONE, truncate: float | None = None) -> Circuit:
    """Velocity-controlled diag(e^{i theta}) on an (n+1)-qubit register.

    Every rotation of :func:`diagonal_circuit` becomes a controlled rotation
    from the velocity qubit (index n). The Walsh constant term is a phase
    conditioned on the velocity only, so it is applied as a phase gate on the
    velocity qubit (X-conjugated for on_zero polarity).
    """
    if polarity not in POLARITIES:
        raise ValueError(f"polarity must be one of {POLARITIES}, got {polarity!r}")
    coeffs = _kept(walsh_coefficients(thetas), truncate)
    n = _num_qubits(len(coeffs))
    v = n
    gates = _parity_network(
        coeffs, n, lambda t, th: ControlledRotation(v, t, th, polarity), ZERO_COEFF
    )
    a0 = float(coeffs[0])
    if abs(a0) > ZERO_COEFF:
        if polarity == ON_ONE:
            gates.append(Phase(v, angle=a0))
        else:
            gates.extend([PauliX(v), Phase(v, angle=a0), PauliX(v)])
    return Circuit(n + 1, gates)


def _bit_reverse_perm(n: int) -> np.ndarray:
    return np.array([int(format(x, f"0{n}b")[::-1], 2) if n else 0 for x in range(2**n)])


def circulant_sigma_from_spectra(thetas_c, thetas_c2) -> Circuit:
    """Propagation block-diag(C, C') from the eigenphases of C and C'.

    The QFT runs without its terminal swaps; the spectra are bit-reversed instead.
    """
    thetas_c = np.asarray(thetas_c, dtype=float)
    thetas_c2 = np.asarray(thetas_c2, dtype=float)
    if thetas_c.shape != thetas_c2.shape:
        raise KernelError(f"spectrum size mismatch: {len(thetas_c)} vs {len(thetas_c2)}")
    n = _num_qubits(len(thetas_c))
    if n < 1:
        raise KernelError("lattice needs at least 2 sites")
    rev = _bit_reverse_perm(n)
    f = widen(qft_circuit(n), n + 1)
    return compose(
        f,
        controlled_diagonal(thetas_c2[rev], ON_ONE),
        controlled_diagonal(thetas_c[rev], ON_ZERO),
        inverse(f),
    )


def circulant_sigma(kernel_c, kernel_c2) -> Circuit:
    c = np.asarray(kernel_c, dtype=complex)
    c2 = np.asarray(kernel_c2, dtype=complex)
    if c.shape != c2.shape:
        raise KernelError(f"kernel size mismatch: {len(c)} vs {len(c2)}")
    return circulant_sigma_from_spectra(spectrum_of_circulant(c), spectrum_of_circulant(c2))


def controlled_omega_ladder(
    n: int, conjugate: bool = False, polarity: str = ON_ONE, swap_absorbed: bool = False
) -> Circuit:
    """Velocity-controlled Omega (or its conjugate) as n controlled phase gates.

    on_zero polarity is the on_one ladder conjugated by X on the velocity qubit.
    """
    sign = -1 if conjugate else 1
    ladder: list[Gate] = [
        ControlledPhase(n, j, k=(j + 1) if swap_absorbed else (n - j), sign=sign)
        for j in range(n)
    ]
    if polarity == ON_ZERO:
        ladder = [PauliX(n), *ladder, PauliX(n)]
    return Circuit(n + 1, ladder)


def basic_walk_via_circulant(n: int, alpha: float, theta: float, steps: int = 1) -> Circuit:
    """The basic walk with propagation F^dagger C^v(Omega, conj Omega) F."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    f = widen(qft_circuit(n), n + 1)
    step = compose(
        scattering_circuit(n, alpha, theta),
        f,
        controlled_omega_ladder(n, conjugate=False, polarity=ON_ZERO, swap_absorbed=True),
        controlled_omega_ladder(n, conjugate=True, polarity=ON_ONE, swap_absorbed=True),
        inverse(f),
    )
    return Circuit(n + 1, step.gates * steps)


def parse_spectrum(data: dict, n: int | None = None) -> np.ndarray:
    """Eigenphases from kernel JSON ``{"kind": "first_row"|"phases", "values": [...]}``."""
    kind = data.get("kind")
    values = data.get("values")
    if values is None:
        raise KernelError("kernel spec needs 'values'")
    if kind == "first_row":
        try:
            row = np.array([complex(re, im) for re, im in values])
        except (TypeError, ValueError) as exc:
            raise KernelError("first_row values must be [re, im] pairs") from exc
        thetas = spectrum_of_circulant(row)
    elif kind == "phases":
        thetas = np.asarray(values, dtype=float)
        _num_qubits(len(thetas))
    else:
        raise KernelError(f"kernel kind must be 'first_row' or 'phases', got {kind!r}")
    if n is not None and len(thetas) != 2**n:
        raise KernelError(f"kernel has {len(thetas)} entries, lattice has {2**n} sites")
    return thetas


def rotation_count(circuit: Circuit) -> int:
    return sum(isinstance(g, (Rotation, ControlledRotation)) for g in circuit.gates)


def cnot_count(circuit: Circuit) -> int:
    return sum(isinstance(g, CNOT) for g in circuit.gates)

