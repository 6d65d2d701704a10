"""Dense reference matrices built straight from their definitions.

Nothing here touches circuits or the simulator, so comparing a circuit's
unitary against these matrices is an independent check. Joint velocity-position
index is ``N*v + x``.
"""
from __future__ import annotations

import numpy as np


def shift_matrix(N: int) -> np.ndarray:
    """Cyclic increment: X[i, j] = 1 iff i == (j + 1) mod N."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    X = np.zeros((N, N), dtype=complex)
    for j in range(N):
        X[(j + 1) % N, j] = 1
    return X


def exchange_matrix(N: int) -> np.ndarray:
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    J = np.zeros((N, N), dtype=complex)
    for i in range(N):
        J[i, N - 1 - i] = 1
    return J


def is_toeplitz(A: np.ndarray, tol: float = 0.0) -> bool:
    A = np.asarray(A)
    n = A.shape[0]
    return all(abs(A[i, j] - A[i - 1, j - 1]) <= tol for i in range(1, n) for j in range(1, n))


def toeplitz_transpose_check(A: np.ndarray, tol: float = 1e-12) -> bool:
    """True iff A^T == J A J entrywise within ``tol``."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    J = exchange_matrix(A.shape[0])
    return bool(np.max(np.abs(A.T - J @ A @ J), initial=0.0) <= tol)


def block_diag(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    n, m = A.shape[0], B.shape[0]
    out = np.zeros((n + m, n + m), dtype=complex)
    out[:n, :n] = A
    out[n:, n:] = B
    return out


def sigma_matrix(N: int) -> np.ndarray:
    X = shift_matrix(N)
    return block_diag(X, X.T)


def circulant_matrix(kernel) -> np.ndarray:
    """C[i, j] = c[(j - i) mod N] for first row ``c``."""
    c = np.asarray(kernel, dtype=complex)
    N = len(c)
    C = np.empty((N, N), dtype=complex)
    for i in range(N):
        for j in range(N):
            C[i, j] = c[(j - i) % N]
    return C


def dft_matrix(N: int) -> np.ndarray:
    """F[k, x] = exp(+2 pi i x k / N) / sqrt(N)."""
    k = np.arange(N)
    return np.exp(2j * np.pi * np.outer(k, k) / N) / np.sqrt(N)


def omega_matrix(N: int) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * np.arange(N) / N))


def scattering_matrix(alpha: float, theta: float) -> np.ndarray:
    e = np.exp(1j * alpha)
    return np.array(
        [[1j * e * np.sin(theta), e * np.cos(theta)],
         [e * np.cos(theta), 1j * e * np.sin(theta)]],
        dtype=complex,
    )


def step_matrix(N: int, alpha: float, theta: float) -> np.ndarray:
    """One walk step: propagation after scattering."""
    return sigma_matrix(N) @ np.kron(scattering_matrix(alpha, theta), np.eye(N))


def is_unitary(U: np.ndarray, tol: float = 1e-9) -> bool:
    U = np.asarray(U)
    return bool(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))) <= tol)


def l1_distance(P: dict, Q: dict, tol: float = 1e-8) -> float:
    """Half the summed absolute difference over the union of supports."""
    for name, D in (("P", P), ("Q", Q)):
        s = sum(D.values())
        if abs(s - 1.0) > tol:
            raise ValueError(f"{name} is not normalized (sums to {s})")
    keys = set(P) | set(Q)
    return 0.5 * sum(abs(P.get(k, 0.0) - Q.get(k, 0.0)) for k in keys)


def align_global_phase(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Return B rescaled by the unit phase that matches A at A's largest-modulus entry."""
    A = np.asarray(A)
    B = np.asarray(B)
    i = np.unravel_index(np.argmax(np.abs(A)), A.shape)
    if abs(B[i]) == 0:
        return B
    return B * (A[i] / abs(A[i])) / (B[i] / abs(B[i]))


def max_deviation(A, B, up_to_global_phase: bool = False) -> float:
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
    if up_to_global_phase:
        B = align_global_phase(A, B)
    return float(np.max(np.abs(A - B), initial=0.0))


def matrices_close(A, B, tol: float, up_to_global_phase: bool = False) -> bool:
    return max_deviation(A, B, up_to_global_phase) <= tol
