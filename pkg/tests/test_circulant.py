import numpy as np
import pytest

from qwalk import oracle
from qwalk import simulator as sim
from qwalk.circulant import (
    KernelError, basic_walk_via_circulant, circulant_sigma, cnot_count, controlled_diagonal,
    controlled_omega_ladder, diagonal_circuit, kernel_from_spectrum, parse_spectrum,
    rotation_count, spectrum_of_circulant, truncation_error, walsh_coefficients,
)
from qwalk.gates import ON_ONE, ON_ZERO, Circuit, PauliX, compose
from qwalk.walk import WalkSpec, walk_circuit

U = sim.circuit_unitary


def random_kernel(rng, N):
    return kernel_from_spectrum(rng.uniform(-np.pi, np.pi, N))


def velocity_flip(n):
    return Circuit(n + 1, [PauliX(n)])


def test_spectrum_of_shift_kernel_is_omega():
    for n in range(1, 6):
        N = 2**n
        row = oracle.shift_matrix(N)[0]
        th = spectrum_of_circulant(row)
        np.testing.assert_allclose(np.exp(1j * th), np.exp(2j * np.pi * np.arange(N) / N), atol=1e-12)


def test_spectrum_identity_and_rejects_nonunitary():
    np.testing.assert_allclose(spectrum_of_circulant([1, 0, 0, 0]), 0, atol=1e-15)
    with pytest.raises(KernelError):
        spectrum_of_circulant([0.5, 0, 0, 0])
    with pytest.raises(KernelError):
        spectrum_of_circulant([1, 0, 0])


def test_spectrum_round_trip_and_diagonalization(rng):
    for N in (2, 4, 8, 16):
        c = random_kernel(rng, N)
        th = spectrum_of_circulant(c)
        np.testing.assert_allclose(kernel_from_spectrum(th), c, atol=1e-9)
        F = oracle.dft_matrix(N)
        np.testing.assert_allclose(F.conj().T @ np.diag(np.exp(1j * th)) @ F,
                                   oracle.circulant_matrix(c), atol=1e-9)


def test_walsh_against_brute_force(rng):
    for n in range(1, 5):
        N = 2**n
        th = rng.normal(size=N)
        a = walsh_coefficients(th)
        brute = [sum(th[x] * (-1) ** bin(s & x).count("1") for x in range(N)) / N for s in range(N)]
        np.testing.assert_allclose(a, brute, atol=1e-12)


def test_diagonal_circuit_zero_is_empty():
    assert len(diagonal_circuit(np.zeros(8))) == 0


def test_diagonal_circuit_omega_is_single_qubit_only():
    for n in range(1, 5):
        N = 2**n
        th = 2 * np.pi * np.arange(N) / N
        a = walsh_coefficients(th)
        assert all(abs(a[s]) < 1e-12 for s in range(N) if bin(s).count("1") > 1)
        c = diagonal_circuit(th)
        assert rotation_count(c) == n and cnot_count(c) == 0
        assert oracle.matrices_close(oracle.omega_matrix(N), U(c), 1e-9, up_to_global_phase=True)


def test_diagonal_circuit_random(rng):
    for n in range(1, 5):
        N = 2**n
        th = rng.uniform(-np.pi, np.pi, N)
        c = diagonal_circuit(th)
        assert len(c) <= 2 ** (n + 1)
        assert oracle.matrices_close(np.diag(np.exp(1j * th)), U(c), 1e-9, up_to_global_phase=True)
    with pytest.raises(KernelError):
        diagonal_circuit(np.zeros(6))


def test_truncation_error_bound(rng):
    th = rng.uniform(-np.pi, np.pi, 16)
    assert truncation_error(th, None) < 1e-12
    for cut in (0.05, 0.2, 0.5):
        c = diagonal_circuit(th, truncate=cut)
        err = truncation_error(th, cut)
        a0 = walsh_coefficients(th)[0]
        exact = np.exp(1j * th)
        approx = np.exp(1j * a0) * np.diag(U(c))
        assert np.max(np.abs(exact - approx)) <= err + 1e-12
        assert len(c) <= len(diagonal_circuit(th))


@pytest.mark.parametrize("polarity", [ON_ONE, ON_ZERO])
def test_controlled_diagonal_zero(polarity):
    assert len(controlled_diagonal(np.zeros(4), polarity)) == 0


def test_controlled_diagonal_blocks(rng):
    for n in range(1, 5):
        N = 2**n
        om = 2 * np.pi * np.arange(N) / N
        np.testing.assert_allclose(U(controlled_diagonal(om, ON_ZERO)),
                                   oracle.block_diag(oracle.omega_matrix(N), np.eye(N)), atol=1e-9)
        th = rng.uniform(-np.pi, np.pi, N)
        np.testing.assert_allclose(U(controlled_diagonal(th, ON_ONE)),
                                   oracle.block_diag(np.eye(N), np.diag(np.exp(1j * th))), atol=1e-9)


def test_controlled_pair_either_order(rng):
    for n in (1, 2, 3):
        N = 2**n
        lam, lam2 = rng.uniform(-np.pi, np.pi, (2, N))
        a = controlled_diagonal(lam, ON_ZERO)
        b = controlled_diagonal(lam2, ON_ONE)
        want = oracle.block_diag(np.diag(np.exp(1j * lam)), np.diag(np.exp(1j * lam2)))
        np.testing.assert_allclose(U(compose(a, b)), want, atol=1e-9)
        np.testing.assert_allclose(U(compose(b, a)), want, atol=1e-9)


def test_polarity_identity(rng):
    for n in (1, 2, 3):
        th = rng.uniform(-np.pi, np.pi, 2**n)
        flip = velocity_flip(n)
        np.testing.assert_allclose(
            U(controlled_diagonal(th, ON_ZERO)),
            U(compose(flip, controlled_diagonal(th, ON_ONE), flip)), atol=1e-10)


def test_circulant_sigma_basic_walk():
    for n in range(1, 5):
        N = 2**n
        X = oracle.shift_matrix(N)
        np.testing.assert_allclose(U(circulant_sigma(X[0], X.T[0])), oracle.sigma_matrix(N), atol=1e-8)


def test_circulant_sigma_identity():
    e0 = np.array([1, 0, 0, 0, 0, 0, 0, 0])
    np.testing.assert_allclose(U(circulant_sigma(e0, e0)), np.eye(16), atol=1e-12)


def test_circulant_sigma_random(rng):
    for n in (1, 2, 3):
        N = 2**n
        for _ in range(5):
            c, c2 = random_kernel(rng, N), random_kernel(rng, N)
            got = U(circulant_sigma(c, c2))
            assert oracle.is_unitary(got)
            np.testing.assert_allclose(got, oracle.block_diag(oracle.circulant_matrix(c),
                                                              oracle.circulant_matrix(c2)), atol=1e-8)
            for block in (got[:N, :N], got[N:, N:]):
                assert np.max(np.abs(block - oracle.circulant_matrix(block[0]))) <= 1e-8
            assert np.max(np.abs(got[:N, N:])) <= 1e-8


def test_circulant_sigma_errors(rng):
    with pytest.raises(KernelError):
        circulant_sigma(random_kernel(rng, 4), random_kernel(rng, 8))
    with pytest.raises(KernelError):
        circulant_sigma([0.5, 0.5, 0.5, 0.5], [1, 0, 0, 0])


def test_conj_omega_ladder():
    for n in range(1, 5):
        N = 2**n
        np.testing.assert_allclose(U(controlled_omega_ladder(n, conjugate=True)),
                                   oracle.block_diag(np.eye(N), oracle.omega_matrix(N).conj()), atol=1e-10)


def test_basic_walk_via_circulant(rng):
    for n in range(1, 5):
        for steps in (0, 1, 2):
            a, t = rng.uniform(-np.pi, np.pi, 2)
            want = U(walk_circuit(WalkSpec(n, steps, a, t)))
            got = U(basic_walk_via_circulant(n, a, t, steps))
            assert oracle.matrices_close(want, got, 1e-9, up_to_global_phase=True)
    assert len(basic_walk_via_circulant(2, 0.1, 0.2, 0)) == 0


def test_parse_spectrum():
    row = {"kind": "first_row", "values": [[0, 0], [0, 0], [0, 0], [1, 0]]}
    np.testing.assert_allclose(np.exp(1j * parse_spectrum(row, 2)), np.exp(2j * np.pi * np.arange(4) / 4), atol=1e-12)
    np.testing.assert_allclose(parse_spectrum({"kind": "phases", "values": [0, 1]}), [0, 1])
    for bad in ({"kind": "phases", "values": [0, 1, 2]}, {"kind": "fourier", "values": [0, 1]},
                {"kind": "phases"}, {"kind": "first_row", "values": [1, 0]}):
        with pytest.raises(KernelError):
            parse_spectrum(bad)
    with pytest.raises(KernelError):
        parse_spectrum({"kind": "phases", "values": [0, 1]}, n=2)
