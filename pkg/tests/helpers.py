"""Shared fixtures and independent oracles for the test suite."""

import math

import numpy as np

from gaussep import CovarianceMatrix, ModePartition, random_covariance, symplectic_form


def two_mode_squeezer(r: float) -> np.ndarray:
    """Two-mode squeezing symplectic in interleaved ordering (oracle construction)."""
    c, s = math.cosh(r), math.sinh(r)
    Z = np.diag([1.0, -1.0])
    top = np.hstack([c * np.eye(2), s * Z])
    bot = np.hstack([s * Z, c * np.eye(2)])
    return np.vstack([top, bot])


def hermitian_min_eig_oracle(sigma: np.ndarray, hbar: float) -> float:
    """Min eigenvalue of sigma + (i*hbar/2) J via the complex eigensolver."""
    n = sigma.shape[0] // 2
    H = sigma + 0.5j * hbar * symplectic_form(n)
    return float(np.linalg.eigvalsh(H)[0].real)


def symplectic_spectrum_oracle(sigma: np.ndarray) -> np.ndarray:
    """Moduli of the eigenvalues of J Sigma via the general eigensolver, descending."""
    n = sigma.shape[0] // 2
    mods = np.abs(np.linalg.eigvals(symplectic_form(n) @ sigma))
    mods = np.sort(mods)[::-1]
    return 0.5 * (mods[0::2] + mods[1::2])


ACCEPTANCE_PARTITIONS = [(1, 1), (1, 2), (2, 2), (2, 3)]
ACCEPTANCE_HBARS = [0.5, 1.0, 2.0]


def acceptance_states(count: int = 200):
    """The seeded random-state family used by the acceptance criteria."""
    for seed in range(count):
        n_a, n_b = ACCEPTANCE_PARTITIONS[seed % len(ACCEPTANCE_PARTITIONS)]
        hbar = ACCEPTANCE_HBARS[seed % len(ACCEPTANCE_HBARS)]
        cov = random_covariance(
            ModePartition(n_a, n_b), hbar=hbar, seed=seed, squeeze_max=1.5, mix_max=2.0
        )
        yield seed, cov


def assert_valid_quantum(cov: CovarianceMatrix, tol: float = 1e-10) -> None:
    from gaussep import quantum_condition_check

    report = quantum_condition_check(cov, tol)
    assert report.passed, f"margin {report.margin}"
