"""Symplectic polar decomposition and rotation diagonalization of its positive factor.

Any symplectic S factors as S = P R with P = (S S^T)^(1/2) symmetric
positive-definite symplectic and R = P^(-1) S orthosymplectic (the left
polar form; it is the one for which S maps the centered ball like P does).
The eigenvalues of P come in reciprocal pairs (lambda, 1/lambda), and P is
diagonalized by a symplectic rotation U as P = U^T Delta U with
Delta = (+)_k diag(lambda_k, 1/lambda_k), lambda_k >= 1, sorted descending.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .checks import DEFAULT_TOL, VerificationError, fro
from .phase_space import (
    ModePartition,
    _require_even_square,
    is_orthosymplectic,
    is_symplectic,
    symplectic_form,
)

#: Relative tolerance for grouping eigenvalues into reciprocal classes.
PAIR_TOL = 1e-8


class PairingError(ValueError):
    """Eigenvalues of the input could not be grouped into reciprocal pairs.

    Signals that the matrix handed to the diagonalizer was not symplectic.
    """


@dataclass(frozen=True, eq=False)
class PolarForm:
    """Factors of S = P R: symmetric positive-definite symplectic P, rotation R."""

    P: np.ndarray
    R: np.ndarray
    residuals: dict[str, float]


@dataclass(frozen=True, eq=False)
class RotationDiagonalization:
    """Rotation U and per-mode stretches lambda_k with P = U^T Delta U."""

    U: np.ndarray
    lambdas: np.ndarray
    residuals: dict[str, float]

    def delta(self) -> np.ndarray:
        return delta_matrix(self.lambdas)


def delta_matrix(lambdas) -> np.ndarray:
    """Diagonal symplectic (+)_k diag(lambda_k, 1/lambda_k) in interleaved ordering."""
    lambdas = np.asarray(lambdas, dtype=float)
    if lambdas.ndim != 1 or lambdas.size == 0 or np.any(lambdas <= 0):
        raise ValueError("lambdas must be a non-empty vector of positive reals")
    diag = np.empty(2 * lambdas.size)
    diag[0::2] = lambdas
    diag[1::2] = 1.0 / lambdas
    return np.diag(diag)


def delta_blocks(lambdas, partition: ModePartition) -> tuple[np.ndarray, np.ndarray]:
    """Split Delta into its A-part (first n_a modes) and B-part."""
    lambdas = np.asarray(lambdas, dtype=float)
    if lambdas.size != partition.n:
        raise ValueError(
            f"{lambdas.size} mode stretches do not match a partition of {partition.n} modes"
        )
    return delta_matrix(lambdas[: partition.n_a]), delta_matrix(lambdas[partition.n_a :])


def reconstruct(U: np.ndarray, lambdas) -> np.ndarray:
    """Assemble U^T Delta U from a diagonalization."""
    U = np.asarray(U, dtype=float)
    delta = delta_matrix(lambdas)
    if U.shape != delta.shape:
        raise ValueError(f"rotation shape {U.shape} does not match {delta.shape[0] // 2} modes")
    return U.T @ delta @ U


def symplectic_polar(S: np.ndarray, tol: float = DEFAULT_TOL) -> PolarForm:
    """Left polar decomposition S = P R of a symplectic matrix.

    P = (S S^T)^(1/2) via a symmetric eigendecomposition, R = P^(-1) S.
    The input is checked for symplecticity, and all factor properties
    (factorization residual, P symplectic, R orthosymplectic) are verified.
    """
    S = np.asarray(S, dtype=float)
    n = _require_even_square(S)
    in_rep = is_symplectic(S, tol)
    if not in_rep.passed:
        raise ValueError(
            f"input is not symplectic (residual {in_rep.residuals['symplectic']:.3e}, "
            f"tol {tol:.1e})"
        )
    w, V = np.linalg.eigh(S @ S.T)
    if w[0] <= 0.0:
        raise ValueError("S S^T is not positive definite; input is singular")
    root = np.sqrt(w)
    P = (V * root) @ V.T
    P = 0.5 * (P + P.T)
    R = (V / root) @ V.T @ S

    J = symplectic_form(n)
    r_rep = is_orthosymplectic(R, tol)
    residuals = {
        "factorization": fro(P @ R - S) / fro(S),
        "P_symplectic": fro(P @ J @ P - J) / max(1.0, fro(P) ** 2),
        "R_orthogonal": r_rep.residuals["orthogonal"],
        "R_symplectic": r_rep.residuals["symplectic"],
        "input_symplectic": in_rep.residuals["symplectic"],
    }
    if residuals["factorization"] > tol or not r_rep.passed or residuals["P_symplectic"] > 10 * tol:
        raise VerificationError(f"polar factor verification failed: {residuals}")
    return PolarForm(P=P, R=R, residuals=residuals)


def _isotropic_pairs(basis: np.ndarray, J: np.ndarray) -> list[tuple[np.ndarray, np.ndarray]]:
    """Split a J-invariant orthonormal basis into (v, -Jv) planes.

    Used for the unit-eigenvalue class, where the companion trick gives no
    new vectors; the subspace is peeled two dimensions at a time.
    """
    pairs = []
    B = np.array(basis)
    while B.shape[1] > 0:
        v = B[:, 0]
        v = v / np.linalg.norm(v)
        w = -J @ v
        w = w / np.linalg.norm(w)
        pairs.append((v, w))
        if B.shape[1] == 2:
            break
        C = B - np.outer(v, v @ B) - np.outer(w, w @ B)
        u, s, _ = np.linalg.svd(C, full_matrices=False)
        keep = s > 0.5
        if int(keep.sum()) != B.shape[1] - 2:
            raise PairingError(
                "failed to peel a symplectic plane off the unit eigenvalue class"
            )
        B = u[:, keep]
    return pairs


def ortho_diagonalize(
    P: np.ndarray, tol: float = DEFAULT_TOL, pair_tol: float = PAIR_TOL
) -> RotationDiagonalization:
    """Diagonalize a positive-definite symplectic P by a symplectic rotation.

    Steps: (i) symmetric eigendecomposition of P; (ii) cluster the
    eigenvalues into reciprocal classes {lambda, 1/lambda} with relative
    tolerance ``pair_tol``; (iii) for each class with lambda > 1, companion
    vectors w = -J v of an orthonormal eigenbasis {v} are automatically
    orthonormal eigenvectors for 1/lambda (from P J = J P^(-1)); (iv) the
    lambda = 1 class is peeled into (v, -Jv) planes; (v) U^T gets columns
    (v_1, w_1, v_2, w_2, ...) so Delta = (+) diag(lambda_k, 1/lambda_k);
    (vi) modes are sorted by lambda descending; (vii) every
    RotationDiagonalization invariant is verified.

    Raises
    ------
    ValueError
        Input fails the symmetry, definiteness, or symplecticity checks.
    PairingError
        Reciprocal eigenvalue classes have mismatched dimensions or
        products away from one; the input was not symplectic.
    VerificationError
        The assembled rotation fails its own invariants at ``tol``.
    """
    P = np.asarray(P, dtype=float)
    n = _require_even_square(P)
    scale = max(1.0, fro(P))
    if fro(P - P.T) / scale > 1e-9:
        raise ValueError("input is not symmetric")
    symp_rep = is_symplectic(P, tol)
    if not symp_rep.passed:
        raise ValueError(
            f"input is not symplectic (residual {symp_rep.residuals['symplectic']:.3e})"
        )
    w, V = np.linalg.eigh(0.5 * (P + P.T))
    if w[0] <= 0.0:
        raise ValueError("input is not positive definite")

    groups: list[list[int]] = [[0]]
    for i in range(1, 2 * n):
        if w[i] <= w[i - 1] * (1.0 + pair_tol):
            groups[-1].append(i)
        else:
            groups.append([i])
    reps = [math.sqrt(w[g[0]] * w[g[-1]]) for g in groups]
    m = len(groups)
    for j in range(m):
        k = m - 1 - j
        if len(groups[j]) != len(groups[k]):
            raise PairingError(
                f"eigenvalue classes near {reps[j]:.9g} and {reps[k]:.9g} have "
                f"dimensions {len(groups[j])} and {len(groups[k])}"
            )
        if abs(reps[j] * reps[k] - 1.0) > 10.0 * pair_tol:
            raise PairingError(
                f"eigenvalue classes near {reps[j]:.9g} and {reps[k]:.9g} are not reciprocal"
            )

    J = symplectic_form(n)
    modes: list[tuple[float, np.ndarray, np.ndarray]] = []
    for j in range(m - 1, -1, -1):
        k = m - 1 - j
        if j > k:
            for i in groups[j]:
                v = V[:, i]
                modes.append((float(w[i]), v, -J @ v))
        elif j == k:
            if len(groups[j]) % 2 != 0:
                raise PairingError("unit eigenvalue class has odd dimension")
            for v, wv in _isotropic_pairs(V[:, groups[j]], J):
                modes.append((1.0, v, wv))
        # j < k: covered by the companions of its mirror class
    if len(modes) != n:
        raise PairingError(f"assembled {len(modes)} mode planes, expected {n}")

    lam = np.array([mode[0] for mode in modes])
    order = np.argsort(-lam, kind="stable")
    lam = lam[order]
    basis = np.empty((2 * n, 2 * n))
    for pos, idx in enumerate(order):
        _, v, wv = modes[idx]
        basis[:, 2 * pos] = v
        basis[:, 2 * pos + 1] = wv
    U = basis.T

    rot_rep = is_orthosymplectic(U, tol)
    recon = fro(U.T @ delta_matrix(lam) @ U - P) / fro(P)
    residuals = {
        "rotation_orthogonal": rot_rep.residuals["orthogonal"],
        "rotation_symplectic": rot_rep.residuals["symplectic"],
        "reconstruction": recon,
        "input_symplectic": symp_rep.residuals["symplectic"],
    }
    if not rot_rep.passed or recon > tol or lam[-1] < 1.0 - 1e-12:
        raise VerificationError(f"rotation diagonalization verification failed: {residuals}")
    return RotationDiagonalization(U=U, lambdas=lam, residuals=residuals)
