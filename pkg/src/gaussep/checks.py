"""Residual bookkeeping shared by every verification gate in the package."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

#: Default relative tolerance for all pass/fail gates.
DEFAULT_TOL = 1e-10


class VerificationError(RuntimeError):
    """A post-condition that should hold by construction failed its tolerance."""


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a tolerance-gated check.

    ``passed`` is equivalent to ``margin >= -tol * scale``.  ``margin`` is
    the signed quantity driving the verdict: a minimum eigenvalue for
    positive-semidefiniteness gates, minus the relative residual for
    equation gates.  ``residuals`` collects every named diagnostic computed
    along the way; ``note`` carries human-oriented context (boundary cases,
    conclusiveness caveats).
    """

    passed: bool
    margin: float
    scale: float
    tol: float
    residuals: dict[str, float] = field(default_factory=dict)
    note: str = ""


def margin_report(margin, scale, tol, residuals=None, note=""):
    """Build a CheckReport enforcing the pass <=> margin >= -tol*scale contract."""
    margin = float(margin)
    scale = float(scale)
    tol = float(tol)
    return CheckReport(
        passed=bool(margin >= -tol * scale),
        margin=margin,
        scale=scale,
        tol=tol,
        residuals={k: float(v) for k, v in (residuals or {}).items()},
        note=note,
    )


def fro(matrix) -> float:
    """Frobenius norm, the norm used by every residual in this package."""
    return float(np.linalg.norm(matrix))


def min_eig_hermitian(real_part: np.ndarray, imag_part: np.ndarray) -> float:
    """Smallest eigenvalue of the Hermitian matrix ``real_part + i*imag_part``.

    Uses the real symmetric embedding ``[[A, -B], [B, A]]`` whose spectrum is
    that of ``A + iB`` with every eigenvalue doubled, keeping the computation
    in real arithmetic.  ``imag_part`` must be antisymmetric for the
    embedding to be symmetric.
    """
    emb = np.block([[real_part, -imag_part], [imag_part, real_part]])
    return float(np.linalg.eigvalsh(emb)[0])


def min_eig_symmetric(matrix: np.ndarray) -> float:
    """Smallest eigenvalue of a (nearly) symmetric real matrix."""
    sym = 0.5 * (matrix + matrix.T)
    return float(np.linalg.eigvalsh(sym)[0])


def sym_sqrt(matrix: np.ndarray) -> np.ndarray:
    """Symmetric square root of a symmetric positive-definite matrix."""
    w, v = np.linalg.eigh(0.5 * (matrix + matrix.T))
    if w[0] <= 0.0:
        raise ValueError("matrix is not positive definite")
    root = (v * np.sqrt(w)) @ v.T
    return 0.5 * (root + root.T)
