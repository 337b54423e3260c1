"""Bipartite phase-space geometry: orderings, the symplectic form, structure checks.

Coordinates follow the interleaved convention ``(x1, p1, ..., xn, pn)``
everywhere inside the package.  The blocked convention
``(x1, ..., xn, p1, ..., pn)`` exists for interoperability with other
toolkits and is converted away at I/O boundaries.  With interleaved
coordinates the standard symplectic form is the direct sum of per-mode
blocks ``[[0, 1], [-1, 0]]``, so a bipartition into the first ``n_A`` modes
and the remaining ``n_B`` modes splits J as ``J_A (+) J_B`` literally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .checks import DEFAULT_TOL, CheckReport, fro, margin_report

#: Single-mode symplectic form.
J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


class Ordering(enum.Enum):
    """Phase-space variable ordering tag."""

    INTERLEAVED = "interleaved"
    BLOCKED = "blocked"

    @classmethod
    def parse(cls, tag: str) -> "Ordering":
        try:
            return cls(str(tag).lower())
        except ValueError:
            raise ValueError(
                f"unknown ordering {tag!r}; expected 'interleaved' or 'blocked'"
            ) from None


@dataclass(frozen=True)
class ModePartition:
    """Bipartition of n modes into an A block of n_a modes and a B block of n_b."""

    n_a: int
    n_b: int

    def __post_init__(self):
        if self.n_a < 1 or self.n_b < 1:
            raise ValueError(
                f"both parts of a bipartition need at least one mode, "
                f"got n_a={self.n_a}, n_b={self.n_b}"
            )

    @property
    def n(self) -> int:
        return self.n_a + self.n_b

    @property
    def dim(self) -> int:
        """Phase-space dimension 2n."""
        return 2 * self.n


def _require_even_square(matrix: np.ndarray) -> int:
    """Validate a 2n x 2n shape and return n."""
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    if matrix.shape[0] % 2 != 0 or matrix.shape[0] == 0:
        raise ValueError(f"phase-space dimension must be even, got {matrix.shape[0]}")
    return matrix.shape[0] // 2


def symplectic_form(n_modes: int) -> np.ndarray:
    """Standard symplectic form for n modes in interleaved ordering."""
    if n_modes < 1:
        raise ValueError("need at least one mode")
    return scipy.linalg.block_diag(*([J2] * n_modes))


def build_J(partition: ModePartition, ordering: Ordering = Ordering.INTERLEAVED) -> np.ndarray:
    """Symplectic form J = J_A (+) J_B of a bipartite system, entries 0 and +-1."""
    J = symplectic_form(partition.n)
    return convert_ordering(J, Ordering.INTERLEAVED, ordering)


def _blocked_from_interleaved(n: int) -> np.ndarray:
    # blocked position i reads interleaved position perm[i]: all x's, then all p's
    return np.concatenate([np.arange(0, 2 * n, 2), np.arange(1, 2 * n, 2)])


def _ordering_index(n: int, frm: Ordering, to: Ordering) -> np.ndarray:
    perm = _blocked_from_interleaved(n)
    if (frm, to) == (Ordering.INTERLEAVED, Ordering.BLOCKED):
        return perm
    return np.argsort(perm)


def convert_ordering(matrix: np.ndarray, frm: Ordering, to: Ordering) -> np.ndarray:
    """Re-index a 2n x 2n matrix between the two orderings.

    The conversion is a pure permutation (conjugation by a permutation
    matrix), so a round trip reproduces the input bit-exactly.
    """
    matrix = np.asarray(matrix, dtype=float)
    n = _require_even_square(matrix)
    if frm == to:
        return matrix.copy()
    idx = _ordering_index(n, frm, to)
    return matrix[np.ix_(idx, idx)]


def convert_vector_ordering(vector: np.ndarray, frm: Ordering, to: Ordering) -> np.ndarray:
    """Re-index a phase-space vector between the two orderings."""
    vector = np.asarray(vector, dtype=float)
    if vector.ndim != 1 or vector.size % 2 != 0 or vector.size == 0:
        raise ValueError(f"expected a vector of even length, got shape {vector.shape}")
    if frm == to:
        return vector.copy()
    return vector[_ordering_index(vector.size // 2, frm, to)]


def direct_sum(block_a: np.ndarray, block_b: np.ndarray) -> np.ndarray:
    """Block-diagonal embedding with the A block in the leading rows/columns."""
    block_a = np.asarray(block_a, dtype=float)
    block_b = np.asarray(block_b, dtype=float)
    _require_even_square(block_a)
    _require_even_square(block_b)
    return scipy.linalg.block_diag(block_a, block_b)


def is_symplectic(matrix: np.ndarray, tol: float = DEFAULT_TOL) -> CheckReport:
    """Check S^T J S = J; the residual is relative to max(1, ||S||^2)."""
    matrix = np.asarray(matrix, dtype=float)
    n = _require_even_square(matrix)
    J = symplectic_form(n)
    residual = fro(matrix.T @ J @ matrix - J) / max(1.0, fro(matrix) ** 2)
    return margin_report(-residual, 1.0, tol, {"symplectic": residual})


def is_orthosymplectic(matrix: np.ndarray, tol: float = DEFAULT_TOL) -> CheckReport:
    """Check membership in U(n) = Sp(n) intersected with O(2n): both residuals must pass."""
    matrix = np.asarray(matrix, dtype=float)
    n = _require_even_square(matrix)
    scale = max(1.0, fro(matrix) ** 2)
    J = symplectic_form(n)
    r_symp = fro(matrix.T @ J @ matrix - J) / scale
    r_orth = fro(matrix.T @ matrix - np.eye(2 * n)) / scale
    return margin_report(
        -max(r_symp, r_orth),
        1.0,
        tol,
        {"symplectic": r_symp, "orthogonal": r_orth},
    )
