"""Werner-Wolf certificates, the PPT detector, and the disentangling pipeline.

A Gaussian state with covariance matrix Sigma is AB-separable exactly when
there are partial covariance matrices Sigma_A, Sigma_B satisfying their own
quantum conditions with ``Sigma >= Sigma_A (+) Sigma_B``.  The pipeline
below constructs, for any valid state, a symplectic rotation U such that
the rotated matrix ``Sigma_U = U Sigma U^T`` admits such a witness: with
P = (S S^T)^(1/2) for an admissible S and P = U^T Delta U, the blocks
``Sigma_A = (hbar/2) Delta_A^2`` and ``Sigma_B = (hbar/2) Delta_B^2`` are
minimal-uncertainty squeezed covariances dominated by Sigma_U.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .checks import (
    DEFAULT_TOL,
    CheckReport,
    VerificationError,
    fro,
    margin_report,
    min_eig_hermitian,
    min_eig_symmetric,
)
from .decomp import PairingError, delta_blocks, delta_matrix, ortho_diagonalize, symplectic_polar
from .phase_space import _require_even_square, direct_sum, symplectic_form
from .spectral import (
    CovarianceMatrix,
    QuantumConditionError,
    quantum_condition_check,
    williamson,
)


@dataclass(frozen=True, eq=False)
class SeparabilityWitness:
    """Pair (Sigma_A, Sigma_B) certifying Werner-Wolf separability of some Sigma."""

    sigma_a: np.ndarray
    sigma_b: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        for name, block in (("sigma_a", self.sigma_a), ("sigma_b", self.sigma_b)):
            block = np.array(block, dtype=float)
            _require_even_square(block)
            if fro(block - block.T) / max(1.0, fro(block)) > 1e-9:
                raise ValueError(f"{name} is not symmetric")
            block.setflags(write=False)
            object.__setattr__(self, name, block)
        if not (self.hbar > 0):
            raise ValueError(f"hbar must be positive, got {self.hbar}")

    @property
    def n_a(self) -> int:
        return self.sigma_a.shape[0] // 2

    @property
    def n_b(self) -> int:
        return self.sigma_b.shape[0] // 2


@dataclass(frozen=True, eq=False)
class DisentangleResult:
    """Rotation U, rotated covariance, witness, mode stretches, and all margins."""

    U: np.ndarray
    sigma_U: CovarianceMatrix
    witness: SeparabilityWitness
    lambdas: np.ndarray
    residuals: dict[str, float]


def werner_wolf_check(
    cov: CovarianceMatrix, witness: SeparabilityWitness, tol: float = DEFAULT_TOL
) -> CheckReport:
    """Verify the three Werner-Wolf conditions for (Sigma, Sigma_A, Sigma_B).

    (i) Sigma_A + (i*hbar/2) J_A >= 0, (ii) the same for B, and
    (iii) Sigma - Sigma_A (+) Sigma_B >= 0.  The margin is the smallest of
    the three minimum eigenvalues, gated at ``-tol * max(1, ||Sigma||)``.
    Conditions landing within the gate of zero are flagged in ``note``;
    the witness blocks of the disentangling pipeline are minimal-uncertainty
    states, so (i) and (ii) sit on the boundary by design.
    """
    cov = cov.as_interleaved()
    if witness.n_a != cov.partition.n_a or witness.n_b != cov.partition.n_b:
        raise ValueError(
            f"witness blocks of {witness.n_a}+{witness.n_b} modes do not match the "
            f"partition {cov.partition.n_a}+{cov.partition.n_b}"
        )
    if abs(witness.hbar - cov.hbar) > 1e-12 * max(1.0, cov.hbar):
        raise ValueError(f"hbar mismatch: witness {witness.hbar}, state {cov.hbar}")

    half = 0.5 * cov.hbar
    margins = {
        "A_quantum_min_eig": min_eig_hermitian(
            witness.sigma_a, half * symplectic_form(witness.n_a)
        ),
        "B_quantum_min_eig": min_eig_hermitian(
            witness.sigma_b, half * symplectic_form(witness.n_b)
        ),
        "domination_min_eig": min_eig_symmetric(
            cov.sigma - direct_sum(witness.sigma_a, witness.sigma_b)
        ),
    }
    scale = cov.scale()
    boundary = [name for name, value in margins.items() if abs(value) <= tol * scale]
    note = f"boundary (within tol of zero): {', '.join(boundary)}" if boundary else ""
    return margin_report(min(margins.values()), scale, tol, margins, note)


def disentangle(cov: CovarianceMatrix, tol: float = DEFAULT_TOL) -> DisentangleResult:
    """Construct a symplectic rotation making the state certifiably separable.

    Pipeline: Williamson S for Sigma, left polar S = P R, rotation
    diagonalization P = U^T Delta U, rotated matrix Sigma_U = U Sigma U^T,
    witness blocks (hbar/2) Delta_A^2 and (hbar/2) Delta_B^2.  Every stage
    is verified: the squeeze bound (hbar/2) Delta^2 <= Sigma_U and the full
    Werner-Wolf check must pass, and all margins are recorded.  The run is
    deterministic: identical inputs produce identical outputs.

    Raises
    ------
    QuantumConditionError
        The input does not satisfy the quantum condition (not a state).
    VerificationError
        A downstream stage failed its tolerance; the message names the stage.
    """
    cov = cov.as_interleaved()
    report = quantum_condition_check(cov, tol)
    if not report.passed:
        raise QuantumConditionError(
            f"cannot disentangle: quantum condition fails (margin {report.margin:.3e})"
        )
    try:
        form = williamson(cov, tol)
        polar = symplectic_polar(form.S, tol)
        rotation = ortho_diagonalize(polar.P, tol)
    except (PairingError, ValueError) as exc:
        # our own intermediates failed a precondition: that is a pipeline bug
        # or an input at the edge of conditioning, not a caller error
        raise VerificationError(f"disentangle pipeline stage failed: {exc}") from exc

    U = rotation.U
    lam = rotation.lambdas
    half = 0.5 * cov.hbar
    sigma_u = U @ cov.sigma @ U.T
    sigma_u = 0.5 * (sigma_u + sigma_u.T)
    sigma_U = CovarianceMatrix(sigma_u, cov.partition, cov.hbar)

    delta_a, delta_b = delta_blocks(lam, cov.partition)
    witness = SeparabilityWitness(half * delta_a @ delta_a, half * delta_b @ delta_b, cov.hbar)

    scale = cov.scale()
    squeeze_margin = min_eig_symmetric(sigma_u - half * delta_matrix(lam) ** 2)
    if squeeze_margin < -tol * scale:
        raise VerificationError(
            f"squeeze bound (hbar/2) Delta^2 <= Sigma_U failed: margin {squeeze_margin:.3e}"
        )
    ww = werner_wolf_check(sigma_U, witness, tol)
    if not ww.passed:
        raise VerificationError(f"witness failed the Werner-Wolf check: margin {ww.margin:.3e}")

    residuals = {
        "quantum_condition_margin": report.margin,
        "williamson_reconstruction": form.residuals["reconstruction"],
        "williamson_symplectic": form.residuals["symplectic"],
        "polar_factorization": polar.residuals["factorization"],
        "polar_R_orthogonal": polar.residuals["R_orthogonal"],
        "polar_R_symplectic": polar.residuals["R_symplectic"],
        "rotation_orthogonal": rotation.residuals["rotation_orthogonal"],
        "rotation_symplectic": rotation.residuals["rotation_symplectic"],
        "rotation_reconstruction": rotation.residuals["reconstruction"],
        "squeeze_bound_min_eig": squeeze_margin,
        "werner_wolf_margin": ww.margin,
    }
    return DisentangleResult(
        U=U, sigma_U=sigma_U, witness=witness, lambdas=lam, residuals=residuals
    )


def ppt_test(cov: CovarianceMatrix, tol: float = DEFAULT_TOL) -> CheckReport:
    """Partial-transpose entanglement detector on the covariance level.

    Flips the sign of every B-mode momentum (Lambda = I_A (+) diag(1,-1)
    per B mode) and runs the quantum condition on
    ``Sigma~ = Lambda Sigma Lambda``.  A failure certifies entanglement
    (``passed`` False).  A pass is PPT-consistency only; it decides
    separability conclusively just for 1 x m partitions, which the note
    spells out rather than overclaiming.
    """
    cov = cov.as_interleaved()
    signs = np.ones(cov.dim)
    signs[2 * cov.partition.n_a + 1 :: 2] = -1.0
    tilde = CovarianceMatrix(
        cov.sigma * np.outer(signs, signs), cov.partition, cov.hbar
    )
    report = quantum_condition_check(tilde, tol)
    residuals = dict(report.residuals)
    residuals["nu_min_tilde"] = residuals.pop("nu_min")
    if report.passed:
        if min(cov.partition.n_a, cov.partition.n_b) == 1:
            note = "PPT holds; conclusive for a 1 x m partition: state is separable"
        else:
            note = "PPT holds; inconclusive for this partition, no entanglement detected"
    else:
        note = "entangled: partial transpose violates the quantum condition"
    return CheckReport(
        passed=report.passed,
        margin=report.margin,
        scale=report.scale,
        tol=report.tol,
        residuals=residuals,
        note=note,
    )
