# ParetoForge - Quasi-Newton methods and benchmarks for multiobjective optimization.
# Copyright (C) 2026  The ParetoForge contributors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as
# published by the Free Software Foundation, either version 3 of the
# License, or (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""Metric matrices and their quasi-Newton updates.

Every update returns a new MetricMatrix holding both B and its inverse;
inputs are never modified.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from constants.solver_defaults import CURVATURE_FLOOR, INVERSE_PAIR_TOL, SYMMETRY_TOL
from services.errors import CurvatureBreakdown, DegenerateMetric, ZeroStep
from services.mop_core import SimplexWeights

logger = logging.getLogger(__name__)


def _symmetrize(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + matrix.T)


def factorize_spd(matrix: np.ndarray, label: str = "metric"):
    """Cholesky-factorize a symmetric positive definite matrix.

    Raises DegenerateMetric on asymmetry above SYMMETRY_TOL (relative to the
    largest entry) or on a nonpositive pivot.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DegenerateMetric(f"{label} must be square, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise DegenerateMetric(f"{label} has non-finite entries")
    scale = max(float(np.max(np.abs(matrix))), np.finfo(float).tiny)
    asymmetry = float(np.max(np.abs(matrix - matrix.T)))
    if asymmetry > SYMMETRY_TOL * scale:
        raise DegenerateMetric(f"{label} is not symmetric (asymmetry {asymmetry:.3e})")
    try:
        return cho_factor(matrix, lower=True, check_finite=False)
    except LinAlgError as e:
        raise DegenerateMetric(f"{label} is not positive definite: {e}") from e


def is_positive_definite(matrix: np.ndarray) -> bool:
    try:
        factorize_spd(matrix)
    except DegenerateMetric:
        return False
    return True


@dataclass(frozen=True)
class MetricMatrix:
    """A symmetric positive definite matrix B paired with its inverse."""

    B: np.ndarray
    B_inv: np.ndarray

    @classmethod
    def identity(cls, n: int) -> "MetricMatrix":
        return cls(np.eye(n), np.eye(n))

    @classmethod
    def scaled_identity(cls, n: int, tau: float) -> "MetricMatrix":
        if not (np.isfinite(tau) and tau > 0.0):
            raise DegenerateMetric(f"scale of the initial metric must be positive and finite, got {tau!r}")
        return cls(tau * np.eye(n), np.eye(n) / tau)

    @classmethod
    def from_matrix(cls, B: np.ndarray) -> "MetricMatrix":
        """Build the pair from B alone, inverting through its factorization."""
        B = _symmetrize(np.asarray(B, dtype=float))
        factor = factorize_spd(B)
        B_inv = _symmetrize(cho_solve(factor, np.eye(B.shape[0]), check_finite=False))
        return cls(B, B_inv)

    @property
    def n(self) -> int:
        return self.B.shape[0]

    def validate(self) -> None:
        factorize_spd(self.B, "B")
        factorize_spd(self.B_inv, "B_inv")

    def inverse_pair_error(self) -> float:
        """max-norm of B B_inv - I."""
        return float(np.max(np.abs(self.B @ self.B_inv - np.eye(self.n))))

    def symmetry_error(self) -> float:
        return float(np.max(np.abs(self.B - self.B.T)))

    def refreshed(self) -> "MetricMatrix":
        """Same B with the inverse recomputed from a factorization."""
        return MetricMatrix.from_matrix(self.B)

    def safeguarded(self, tol: float = INVERSE_PAIR_TOL) -> "MetricMatrix":
        """This pair, or B with a refactorized inverse when B_inv has drifted past tol.

        Raises DegenerateMetric if B is not positive definite or if even the
        refactorized pair misses tol.
        """
        factorize_spd(self.B, "B")
        pair = self if self.inverse_pair_error() <= tol else self.refreshed()
        error = pair.inverse_pair_error()
        if error > tol:
            raise DegenerateMetric(f"inverse pair error {error:.3e} after refactorization")
        factorize_spd(pair.B_inv, "B_inv")
        return pair


@dataclass(frozen=True)
class UpdateIngredients:
    """Quantities of one modified BFGS step.

    ``m`` is the shift max(-eta, 0) + f_decrease, and gamma = y + m * s.
    """

    s: np.ndarray
    y: np.ndarray
    f_decrease: float
    eta: float
    m: float
    gamma: np.ndarray

    @property
    def curvature(self) -> float:
        """gamma^T s."""
        return float(self.gamma @ self.s)


def build_ingredients(
    x_old: np.ndarray,
    x_new: np.ndarray,
    J_old: np.ndarray,
    J_new: np.ndarray,
    f_old: np.ndarray,
    f_new: np.ndarray,
    weights: SimplexWeights,
) -> UpdateIngredients:
    """Assemble s, y, eta, m and gamma from two consecutive iterates.

    ``weights`` are the dual weights that produced the direction at x_old.
    """
    s = np.asarray(x_new, dtype=float) - np.asarray(x_old, dtype=float)
    s_norm2 = float(s @ s)
    if s_norm2 == 0.0:
        raise ZeroStep()

    lam = weights.values
    mu = np.asarray(J_new, dtype=float) - np.asarray(J_old, dtype=float)
    y = lam @ mu
    f_decrease = float(lam @ (np.asarray(f_old, dtype=float) - np.asarray(f_new, dtype=float)))
    eta = float(y @ s) / s_norm2
    shift = max(-eta, 0.0) + f_decrease
    gamma = y + shift * s
    return UpdateIngredients(s=s, y=y, f_decrease=f_decrease, eta=eta, m=shift, gamma=gamma)


def _bfgs_pair(M: MetricMatrix, s: np.ndarray, gamma: np.ndarray, curvature: float) -> MetricMatrix:
    """Rank-two BFGS update of B with the matching product-form inverse."""
    B, H = M.B, M.B_inv
    rho = 1.0 / curvature

    Bs = B @ s
    sBs = float(s @ Bs)
    B_new = B - np.outer(Bs, Bs) / sBs + rho * np.outer(gamma, gamma)

    # (I - rho s g^T) H (I - rho g s^T) + rho s s^T, expanded
    Hg = H @ gamma
    gHg = float(gamma @ Hg)
    H_new = (
        H
        - rho * (np.outer(s, Hg) + np.outer(Hg, s))
        + (rho * rho * gHg + rho) * np.outer(s, s)
    )
    return MetricMatrix(_symmetrize(B_new), _symmetrize(H_new))


def mfbfgs_update(M: MetricMatrix, ing: UpdateIngredients, curvature_floor: float = CURVATURE_FLOOR) -> MetricMatrix:
    """Modified BFGS update driven by gamma; the result satisfies B' s = gamma."""
    s_norm2 = float(ing.s @ ing.s)
    curvature = ing.curvature
    if not curvature > curvature_floor * s_norm2:
        raise CurvatureBreakdown(curvature, curvature_floor * s_norm2)
    return _bfgs_pair(M, ing.s, ing.gamma, curvature)


def dfp_update(M: MetricMatrix, s: np.ndarray, y: np.ndarray, curvature_floor: float = CURVATURE_FLOOR) -> MetricMatrix:
    """DFP update of B with pair (s, y); the result satisfies B' s = y."""
    s = np.asarray(s, dtype=float)
    y = np.asarray(y, dtype=float)
    sy = float(s @ y)
    floor = curvature_floor * float(s @ s)
    if not sy > floor:
        raise CurvatureBreakdown(sy, floor)

    B, H = M.B, M.B_inv
    rho = 1.0 / sy

    # (I - rho y s^T) B (I - rho s y^T) + rho y y^T, expanded
    Bs = B @ s
    sBs = float(s @ Bs)
    B_new = (
        B
        - rho * (np.outer(y, Bs) + np.outer(Bs, y))
        + (rho * rho * sBs + rho) * np.outer(y, y)
    )

    # The inverse of a DFP update is a BFGS-form update of H with (y, s)
    Hy = H @ y
    yHy = float(y @ Hy)
    H_new = H - np.outer(Hy, Hy) / yHy + rho * np.outer(s, s)
    return MetricMatrix(_symmetrize(B_new), _symmetrize(H_new))


def per_objective_bfgs_update(
    family: list[MetricMatrix],
    s: np.ndarray,
    mu: np.ndarray,
    curvature_floor: float = CURVATURE_FLOOR,
) -> list[MetricMatrix]:
    """Classical BFGS update of every B_i with (s, mu_i).

    Members whose curvature s^T mu_i is below the floor are returned
    unchanged (the very same object).
    """
    s = np.asarray(s, dtype=float)
    floor = curvature_floor * float(s @ s)
    updated: list[MetricMatrix] = []
    for i, (M, mu_i) in enumerate(zip(family, np.atleast_2d(mu))):
        curvature = float(s @ mu_i)
        if not curvature > floor:
            logger.debug(f"Skipping BFGS update of B_{i} (s^T mu = {curvature:.3e})")
            updated.append(M)
            continue
        updated.append(_bfgs_pair(M, s, mu_i, curvature))
    return updated
