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

"""Simplex-constrained dual subproblems for the descent directions.

Every solver minimizes a convex function phi over the unit simplex:

* common metric:   phi(lam) = 1/2 g^T M g,          g = J^T lam, M = B^-1
* per objective:   phi(lam) = 1/2 g^T H(lam)^-1 g,  H(lam) = sum lam_i B_i

and maps the minimizer back to the primal direction d and the optimal
value theta = -phi(lam*).
"""

import logging
from collections.abc import Callable
from itertools import combinations
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.linalg import cho_solve

from constants.solver_defaults import DIRECTION_ZERO_TOL
from models.solver import DualSolverConfig, DualStrategy
from services.errors import DualNonConvergence
from services.hessian_approx import MetricMatrix, factorize_spd
from services.mop_core import SimplexWeights

logger = logging.getLogger(__name__)

# Iteration cap of the one-dimensional root finder along a Frank-Wolfe segment
_LINE_MAX_ITERS = 100

# Largest m for which the exact fallback enumerates every support
_MAX_ENUMERATED_OBJECTIVES = 12


class MetricKind(str, Enum):
    """Metric that defined a direction."""

    IDENTITY = "identity"
    COMMON = "common"
    PER_OBJECTIVE = "per_objective"


@dataclass(frozen=True)
class DirectionResult:
    """Descent direction, optimal value and the dual weights behind them."""

    d: np.ndarray
    theta: float
    weights: SimplexWeights
    metric_used: MetricKind
    dual_gradient: np.ndarray
    gap: float
    iterations: int

    @property
    def is_critical(self) -> bool:
        return self.theta == 0.0


@dataclass
class _DualOutcome:
    lam: np.ndarray
    grad: np.ndarray
    gap: float
    iterations: int


# =============================================================================
# Simplex utilities
# =============================================================================


def project_to_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the unit simplex (sort-based)."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    ks = np.arange(1, v.size + 1)
    rho = np.nonzero(u - css / ks > 0)[0][-1]
    tau = css[rho] / (rho + 1.0)
    return np.maximum(v - tau, 0.0)


def _fw_gap(lam: np.ndarray, grad: np.ndarray) -> float:
    return float(lam @ grad - np.min(grad))


# =============================================================================
# Generic simplex minimizers
# =============================================================================


def _frank_wolfe(
    lam0: np.ndarray,
    grad_fn: Callable[[np.ndarray], np.ndarray],
    line_min: Callable[[np.ndarray, np.ndarray, np.ndarray, float], float],
    tol: float,
    max_iters: int,
) -> _DualOutcome:
    """Frank-Wolfe with away steps; ties between vertices go to the lowest index."""
    lam = lam0.copy()
    grad = grad_fn(lam)
    gap = _fw_gap(lam, grad)
    it = 0
    while gap > tol and it < max_iters:
        it += 1
        s = int(np.argmin(grad))
        support = np.nonzero(lam > 0.0)[0]
        v = int(support[np.argmax(grad[support])])
        away_gap = float(grad[v] - lam @ grad)

        is_away = away_gap > gap and lam[v] < 1.0
        if is_away:
            direction = lam.copy()
            direction[v] -= 1.0
            t_max = lam[v] / (1.0 - lam[v])
        else:
            direction = -lam
            direction[s] += 1.0
            t_max = 1.0

        t = line_min(lam, direction, grad, t_max)
        if t <= 0.0:
            break
        lam = lam + t * direction
        if is_away and t >= t_max:
            # drop step: vertex v leaves the support exactly
            lam[v] = 0.0
        lam = np.maximum(lam, 0.0)
        lam /= lam.sum()
        grad = grad_fn(lam)
        gap = _fw_gap(lam, grad)
    return _DualOutcome(lam=lam, grad=grad, gap=gap, iterations=it)


def _projected_gradient(
    lam0: np.ndarray,
    phi_fn: Callable[[np.ndarray], float],
    grad_fn: Callable[[np.ndarray], np.ndarray],
    step0: float,
    tol: float,
    max_iters: int,
) -> _DualOutcome:
    """Projected gradient with backtracking on the quadratic upper model."""
    lam = lam0.copy()
    grad = grad_fn(lam)
    phi = phi_fn(lam)
    gap = _fw_gap(lam, grad)
    step = step0
    it = 0
    while gap > tol and it < max_iters:
        it += 1
        while True:
            candidate = project_to_simplex(lam - step * grad)
            diff = candidate - lam
            phi_c = phi_fn(candidate)
            if phi_c <= phi + grad @ diff + (0.5 / step) * (diff @ diff) or step < 1e-30:
                break
            step *= 0.5
        if not np.any(diff):
            break
        lam, phi = candidate, phi_c
        grad = grad_fn(lam)
        gap = _fw_gap(lam, grad)
        step *= 2.0
    return _DualOutcome(lam=lam, grad=grad, gap=gap, iterations=it)


# =============================================================================
# Common metric (steepest descent is the case M = I)
# =============================================================================


def _closed_form_m2(G: np.ndarray) -> np.ndarray:
    """Exact minimizer of 1/2 lam^T G lam on the segment between the two vertices."""
    denom = G[0, 0] - 2.0 * G[0, 1] + G[1, 1]
    if denom <= 0.0:
        # g1 == g2 in the metric: every weight is optimal
        return np.array([1.0, 0.0])
    lam1 = min(max((G[1, 1] - G[0, 1]) / denom, 0.0), 1.0)
    return np.array([lam1, 1.0 - lam1])


def _polish_on_support(G: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Solve the equality-constrained QP on the current support exactly, if that stays feasible."""
    support = np.nonzero(lam > 0.0)[0]
    k = support.size
    if k < 2:
        return lam
    kkt = np.zeros((k + 1, k + 1))
    kkt[:k, :k] = G[np.ix_(support, support)]
    kkt[:k, k] = 1.0
    kkt[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    sol, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
    weights = sol[:k]
    if not np.all(np.isfinite(weights)) or np.any(weights < -1e-12):
        return lam
    polished = np.zeros_like(lam)
    polished[support] = np.maximum(weights, 0.0)
    total = polished.sum()
    if total <= 0.0:
        return lam
    polished /= total
    if polished @ G @ polished <= lam @ G @ lam:
        return polished
    return lam


def _solve_by_supports(A: np.ndarray) -> np.ndarray:
    """Exact minimizer of ||A^T lam|| over the simplex by affine least squares on every support."""
    m = A.shape[0]
    best = SimplexWeights.vertex(m, 0).values
    best_value = float(np.linalg.norm(A[0]))
    for size in range(1, m + 1):
        for support in combinations(range(m), size):
            base = A[support[0]]
            if size == 1:
                t = np.zeros(0)
            else:
                diffs = (A[list(support[1:])] - base).T
                t, *_ = np.linalg.lstsq(diffs, -base, rcond=None)
            weights = np.concatenate(([1.0 - t.sum()], t))
            if not np.all(np.isfinite(weights)) or np.any(weights < -1e-12):
                continue
            lam = np.zeros(m)
            lam[list(support)] = np.maximum(weights, 0.0)
            lam /= lam.sum()
            value = float(np.linalg.norm(A.T @ lam))
            if value < best_value:
                best, best_value = lam, value
    return best


def _outcome(A: np.ndarray, lam: np.ndarray, iterations: int) -> _DualOutcome:
    # dual gradient from the rows of A; forming A A^T first squares their scale
    grad = A @ (A.T @ lam)
    return _DualOutcome(lam=lam, grad=grad, gap=_fw_gap(lam, grad), iterations=iterations)


def _roundoff_floor(A: np.ndarray) -> float:
    """Rounding error of the dual gradient A A^T lam, which cancellation in A^T lam can leave at eps ||a_i||^2."""
    row_norm = float(np.max(np.linalg.norm(A, axis=1)))
    return 16.0 * A.shape[1] * np.finfo(float).eps * row_norm * row_norm


def _solve_quadratic_dual(A: np.ndarray, config: DualSolverConfig) -> _DualOutcome:
    """Minimize 1/2 ||A^T lam||^2 over the simplex; the rows of A are the gradients in the metric.

    Raises DualNonConvergence when neither the configured strategy nor the
    exact support solve brings the gap under ``config.tol``.
    """
    m = A.shape[0]
    G = A @ A.T
    G = 0.5 * (G + G.T)

    def grad_fn(lam: np.ndarray) -> np.ndarray:
        return G @ lam

    def phi_fn(lam: np.ndarray) -> float:
        return 0.5 * float(lam @ G @ lam)

    def line_min(lam: np.ndarray, direction: np.ndarray, grad: np.ndarray, t_max: float) -> float:
        slope = float(grad @ direction)
        curvature = float(direction @ G @ direction)
        if slope >= 0.0:
            return 0.0
        if curvature <= 0.0:
            return t_max
        return min(-slope / curvature, t_max)

    use_closed_form = m == 2 and (config.strategy == DualStrategy.CLOSED_FORM_M2 or config.m2_fast_path)
    if use_closed_form:
        outcome = _outcome(A, _closed_form_m2(G), 1)
    else:
        if config.strategy == DualStrategy.CLOSED_FORM_M2:
            logger.debug(f"Closed form needs m = 2 (got {m}); using Frank-Wolfe")
        lam0 = np.zeros(m)
        lam0[int(np.argmin(np.diag(G)))] = 1.0
        if config.strategy == DualStrategy.PROJECTED_GRADIENT:
            lipschitz = float(np.max(np.linalg.eigvalsh(G)))
            step0 = 1.0 / lipschitz if lipschitz > 0.0 else 1.0
            inner = _projected_gradient(lam0, phi_fn, grad_fn, step0, config.tol, config.max_iters)
        else:
            inner = _frank_wolfe(lam0, grad_fn, line_min, config.tol, config.max_iters)
        outcome = _outcome(A, _polish_on_support(G, inner.lam), inner.iterations)

    if outcome.gap > config.tol + _roundoff_floor(A) and m <= _MAX_ENUMERATED_OBJECTIVES:
        exact = _outcome(A, _solve_by_supports(A), outcome.iterations)
        logger.debug(f"Dual gap {outcome.gap:.3e} after {outcome.iterations} iterations; exact support solve gives {exact.gap:.3e}")
        if exact.gap < outcome.gap:
            outcome = exact
    if outcome.gap > config.tol + _roundoff_floor(A):
        raise DualNonConvergence(outcome.gap, outcome.iterations)
    return outcome


def _snap(d: np.ndarray, theta: float, x_norm: float) -> tuple[np.ndarray, float]:
    if float(np.linalg.norm(d)) <= DIRECTION_ZERO_TOL * (1.0 + x_norm) or theta >= 0.0:
        return np.zeros_like(d), 0.0
    return d, theta


def _check_jacobian(J: np.ndarray) -> np.ndarray:
    J = np.atleast_2d(np.asarray(J, dtype=float))
    if J.ndim != 2 or J.shape[0] < 1:
        raise ValueError(f"Jacobian must be a non-empty m x n matrix, got shape {J.shape}")
    return J


def solve_dual_common(
    J: np.ndarray,
    B_inv: np.ndarray,
    config: DualSolverConfig,
    x_norm: float = 0.0,
) -> DirectionResult:
    """Direction of the common-metric subproblem: d = -B^-1 sum lam_i grad f_i.

    With B^-1 = R R^T the dual works on the rows of J R, so that
    theta = -1/2 ||R^T g||^2 and D(x, d) + ||d||_B^2 equals the duality gap.
    """
    J = _check_jacobian(J)
    B_inv = np.asarray(B_inv, dtype=float)
    if B_inv.shape != (J.shape[1], J.shape[1]):
        raise ValueError(f"Metric of shape {B_inv.shape} does not match n = {J.shape[1]}")
    c, _ = factorize_spd(B_inv, "B_inv")
    R = np.tril(c)

    outcome = _solve_quadratic_dual(J @ R, config)
    lam = outcome.lam
    v = R.T @ (J.T @ lam)
    d = -(R @ v)
    theta = min(-0.5 * float(v @ v), 0.0)
    d, theta = _snap(d, theta, x_norm)
    return DirectionResult(
        d=d,
        theta=theta,
        weights=SimplexWeights(lam),
        metric_used=MetricKind.COMMON,
        dual_gradient=outcome.grad,
        gap=outcome.gap,
        iterations=outcome.iterations,
    )


def solve_dual_sd(J: np.ndarray, config: DualSolverConfig, x_norm: float = 0.0) -> DirectionResult:
    """Steepest-descent direction: the common-metric direction with B = I."""
    J = _check_jacobian(J)
    outcome = _solve_quadratic_dual(J, config)

    lam = outcome.lam
    d = -(J.T @ lam)
    theta = min(-0.5 * float(d @ d), 0.0)
    d, theta = _snap(d, theta, x_norm)
    return DirectionResult(
        d=d,
        theta=theta,
        weights=SimplexWeights(lam),
        metric_used=MetricKind.IDENTITY,
        dual_gradient=outcome.grad,
        gap=outcome.gap,
        iterations=outcome.iterations,
    )


# =============================================================================
# Per-objective metrics
# =============================================================================


class _PerObjectiveDual:
    """phi(lam) = 1/2 g^T H(lam)^-1 g with H(lam) refactorized at every call."""

    def __init__(self, J: np.ndarray, family: list[np.ndarray]):
        self.J = J
        self.family = family

    def direction(self, lam: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        H = np.tensordot(lam, self.family, axes=1)
        factor = factorize_spd(0.5 * (H + H.T), "H(lambda)")
        g = self.J.T @ lam
        return -cho_solve(factor, g, check_finite=False), g

    def phi(self, lam: np.ndarray) -> float:
        d, g = self.direction(lam)
        return -0.5 * float(g @ d)

    def grad(self, lam: np.ndarray) -> np.ndarray:
        d, _ = self.direction(lam)
        return -(self.J @ d + 0.5 * np.einsum("j,ijk,k->i", d, self.family, d))

    def line_min(self, lam: np.ndarray, direction: np.ndarray, grad: np.ndarray, t_max: float) -> float:
        """Root of the (monotone) directional derivative on [0, t_max], Illinois variant of regula falsi."""
        lo, d_lo = 0.0, float(grad @ direction)
        if d_lo >= 0.0:
            return 0.0
        slope0 = -d_lo
        hi = t_max
        d_hi = float(self.grad(lam + hi * direction) @ direction)
        if d_hi <= 0.0:
            return t_max
        side = 0
        t = hi
        for _ in range(_LINE_MAX_ITERS):
            t = (lo * d_hi - hi * d_lo) / (d_hi - d_lo)
            if not lo < t < hi:
                t = 0.5 * (lo + hi)
            d_t = float(self.grad(lam + t * direction) @ direction)
            if abs(d_t) <= 1e-14 * slope0 or hi - lo <= 1e-16 * max(1.0, t_max):
                break
            if d_t < 0.0:
                lo, d_lo = t, d_t
                if side == -1:
                    d_hi *= 0.5
                side = -1
            else:
                hi, d_hi = t, d_t
                if side == 1:
                    d_lo *= 0.5
                side = 1
        return t


def solve_dual_per_objective(
    J: np.ndarray,
    B_family: list[MetricMatrix],
    config: DualSolverConfig,
    x_norm: float = 0.0,
) -> DirectionResult:
    """Direction of the per-objective subproblem: d = -H(lam)^-1 g(lam)."""
    J = _check_jacobian(J)
    m, n = J.shape
    if len(B_family) != m:
        raise ValueError(f"Expected {m} metrics, got {len(B_family)}")
    family = []
    for i, M in enumerate(B_family):
        B = np.asarray(M.B, dtype=float)
        if B.shape != (n, n):
            raise ValueError(f"Metric {i} has shape {B.shape}, expected {(n, n)}")
        factorize_spd(B, f"B_{i}")
        family.append(B)
    family_arr = np.array(family)
    dual = _PerObjectiveDual(J, family_arr)

    vertex_values = np.array([dual.phi(SimplexWeights.vertex(m, i).values) for i in range(m)])
    scale = max(1.0, 2.0 * float(np.max(vertex_values)))
    tol = config.tol * scale
    lam0 = np.zeros(m)
    lam0[int(np.argmin(vertex_values))] = 1.0

    if config.strategy == DualStrategy.PROJECTED_GRADIENT:
        step0 = 1.0 / scale
        outcome = _projected_gradient(lam0, dual.phi, dual.grad, step0, tol, config.max_iters)
    else:
        if config.strategy == DualStrategy.CLOSED_FORM_M2:
            logger.debug("Closed form does not apply to per-objective metrics; using Frank-Wolfe")
        outcome = _frank_wolfe(lam0, dual.grad, dual.line_min, tol, config.max_iters)

    if outcome.gap > tol:
        raise DualNonConvergence(outcome.gap, outcome.iterations)

    lam = outcome.lam
    d, g = dual.direction(lam)
    theta = min(0.5 * float(g @ d), 0.0)
    d, theta = _snap(d, theta, x_norm)
    return DirectionResult(
        d=d,
        theta=theta,
        weights=SimplexWeights(lam),
        metric_used=MetricKind.PER_OBJECTIVE,
        dual_gradient=outcome.grad,
        gap=outcome.gap,
        iterations=outcome.iterations,
    )
