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

"""Iteration loops of the four methods (mfqnmo, mqnmo, qnmo, sd)."""

import logging
import time

import numpy as np

from constants.solver_defaults import CRITICALITY_CERT_TOL, INVERSE_PAIR_TOL, SECANT_TOL, SYMMETRY_TOL
from models.run import FailureReason, IterationTrace, RunRecord
from models.solver import DualSolverConfig, InitialMetric, SolverConfig, SolverMethod
from services.errors import (
    BenchError,
    CurvatureBreakdown,
    DegenerateMetric,
    DescentViolation,
    DualNonConvergence,
    LineSearchFailure,
    NonFiniteEvaluation,
    ZeroStep,
)
from services.hessian_approx import (
    MetricMatrix,
    UpdateIngredients,
    build_ingredients,
    dfp_update,
    is_positive_definite,
    mfbfgs_update,
    per_objective_bfgs_update,
)
from services.mop_core import EvalCounter, MopProblem, d_operator, eval_f, eval_jacobian
from services.simplex_dual import (
    DirectionResult,
    solve_dual_common,
    solve_dual_per_objective,
    solve_dual_sd,
)
from services.wolfe_linesearch import wolfe_search, wolfe_violation

logger = logging.getLogger(__name__)

# Slack of the direction-quality check D(x, d) <= -||d||_B^2
DIRECTION_QUALITY_SLACK = 1e-8

_FAILURE_REASONS: dict[type[BenchError], FailureReason] = {
    NonFiniteEvaluation: FailureReason.NON_FINITE,
    LineSearchFailure: FailureReason.LINE_SEARCH,
    DualNonConvergence: FailureReason.DUAL_NON_CONVERGENCE,
    DegenerateMetric: FailureReason.DEGENERATE_METRIC,
    DescentViolation: FailureReason.DESCENT_VIOLATION,
}


def failure_reason(error: BenchError) -> FailureReason | None:
    """Reason recorded for an error that ends a run; None for errors no run should end with."""
    for cls in type(error).__mro__:
        if cls in _FAILURE_REASONS:
            return _FAILURE_REASONS[cls]
    return None


def _relative_gap(a: np.ndarray, b: np.ndarray) -> float:
    scale = max(float(np.linalg.norm(a)), float(np.linalg.norm(b)), np.finfo(float).tiny)
    return float(np.linalg.norm(a - b)) / scale


def _scaled_initial(M: MetricMatrix, s: np.ndarray, pair: np.ndarray) -> MetricMatrix:
    """tau I with tau = pair^T pair / pair^T s, or M itself when the curvature is not positive."""
    curvature = float(pair @ s)
    if not curvature > 0.0:
        return M
    try:
        return MetricMatrix.scaled_identity(M.n, float(pair @ pair) / curvature)
    except DegenerateMetric:
        return M


class SolverRun:
    """A single run of one method from one starting point."""

    def __init__(
        self,
        problem: MopProblem,
        x0: np.ndarray,
        config: SolverConfig,
        start_index: int | None = None,
    ):
        x0 = np.asarray(x0, dtype=float).ravel()
        if x0.shape != (problem.n,):
            raise ValueError(f"{problem.name}: x0 must have length {problem.n}, got {x0.size}")
        if not np.all(np.isfinite(x0)):
            raise ValueError(f"{problem.name}: x0 must be finite")

        self.problem = problem
        self.x0 = x0
        self.config = config
        self.start_index = start_index
        self.tag = f"{problem.name}/{config.method.value}" + ("" if start_index is None else f"#{start_index}")

        self.counter = EvalCounter()
        self.metric_updates = 0
        self.metric_resets = 0
        self.skipped_updates = 0
        self.unit_steps = 0
        self.violations: list[str] = []
        self.trace: list[IterationTrace] | None = [] if config.keep_trace else None
        self._start_metrics()

    # -------------------------------------------------------------------------
    # Direction and metric update per method
    # -------------------------------------------------------------------------

    def _start_metrics(self) -> None:
        n, m = self.problem.n, self.problem.m
        self.metric = MetricMatrix.identity(n)
        self.family = [MetricMatrix.identity(n) for _ in range(m)]
        # members still waiting for their b0 scaling
        scale = self.config.b0 == InitialMetric.SCALED_IDENTITY
        self._unscaled_metric = scale
        self._unscaled_family = [scale] * m

    def reset_metric(self, k: int, why: str) -> None:
        """Back to B_0 for the common metric and every per-objective metric."""
        logger.info(f"[{self.tag}] k={k}: {why}; resetting metric to the identity")
        self._start_metrics()
        self.metric_resets += 1

    def direction(self, J: np.ndarray, x: np.ndarray) -> DirectionResult:
        method = self.config.method
        dual: DualSolverConfig = self.config.dual
        x_norm = float(np.linalg.norm(x))
        if method == SolverMethod.SD:
            return solve_dual_sd(J, dual, x_norm)
        if method == SolverMethod.QNMO:
            return solve_dual_per_objective(J, self.family, dual, x_norm)
        return solve_dual_common(J, self.metric.B_inv, dual, x_norm)

    def certified(self, J: np.ndarray, x: np.ndarray) -> bool:
        """||d_SD(x)|| <= CRITICALITY_CERT_TOL, computed from the Jacobian already at hand."""
        if self.config.method == SolverMethod.SD:
            return True
        sd = solve_dual_sd(J, self.config.dual, float(np.linalg.norm(x)))
        return float(np.linalg.norm(sd.d)) <= CRITICALITY_CERT_TOL

    def _update_family(self, k: int, s: np.ndarray, mu: np.ndarray) -> bool:
        family = list(self.family)
        for i, unscaled in enumerate(self._unscaled_family):
            if unscaled:
                family[i] = _scaled_initial(family[i], s, mu[i])
                self._unscaled_family[i] = family[i] is self.family[i]

        reset = False
        updated = per_objective_bfgs_update(family, s, mu)
        for i, (old, new) in enumerate(zip(family, updated)):
            if new is old:
                self.skipped_updates += 1
                continue
            try:
                updated[i] = new.safeguarded()
                self.metric_updates += 1
            except DegenerateMetric as e:
                logger.info(f"[{self.tag}] k={k}: B_{i} rejected ({e.message}); resetting it to the identity")
                updated[i] = MetricMatrix.identity(self.problem.n)
                self._unscaled_family[i] = self.config.b0 == InitialMetric.SCALED_IDENTITY
                self.metric_resets += 1
                reset = True
        self.family = updated
        return reset

    def update_metric(
        self,
        k: int,
        x: np.ndarray,
        x_new: np.ndarray,
        J: np.ndarray,
        J_new: np.ndarray,
        f: np.ndarray,
        f_new: np.ndarray,
        result: DirectionResult,
    ) -> tuple[float | None, float | None, bool]:
        """Apply the method's update. Returns (curvature, f_decrease, reset).

        Every accepted metric is positive definite with an inverse within
        INVERSE_PAIR_TOL of B^-1; otherwise the metric goes back to B_0.
        """
        method = self.config.method
        if method == SolverMethod.SD:
            return None, None, False

        if method == SolverMethod.QNMO:
            s = x_new - x
            if not np.any(s):
                self.skipped_updates += self.problem.m
                return None, None, False
            return None, None, self._update_family(k, s, np.atleast_2d(J_new - J))

        try:
            ing = build_ingredients(x, x_new, J, J_new, f, f_new, result.weights)
        except ZeroStep:
            self.skipped_updates += 1
            return None, None, False

        pair = ing.gamma if method == SolverMethod.MFQNMO else ing.y
        curvature = float(pair @ ing.s)
        if self._unscaled_metric:
            scaled = _scaled_initial(self.metric, ing.s, pair)
            self._unscaled_metric = scaled is self.metric
            self.metric = scaled

        reset = False
        try:
            if method == SolverMethod.MFQNMO:
                candidate = mfbfgs_update(self.metric, ing)
            else:
                candidate = dfp_update(self.metric, ing.s, ing.y)
            self.metric = candidate.safeguarded()
            self.metric_updates += 1
            if self.metric_updates % self.config.refresh_every == 0:
                self.metric = self.metric.refreshed()
        except CurvatureBreakdown as e:
            if method == SolverMethod.MFQNMO:
                self.reset_metric(k, e.message)
                reset = True
            else:
                logger.debug(f"[{self.tag}] {e.message}; skipping update")
                self.skipped_updates += 1
        except DegenerateMetric as e:
            self.reset_metric(k, f"updated metric rejected ({e.message})")
            reset = True

        if self.config.check_invariants and method == SolverMethod.MFQNMO:
            self._check_update(k, ing, reset)
        return curvature, ing.f_decrease, reset

    # -------------------------------------------------------------------------
    # Invariant checks (config.check_invariants)
    # -------------------------------------------------------------------------

    def _violation(self, k: int, message: str) -> None:
        text = f"k={k}: {message}"
        logger.warning(f"[{self.tag}] Invariant violated at {text}")
        self.violations.append(text)

    def _check_update(self, k: int, ing: UpdateIngredients, reset: bool) -> None:
        s_norm2 = float(ing.s @ ing.s)
        bound = ing.f_decrease * s_norm2
        roundoff = 1e-10 * (abs(float(ing.y @ ing.s)) + abs(ing.m) * s_norm2)
        if ing.curvature < bound - roundoff:
            self._violation(k, f"gamma^T s = {ing.curvature!r} below f-decrease bound {bound!r}")
        if reset:
            return
        M = self.metric
        if _relative_gap(M.B @ ing.s, ing.gamma) > SECANT_TOL:
            self._violation(k, "secant identity B s = gamma fails")
        if M.inverse_pair_error() > INVERSE_PAIR_TOL:
            self._violation(k, f"inverse pair error {M.inverse_pair_error():.3e}")
        if M.symmetry_error() > SYMMETRY_TOL * float(np.max(np.abs(M.B))):
            self._violation(k, "metric is not symmetric")
        if not is_positive_definite(M.B):
            self._violation(k, "metric is not positive definite")

    def _check_step(
        self,
        k: int,
        x: np.ndarray,
        d: np.ndarray,
        D: float,
        dBd: float | None,
        alpha: float,
        f: np.ndarray,
        f_new: np.ndarray,
    ) -> None:
        if dBd is not None and D > -dBd + DIRECTION_QUALITY_SLACK * (1.0 + dBd):
            self._violation(k, f"direction quality D = {D!r} > -||d||_B^2 = {-dBd!r}")
        if not np.all(f_new < f):
            self._violation(k, "objectives did not all decrease")
        message = wolfe_violation(self.problem, x, d, alpha, self.config.line_search)
        if message is not None:
            self._violation(k, message)

    # -------------------------------------------------------------------------
    # Main loop
    # -------------------------------------------------------------------------

    def execute(self) -> RunRecord:
        config = self.config
        x = self.x0.copy()
        f: np.ndarray | None = None
        theta: float | None = None
        reason = FailureReason.MAX_ITERS
        error_code: str | None = None
        k = 0

        started = time.perf_counter()
        try:
            f = eval_f(self.problem, x, self.counter)
            J = eval_jacobian(self.problem, x, self.counter)
            while True:
                result = self.direction(J, x)
                certificate_reset = False
                if abs(result.theta) < config.epsilon and not self.certified(J, x):
                    self.reset_metric(k, f"theta = {result.theta:.3e} but the steepest-descent direction is not small")
                    certificate_reset = True
                    result = self.direction(J, x)
                theta = result.theta
                if abs(theta) < config.epsilon:
                    reason = FailureReason.CONVERGED
                    break
                if k >= config.max_iters:
                    reason = FailureReason.MAX_ITERS
                    break

                d = result.d
                D = d_operator(J, d)
                dBd = None if config.method == SolverMethod.QNMO else float(d @ self.metric.B @ d)

                ls = wolfe_search(self.problem, x, d, f, D, config.line_search, self.counter)
                if ls.alpha == 1.0:
                    self.unit_steps += 1
                if config.check_invariants:
                    self._check_step(k, x, d, D, dBd, ls.alpha, f, ls.new_f)

                curvature, f_decrease, reset = self.update_metric(k, x, ls.new_x, J, ls.new_J, f, ls.new_f, result)
                if self.trace is not None:
                    self.trace.append(
                        IterationTrace(
                            k=k,
                            x=x.tolist(),
                            f=f.tolist(),
                            theta=theta,
                            d_norm=float(np.linalg.norm(d)),
                            directional_derivative=D,
                            d_metric_norm2=dBd,
                            weights=result.weights.tolist(),
                            alpha=ls.alpha,
                            curvature=curvature,
                            f_decrease=f_decrease,
                            metric_reset=reset or certificate_reset,
                        )
                    )
                logger.debug(f"[{self.tag}] k={k} theta={theta:.3e} alpha={ls.alpha:.3e} f={f.tolist()}")

                x, f, J = ls.new_x, ls.new_f, ls.new_J
                k += 1
        except BenchError as e:
            reason = failure_reason(e)
            if reason is None:
                raise
            error_code = e.error_code.value
            logger.warning(f"[{self.tag}] Run failed at k={k}: {e.message}")
        elapsed_ms = (time.perf_counter() - started) * 1000.0

        converged = reason == FailureReason.CONVERGED
        _, sd_norm = criticality_report(self.problem, x)
        if converged:
            logger.debug(f"[{self.tag}] Converged in {k} iterations")

        return RunRecord(
            problem=self.problem.name,
            method=config.method,
            start_index=self.start_index,
            x0=self.x0.tolist(),
            converged=converged,
            reason=reason,
            iterations=k,
            f_evals=self.counter.f_evals,
            g_evals=self.counter.g_evals,
            time_ms=elapsed_ms,
            final_x=x.tolist(),
            final_f=None if f is None else f.tolist(),
            final_theta=theta,
            final_sd_norm=sd_norm,
            metric_updates=self.metric_updates,
            metric_resets=self.metric_resets,
            skipped_updates=self.skipped_updates,
            unit_steps=self.unit_steps,
            invariant_violations=self.violations,
            error_code=error_code,
            trace=self.trace,
        )


def solve(
    problem: MopProblem,
    x0: np.ndarray,
    config: SolverConfig | None = None,
    start_index: int | None = None,
) -> RunRecord:
    """Run the configured method from x0 and return its record."""
    return SolverRun(problem, x0, config or SolverConfig(), start_index).execute()


def criticality_report(problem: MopProblem, x: np.ndarray) -> tuple[float | None, float | None]:
    """Steepest-descent pair (theta_SD, ||d_SD||) at x; evaluations are not charged to any run.

    Returns (None, None) if the gradients at x are not finite or the dual
    cannot be solved there.
    """
    x = np.asarray(x, dtype=float)
    try:
        J = eval_jacobian(problem, x, EvalCounter())
        result = solve_dual_sd(J, DualSolverConfig(), float(np.linalg.norm(x)))
    except (NonFiniteEvaluation, DualNonConvergence) as e:
        logger.debug(f"No criticality report for {problem.name} at {x.tolist()}: {e.message}")
        return None, None
    return result.theta, float(np.linalg.norm(result.d))
