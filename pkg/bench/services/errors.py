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

"""Exceptions raised by the numerical services."""

from error_codes import ErrorCode


class BenchError(Exception):
    """Base exception for all ParetoForge service operations."""

    def __init__(self, error_code: ErrorCode, message: str = ""):
        self.error_code = error_code
        self.message = message
        super().__init__(message)


class UnknownProblem(BenchError):
    """Raised when a problem id is not in the registry."""

    def __init__(self, problem_id: str):
        self.problem_id = problem_id
        super().__init__(ErrorCode.PROBLEM_UNKNOWN, f"Unknown problem: {problem_id}")


class GradientMismatch(BenchError):
    """Raised when analytic gradients disagree with central differences."""

    def __init__(self, problem: str, point, objective_index: int, relative_error: float):
        self.problem = problem
        self.point = point
        self.objective_index = objective_index
        self.relative_error = relative_error
        super().__init__(
            ErrorCode.PROBLEM_GRADIENT_MISMATCH,
            f"Gradient of objective {objective_index} of {problem} is off by "
            f"{relative_error:.3e} (relative) at {list(point)}",
        )


class NonFiniteEvaluation(BenchError):
    """Raised when an objective or gradient evaluation is not finite."""

    def __init__(self, problem: str, point, what: str = "objectives"):
        self.problem = problem
        self.point = point
        super().__init__(ErrorCode.EVAL_NON_FINITE, f"Non-finite {what} of {problem} at {list(point)}")


class DegenerateMetric(BenchError):
    """Raised when a metric matrix is not symmetric positive definite."""

    def __init__(self, message: str):
        super().__init__(ErrorCode.DUAL_DEGENERATE_METRIC, message)


class DualNonConvergence(BenchError):
    """Raised when a dual solver does not reach its duality-gap tolerance."""

    def __init__(self, gap: float, iterations: int):
        self.gap = gap
        self.iterations = iterations
        super().__init__(
            ErrorCode.DUAL_NON_CONVERGENCE,
            f"Dual solver stopped with gap {gap:.3e} after {iterations} iterations",
        )


class LineSearchFailure(BenchError):
    """Raised when no step satisfying both Wolfe conditions was found."""

    def __init__(self, trials: int, alpha: float):
        self.trials = trials
        self.alpha = alpha
        super().__init__(
            ErrorCode.LINESEARCH_FAILED,
            f"Wolfe search failed after {trials} trials (last alpha {alpha:.3e})",
        )


class DescentViolation(BenchError):
    """Raised when the line search is started along a non-descent direction."""

    def __init__(self, directional_derivative: float):
        self.directional_derivative = directional_derivative
        super().__init__(
            ErrorCode.LINESEARCH_DESCENT_VIOLATION,
            f"Direction is not a descent direction (D(x,d) = {directional_derivative:.3e})",
        )


class CurvatureBreakdown(BenchError):
    """Raised when the curvature product of an update is below the floor."""

    def __init__(self, curvature: float, floor: float):
        self.curvature = curvature
        self.floor = floor
        super().__init__(
            ErrorCode.METRIC_CURVATURE_BREAKDOWN,
            f"Curvature {curvature:.3e} is below the floor {floor:.3e}",
        )


class ZeroStep(BenchError):
    """Raised when update ingredients are requested for a zero step."""

    def __init__(self):
        super().__init__(ErrorCode.METRIC_ZERO_STEP, "Step s = x_new - x_old is zero")


class ExperimentIOError(BenchError):
    """Raised when experiment output cannot be written or read."""

    def __init__(self, path, reason: str):
        self.path = path
        super().__init__(ErrorCode.EXPERIMENT_IO_FAILED, f"Cannot access {path}: {reason}")
