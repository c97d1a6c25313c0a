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

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from models.solver import SolverConfig, SolverMethod


class FailureReason(str, Enum):
    """Why a run stopped."""

    CONVERGED = "converged"
    MAX_ITERS = "max_iters"
    LINE_SEARCH = "line_search"
    NON_FINITE = "non_finite"
    DUAL_NON_CONVERGENCE = "dual_non_convergence"
    DEGENERATE_METRIC = "degenerate_metric"
    DESCENT_VIOLATION = "descent_violation"


class IterationTrace(BaseModel):
    """Telemetry of one accepted iteration."""

    k: int = Field(..., ge=0, description="Iteration index")
    x: list[float] = Field(..., description="Iterate x_k")
    f: list[float] = Field(..., description="Objective vector at x_k")
    theta: float = Field(..., description="Optimal value of the direction subproblem at x_k")
    d_norm: float = Field(..., ge=0.0, description="Euclidean norm of d_k")
    directional_derivative: float = Field(..., description="max_i <grad f_i(x_k), d_k>")
    d_metric_norm2: float | None = Field(default=None, description="d_k^T B_k d_k for common-metric methods")
    weights: list[float] = Field(..., description="Dual weights behind d_k")
    alpha: float = Field(..., gt=0.0, description="Accepted step size")
    curvature: float | None = Field(default=None, description="gamma^T s (mfqnmo) or y^T s (mqnmo)")
    f_decrease: float | None = Field(default=None, description="sum_i lam_i (f_i(x_k) - f_i(x_k+1))")
    metric_reset: bool = Field(default=False, description="Whether the metric was reset to the identity")


class RunRecord(BaseModel):
    """Outcome and telemetry of a single solver run."""

    model_config = ConfigDict(populate_by_name=True)

    problem: str = Field(..., description="Problem identifier")
    method: SolverMethod = Field(..., description="Iteration scheme")
    start_index: int | None = Field(default=None, description="Index of the starting point in the experiment")
    x0: list[float] = Field(..., description="Starting point")
    converged: bool = Field(..., description="Whether |theta| dropped below epsilon")
    reason: FailureReason = Field(..., description="Stopping reason")
    iterations: int = Field(..., ge=0, description="Number of accepted steps")
    f_evals: int = Field(..., ge=0, alias="fevals", description="Full objective-vector evaluations")
    g_evals: int = Field(..., ge=0, alias="gevals", description="Full Jacobian evaluations")
    time_ms: float = Field(..., ge=0.0, description="Wall time of the iteration loop in milliseconds")
    final_x: list[float] = Field(..., description="Last iterate")
    final_f: list[float] | None = Field(default=None, description="Objective vector at the last iterate")
    final_theta: float | None = Field(default=None, description="Subproblem optimal value at the last iterate")
    final_sd_norm: float | None = Field(default=None, description="Steepest-descent direction norm at the last iterate")
    metric_updates: int = Field(default=0, ge=0, description="Metric updates applied")
    metric_resets: int = Field(default=0, ge=0, description="Identity resets after curvature breakdown")
    skipped_updates: int = Field(default=0, ge=0, description="Updates skipped for lack of curvature")
    unit_steps: int = Field(default=0, ge=0, description="Iterations that accepted alpha = 1")
    invariant_violations: list[str] = Field(default_factory=list, description="Failed in-loop checks")
    error_code: str | None = Field(default=None, description="Error code of a failed run")
    trace: list[IterationTrace] | None = Field(default=None, description="Per-iteration telemetry")

    @property
    def wall_time(self) -> float:
        """Wall time in seconds."""
        return self.time_ms / 1000.0


class RunRequest(BaseModel):
    """Request body of a single HTTP-triggered run."""

    problem: str = Field(..., description="Problem id")
    x0: list[float] | None = Field(default=None, description="Starting point; sampled from the box if omitted")
    seed: int | None = Field(default=None, description="Sampling seed when x0 is omitted")
    config: SolverConfig = Field(default_factory=SolverConfig)


class CriticalityRequest(BaseModel):
    problem: str = Field(..., description="Problem id")
    x: list[float] = Field(..., min_length=1, description="Point to certify")


class CriticalityResponse(BaseModel):
    """Steepest-descent criticality pair at a point."""

    theta_sd: float | None = Field(..., description="Optimal value of the steepest-descent subproblem")
    d_sd_norm: float | None = Field(..., description="Norm of the steepest-descent direction")


class ErrorResponse(BaseModel):
    """Standard error response."""

    error_code: str = Field(..., description="The error code")
