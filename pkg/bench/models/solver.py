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

from pydantic import BaseModel, Field, model_validator

from constants.solver_defaults import (
    DEFAULT_ALPHA_INIT,
    DEFAULT_ALPHA_MAX,
    DEFAULT_DUAL_MAX_ITERS,
    DEFAULT_DUAL_STRATEGY,
    DEFAULT_DUAL_TOL,
    DEFAULT_EPSILON,
    DEFAULT_EXPANSION_FACTOR,
    DEFAULT_MAX_ITERS,
    DEFAULT_MAX_TRIALS,
    DEFAULT_REFRESH_EVERY,
    DEFAULT_SIGMA1,
    DEFAULT_SIGMA2,
)


class SolverMethod(str, Enum):
    """Iteration scheme of a run."""

    MFQNMO = "mfqnmo"
    MQNMO = "mqnmo"
    QNMO = "qnmo"
    SD = "sd"


class DualStrategy(str, Enum):
    """Algorithm used for the simplex-constrained dual subproblem."""

    FRANK_WOLFE = "frank_wolfe"
    PROJECTED_GRADIENT = "projected_gradient"
    CLOSED_FORM_M2 = "closed_form_m2"


class InitialMetric(str, Enum):
    """Choice of B_0."""

    IDENTITY = "identity"
    # tau I with tau = gamma^T gamma / gamma^T s, set at the first update after a start or reset
    SCALED_IDENTITY = "scaled_identity"


class LineSearchConfig(BaseModel):
    """Parameters of the vector-valued Wolfe line search."""

    sigma1: float = Field(default=DEFAULT_SIGMA1, gt=0.0, lt=1.0, description="Sufficient decrease constant")
    sigma2: float = Field(default=DEFAULT_SIGMA2, gt=0.0, lt=1.0, description="Curvature constant")
    alpha_init: float = Field(default=DEFAULT_ALPHA_INIT, gt=0.0, description="First trial step")
    alpha_max: float = Field(default=DEFAULT_ALPHA_MAX, gt=0.0, description="Upper cap for expansion")
    max_trials: int = Field(default=DEFAULT_MAX_TRIALS, ge=1, description="Maximum number of trial points")
    expansion: float = Field(default=DEFAULT_EXPANSION_FACTOR, gt=1.0, description="Growth factor while unbracketed")

    @model_validator(mode="after")
    def _check_ordering(self) -> "LineSearchConfig":
        if not self.sigma1 < self.sigma2:
            raise ValueError("sigma1 must be smaller than sigma2")
        if self.alpha_init > self.alpha_max:
            raise ValueError("alpha_init must not exceed alpha_max")
        return self


class DualSolverConfig(BaseModel):
    """Parameters of the dual subproblem solvers."""

    max_iters: int = Field(default=DEFAULT_DUAL_MAX_ITERS, ge=1, description="Maximum inner iterations")
    tol: float = Field(default=DEFAULT_DUAL_TOL, gt=0.0, description="Duality-gap tolerance")
    strategy: DualStrategy = Field(default=DualStrategy(DEFAULT_DUAL_STRATEGY), description="Dual algorithm")
    m2_fast_path: bool = Field(
        default=False,
        description="Use the closed form for m = 2 common-metric problems regardless of strategy",
    )


class SolverConfig(BaseModel):
    """Configuration of a single solver run."""

    method: SolverMethod = Field(default=SolverMethod.MFQNMO, description="Iteration scheme")
    epsilon: float = Field(default=DEFAULT_EPSILON, gt=0.0, description="Criticality tolerance on |theta|")
    max_iters: int = Field(default=DEFAULT_MAX_ITERS, ge=0, description="Iteration budget")
    line_search: LineSearchConfig = Field(default_factory=LineSearchConfig)
    dual: DualSolverConfig = Field(default_factory=DualSolverConfig)
    b0: InitialMetric = Field(default=InitialMetric.IDENTITY, description="Initial metric")
    refresh_every: int = Field(
        default=DEFAULT_REFRESH_EVERY,
        ge=1,
        description="Recompute the stored inverse from a factorization every N updates",
    )
    keep_trace: bool = Field(default=False, description="Record per-iteration telemetry")
    check_invariants: bool = Field(default=False, description="Verify update and descent invariants each iteration")
