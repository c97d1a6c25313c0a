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

from pathlib import Path

from pydantic import BaseModel, Field, field_validator

from constants.problem_catalog import get_all_descriptors, get_descriptor_by_id
from constants.solver_defaults import (
    DEFAULT_EPSILON,
    DEFAULT_JOBS,
    DEFAULT_MAX_ITERS,
    DEFAULT_SEED,
    DEFAULT_STARTS,
)
from models.solver import DualSolverConfig, InitialMetric, LineSearchConfig, SolverConfig, SolverMethod


def _all_problem_ids() -> list[str]:
    return [d.id for d in get_all_descriptors()]


def _all_methods() -> list[SolverMethod]:
    return list(SolverMethod)


class ExperimentConfig(BaseModel):
    """A batch of runs: every method on every problem from shared starting points."""

    problems: list[str] = Field(default_factory=_all_problem_ids, min_length=1, description="Problem ids")
    methods: list[SolverMethod] = Field(default_factory=_all_methods, min_length=1, description="Methods to compare")
    starts: int = Field(default=DEFAULT_STARTS, ge=1, description="Starting points per problem")
    seed: int = Field(default=DEFAULT_SEED, description="Seed of the start sampler")
    epsilon: float = Field(default=DEFAULT_EPSILON, gt=0.0, description="Criticality tolerance")
    max_iters: int = Field(default=DEFAULT_MAX_ITERS, ge=0, description="Iteration budget per run")
    line_search: LineSearchConfig = Field(default_factory=LineSearchConfig)
    dual: DualSolverConfig = Field(default_factory=DualSolverConfig)
    b0: InitialMetric = Field(default=InitialMetric.IDENTITY, description="Initial metric of the quasi-Newton methods")
    out_dir: Path | None = Field(default=None, description="Directory for runs.jsonl, aggregate.csv and summary.json")
    jobs: int = Field(default=DEFAULT_JOBS, ge=1, description="Worker processes")
    keep_trace: bool = Field(default=False, description="Store per-iteration telemetry in the run records")
    check_invariants: bool = Field(default=False, description="Verify update and descent invariants in every run")

    @field_validator("problems")
    @classmethod
    def _known_problems(cls, value: list[str]) -> list[str]:
        unknown = [p for p in value if get_descriptor_by_id(p) is None]
        if unknown:
            raise ValueError(f"Unknown problem ids: {', '.join(unknown)}")
        if len(set(value)) != len(value):
            raise ValueError("Problem ids must be unique")
        return value

    @field_validator("methods")
    @classmethod
    def _unique_methods(cls, value: list[SolverMethod]) -> list[SolverMethod]:
        if len(set(value)) != len(value):
            raise ValueError("Methods must be unique")
        return value

    def solver_config(self, method: SolverMethod) -> SolverConfig:
        return SolverConfig(
            method=method,
            epsilon=self.epsilon,
            max_iters=self.max_iters,
            line_search=self.line_search,
            dual=self.dual,
            b0=self.b0,
            keep_trace=self.keep_trace,
            check_invariants=self.check_invariants,
        )


class AggregateRow(BaseModel):
    """One line of aggregate.csv; means are taken over all runs, failed ones included."""

    problem: str = Field(..., description="Problem id")
    method: SolverMethod = Field(..., description="Method")
    mean_iter: float = Field(..., ge=0.0, description="Mean number of iterations")
    mean_time_ms: float = Field(..., ge=0.0, description="Mean wall time in milliseconds")
    mean_feval: float = Field(..., ge=0.0, description="Mean number of objective-vector evaluations")
    nf: int = Field(..., ge=0, description="Runs that did not converge")


class MethodSummary(BaseModel):
    """Extended statistics of one (problem, method) pair for summary.json."""

    problem: str
    method: SolverMethod
    runs: int = Field(..., ge=0)
    converged: int = Field(..., ge=0)
    nf: int = Field(..., ge=0)
    mean_iter: float
    mean_time_ms: float
    mean_feval: float
    mean_geval: float
    converged_mean_iter: float | None = Field(default=None, description="Mean over converged runs only")
    converged_mean_time_ms: float | None = None
    converged_mean_feval: float | None = None
    failures: dict[str, int] = Field(default_factory=dict, description="Failed runs per stopping reason")
    metric_updates: int = Field(default=0, ge=0)
    metric_resets: int = Field(default=0, ge=0)
    skipped_updates: int = Field(default=0, ge=0)
    reset_fraction: float | None = Field(default=None, description="Identity resets per attempted update")
    unit_step_fraction: float | None = Field(default=None, description="Share of iterations that accepted alpha = 1")
    invariant_violations: int = Field(default=0, ge=0)


class ExperimentSummary(BaseModel):
    """Contents of summary.json."""

    starts: int
    seed: int
    epsilon: float
    max_iters: int
    feval_unit: str
    entries: list[MethodSummary] = Field(default_factory=list)


class FrontSidecar(BaseModel):
    """Metadata written next to a Pareto front point cloud."""

    problem: str
    method: SolverMethod
    m: int = Field(..., ge=1, description="Number of objective columns")
    starts: int = Field(..., ge=1)
    seed: int
    epsilon: float
    max_iters: int
    points: int = Field(..., ge=0, description="Rows in the CSV (converged runs)")
    nf: int = Field(..., ge=0, description="Runs left out of the CSV")
    failures: dict[str, int] = Field(default_factory=dict)
    max_sd_norm: float | None = Field(default=None, description="Largest steepest-descent norm over the written points")
    uncertified: int = Field(default=0, ge=0, description="Written points whose steepest-descent norm exceeds the certificate tolerance")
    points_file: str = Field(..., description="Name of the CSV file")
