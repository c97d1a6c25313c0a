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

from models.experiment import AggregateRow, ExperimentConfig, ExperimentSummary, FrontSidecar, MethodSummary
from models.problem import GradientCheckReport, ProblemInfo
from models.run import (
    CriticalityRequest,
    CriticalityResponse,
    ErrorResponse,
    FailureReason,
    IterationTrace,
    RunRecord,
    RunRequest,
)
from models.solver import (
    DualSolverConfig,
    DualStrategy,
    InitialMetric,
    LineSearchConfig,
    SolverConfig,
    SolverMethod,
)

__all__ = [
    "AggregateRow",
    "CriticalityRequest",
    "CriticalityResponse",
    "DualSolverConfig",
    "DualStrategy",
    "ErrorResponse",
    "ExperimentConfig",
    "ExperimentSummary",
    "FailureReason",
    "FrontSidecar",
    "GradientCheckReport",
    "InitialMetric",
    "IterationTrace",
    "LineSearchConfig",
    "MethodSummary",
    "ProblemInfo",
    "RunRecord",
    "RunRequest",
    "SolverConfig",
    "SolverMethod",
]
