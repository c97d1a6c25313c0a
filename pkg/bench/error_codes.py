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


class ErrorCode(str, Enum):
    """Error codes for CLI messages, run records and API responses."""

    # Problem registry errors (1xxx)
    PROBLEM_UNKNOWN = "ERR_PROBLEM_1001"
    PROBLEM_GRADIENT_MISMATCH = "ERR_PROBLEM_1002"

    # Evaluation errors (2xxx)
    EVAL_NON_FINITE = "ERR_EVAL_2001"

    # Direction subproblem errors (3xxx)
    DUAL_DEGENERATE_METRIC = "ERR_DUAL_3001"
    DUAL_NON_CONVERGENCE = "ERR_DUAL_3002"

    # Line search errors (4xxx)
    LINESEARCH_FAILED = "ERR_LINESEARCH_4001"
    LINESEARCH_DESCENT_VIOLATION = "ERR_LINESEARCH_4002"

    # Metric update errors (5xxx)
    METRIC_CURVATURE_BREAKDOWN = "ERR_METRIC_5001"
    METRIC_ZERO_STEP = "ERR_METRIC_5002"

    # Experiment errors (6xxx)
    EXPERIMENT_IO_FAILED = "ERR_EXPERIMENT_6001"
    EXPERIMENT_INVALID_CONFIG = "ERR_EXPERIMENT_6002"
