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

"""Default values for solver, line search and experiment parameters."""

# =============================================================================
# Solver Parameters
# =============================================================================

DEFAULT_EPSILON = 1e-8
DEFAULT_MAX_ITERS = 500
DEFAULT_METHOD = "mfqnmo"

# =============================================================================
# Wolfe Line Search Parameters
# =============================================================================

DEFAULT_SIGMA1 = 1e-4
DEFAULT_SIGMA2 = 0.1
DEFAULT_ALPHA_INIT = 1.0
DEFAULT_ALPHA_MAX = 1e10
DEFAULT_MAX_TRIALS = 100
DEFAULT_EXPANSION_FACTOR = 2.0

# =============================================================================
# Dual Subproblem Parameters
# =============================================================================

DEFAULT_DUAL_MAX_ITERS = 500
DEFAULT_DUAL_TOL = 1e-12
DEFAULT_DUAL_STRATEGY = "frank_wolfe"

# Directions at or below this norm (times 1 + |x|) are snapped to zero
DIRECTION_ZERO_TOL = 1e-14

# =============================================================================
# Metric Update Parameters
# =============================================================================

CURVATURE_FLOOR = 1e-12
SYMMETRY_TOL = 1e-10
INVERSE_PAIR_TOL = 1e-8
SECANT_TOL = 1e-8
DEFAULT_REFRESH_EVERY = 50

# =============================================================================
# Gradient Check Parameters
# =============================================================================

GRADIENT_CHECK_STEP = 1e-6
GRADIENT_CHECK_TOL = 1e-5
DEFAULT_GRADIENT_SAMPLES = 100

# =============================================================================
# Experiment Parameters
# =============================================================================

DEFAULT_STARTS = 200
DEFAULT_SEED = 42
DEFAULT_JOBS = 1
CRITICALITY_CERT_TOL = 1e-3

AGGREGATE_CSV_HEADER = ["problem", "method", "mean_iter", "mean_time_ms", "mean_feval", "nf"]
RUNS_FILENAME = "runs.jsonl"
AGGREGATE_FILENAME = "aggregate.csv"
SUMMARY_FILENAME = "summary.json"

# Unit of the feval column, stated in every summary
FEVAL_UNIT = "one evaluation of the full objective vector (all m components)"
