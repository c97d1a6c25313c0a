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

"""Step sizes satisfying the vector-valued Wolfe conditions.

For a descent direction d at x with D_x = max_i <grad f_i(x), d> < 0 the
accepted alpha satisfies

    f_i(x + alpha d) <= f_i(x) + sigma1 * alpha * D_x    for every i
    D(x + alpha d, d) >= sigma2 * D_x

The search brackets and bisects: a trial failing the first condition
becomes the upper end, a trial passing it but failing the second becomes
the lower end, and alpha grows by ``expansion`` until an upper end exists.
A non-finite trial caps every later trial. A bracket that collapses onto
a finite jump (a pole crossed between two trials) is abandoned and the
search expands again from its upper end.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from models.solver import LineSearchConfig
from services.errors import DescentViolation, LineSearchFailure, NonFiniteEvaluation
from services.mop_core import EvalCounter, MopProblem, d_operator, eval_f, eval_jacobian

logger = logging.getLogger(__name__)

# Relative width below which a bracket counts as collapsed onto a jump of the objectives
_BRACKET_COLLAPSE = 1e-10


@dataclass(frozen=True)
class LineSearchResult:
    """Accepted step together with the evaluations made at the new point."""

    alpha: float
    trials: int
    new_x: np.ndarray
    new_f: np.ndarray
    new_J: np.ndarray


def wolfe_search(
    problem: MopProblem,
    x: np.ndarray,
    d: np.ndarray,
    f_x: np.ndarray,
    D_x: float,
    config: LineSearchConfig,
    counter: EvalCounter,
) -> LineSearchResult:
    """Find alpha > 0 satisfying both Wolfe conditions along d."""
    if not D_x < 0.0:
        raise DescentViolation(D_x)

    x = np.asarray(x, dtype=float)
    d = np.asarray(d, dtype=float)
    f_x = np.asarray(f_x, dtype=float)
    decrease_slope = config.sigma1 * D_x
    curvature_bound = config.sigma2 * D_x

    lo = 0.0
    hi: float | None = None
    # smallest step with a non-finite trial; no later trial reaches it
    ceiling = math.inf
    alpha = config.alpha_init

    trials = 0
    while trials < config.max_trials:
        trials += 1
        x_t = x + alpha * d
        f_t = None
        if problem.crosses_pole(x, x_t):
            logger.debug(f"[{problem.name}] Trial at alpha={alpha:.3e} crosses a pole, backtracking below it")
        else:
            try:
                f_t = eval_f(problem, x_t, counter)
            except NonFiniteEvaluation:
                logger.debug(f"[{problem.name}] Non-finite trial at alpha={alpha:.3e}, backtracking below it")
        if f_t is None:
            sufficient = False
            ceiling = min(ceiling, alpha)
        else:
            sufficient = bool(np.all(f_t <= f_x + alpha * decrease_slope))

        if sufficient:
            try:
                J_t = eval_jacobian(problem, x_t, counter)
            except NonFiniteEvaluation:
                sufficient = False
                ceiling = min(ceiling, alpha)
            else:
                if d_operator(J_t, d) >= curvature_bound:
                    return LineSearchResult(alpha=alpha, trials=trials, new_x=x_t, new_f=f_t, new_J=J_t)
                lo = alpha

        if not sufficient:
            hi = alpha

        if hi is not None and hi < ceiling and hi - lo <= _BRACKET_COLLAPSE * hi:
            # the objectives jump at hi (a pole); go on searching past it
            logger.debug(f"[{problem.name}] Bracket collapsed at alpha={hi:.3e}, searching beyond it")
            lo = hi
            hi = None if math.isinf(ceiling) else ceiling

        if hi is None:
            if alpha >= config.alpha_max:
                break
            alpha = min(max(alpha, lo) * config.expansion, config.alpha_max)
        else:
            alpha = 0.5 * (lo + hi)

    raise LineSearchFailure(trials, alpha)


def wolfe_violation(
    problem: MopProblem,
    x: np.ndarray,
    d: np.ndarray,
    alpha: float,
    config: LineSearchConfig,
    slack: float = 1e-12,
) -> str | None:
    """Re-check both conditions at alpha with fresh evaluations.

    Returns None when both hold (up to ``slack``), otherwise a description
    of the violated condition.
    """
    counter = EvalCounter()
    x = np.asarray(x, dtype=float)
    d = np.asarray(d, dtype=float)
    D_x = d_operator(eval_jacobian(problem, x, counter), d)
    f_x = eval_f(problem, x, counter)
    x_new = x + alpha * d
    f_new = eval_f(problem, x_new, counter)
    bound = f_x + alpha * (config.sigma1 * D_x) + slack
    if not np.all(f_new <= bound):
        worst = int(np.argmax(f_new - bound))
        return f"sufficient decrease fails for objective {worst}: {f_new[worst]!r} > {bound[worst]!r}"
    D_new = d_operator(eval_jacobian(problem, x_new, counter), d)
    if not D_new >= config.sigma2 * D_x - slack:
        return f"curvature fails: {D_new!r} < {config.sigma2 * D_x!r}"
    return None
