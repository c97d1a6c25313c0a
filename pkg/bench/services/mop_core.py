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

"""Core data model for multiobjective problems and evaluation bookkeeping."""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from constants.solver_defaults import GRADIENT_CHECK_STEP, GRADIENT_CHECK_TOL
from models.problem import GradientCheckReport
from services.errors import GradientMismatch, NonFiniteEvaluation

logger = logging.getLogger(__name__)

Objective = Callable[[np.ndarray], float]
Gradient = Callable[[np.ndarray], np.ndarray]

SIMPLEX_SUM_TOL = 1e-12


@dataclass(frozen=True)
class MopProblem:
    """An m-vector of smooth objectives with analytic gradients on R^n.

    The box is only used to sample starting points and gradient-check
    points; the solvers never project onto it. ``poles`` lists hyperplanes
    x[j] == value on which an objective is singular; a line search never
    steps across one.
    """

    name: str
    n: int
    m: int
    objectives: Sequence[Objective]
    gradients: Sequence[Gradient]
    box_low: np.ndarray
    box_high: np.ndarray
    poles: tuple[tuple[int, float], ...] = ()

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"{self.name}: n and m must be positive")
        if len(self.objectives) != self.m or len(self.gradients) != self.m:
            raise ValueError(f"{self.name}: expected {self.m} objectives and gradients")
        low = np.asarray(self.box_low, dtype=float).reshape(self.n)
        high = np.asarray(self.box_high, dtype=float).reshape(self.n)
        if not np.all(low < high):
            raise ValueError(f"{self.name}: box_low must be below box_high componentwise")
        object.__setattr__(self, "box_low", low)
        object.__setattr__(self, "box_high", high)
        poles = tuple((int(j), float(value)) for j, value in self.poles)
        if any(not 0 <= j < self.n for j, _ in poles):
            raise ValueError(f"{self.name}: pole coordinates must lie in [0, {self.n})")
        object.__setattr__(self, "poles", poles)

    def crosses_pole(self, x: np.ndarray, x_new: np.ndarray) -> bool:
        """True if the segment from x to x_new touches one of the poles."""
        return any((x[j] - value) * (x_new[j] - value) <= 0.0 for j, value in self.poles)


@dataclass
class EvalCounter:
    """Evaluation counts of a single run. One unit is a full vector or Jacobian."""

    f_evals: int = 0
    g_evals: int = 0


@dataclass(frozen=True)
class SimplexWeights:
    """A point of the unit simplex. Negative inputs are clamped to zero."""

    values: np.ndarray = field(repr=True)

    def __post_init__(self):
        raw = np.asarray(self.values, dtype=float).ravel()
        clamped = np.maximum(raw, 0.0)
        total = clamped.sum()
        if raw.size == 0 or not np.isfinite(total) or total <= 0.0:
            raise ValueError("Simplex weights need at least one positive finite entry")
        if abs(total - 1.0) > SIMPLEX_SUM_TOL:
            clamped = clamped / total
        clamped.setflags(write=False)
        object.__setattr__(self, "values", clamped)

    @classmethod
    def vertex(cls, m: int, index: int) -> "SimplexWeights":
        e = np.zeros(m)
        e[index] = 1.0
        return cls(e)

    @classmethod
    def uniform(cls, m: int) -> "SimplexWeights":
        return cls(np.full(m, 1.0 / m))

    @property
    def m(self) -> int:
        return self.values.size

    def tolist(self) -> list[float]:
        return self.values.tolist()


def eval_f(problem: MopProblem, x: np.ndarray, counter: EvalCounter) -> np.ndarray:
    """Evaluate the full objective vector at x (one f-eval)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (problem.n,):
        raise ValueError(f"{problem.name}: expected a point of length {problem.n}, got shape {x.shape}")
    counter.f_evals += 1
    try:
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            values = np.array([f(x) for f in problem.objectives], dtype=float)
    except (OverflowError, ZeroDivisionError):
        raise NonFiniteEvaluation(problem.name, x, "objectives") from None
    if not np.all(np.isfinite(values)):
        raise NonFiniteEvaluation(problem.name, x, "objectives")
    return values


def eval_jacobian(problem: MopProblem, x: np.ndarray, counter: EvalCounter) -> np.ndarray:
    """Evaluate the m x n Jacobian at x (one g-eval)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (problem.n,):
        raise ValueError(f"{problem.name}: expected a point of length {problem.n}, got shape {x.shape}")
    counter.g_evals += 1
    jac = np.empty((problem.m, problem.n))
    try:
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            for i, grad in enumerate(problem.gradients):
                jac[i] = grad(x)
    except (OverflowError, ZeroDivisionError):
        raise NonFiniteEvaluation(problem.name, x, "gradients") from None
    if not np.all(np.isfinite(jac)):
        raise NonFiniteEvaluation(problem.name, x, "gradients")
    return jac


def d_operator(jac: np.ndarray, d: np.ndarray) -> float:
    """Worst-case directional derivative max_i <grad f_i, d>."""
    jac = np.atleast_2d(jac)
    d = np.asarray(d, dtype=float)
    if jac.shape[1] != d.shape[0]:
        raise ValueError(f"Jacobian with {jac.shape[1]} columns cannot act on a vector of length {d.shape[0]}")
    return float(np.max(jac @ d))


def _central_difference(objective: Objective, x: np.ndarray) -> np.ndarray:
    grad = np.empty_like(x)
    for j in range(x.size):
        h = GRADIENT_CHECK_STEP * (1.0 + abs(x[j]))
        xp = x.copy()
        xm = x.copy()
        xp[j] += h
        xm[j] -= h
        # The representable step, not the nominal one
        grad[j] = (objective(xp) - objective(xm)) / (xp[j] - xm[j])
    return grad


def check_gradients(
    problem: MopProblem,
    samples: int,
    seed: int,
    tol: float = GRADIENT_CHECK_TOL,
    raise_on_failure: bool = True,
) -> GradientCheckReport:
    """
    Compare analytic gradients with central differences at uniform box samples.

    The error of objective i at a point is ||g - g_fd||_inf / max(1, ||g||_inf).
    Raises GradientMismatch at the first failing point unless
    raise_on_failure is False, in which case the report says passed=False.
    """
    if samples < 1:
        raise ValueError("samples must be positive")

    rng = np.random.default_rng(seed)
    worst = np.zeros(problem.m)
    worst_point: np.ndarray | None = None
    worst_overall = -1.0
    failure: GradientMismatch | None = None

    for _ in range(samples):
        x = rng.uniform(problem.box_low, problem.box_high)
        for i in range(problem.m):
            analytic = np.asarray(problem.gradients[i](x), dtype=float)
            numeric = _central_difference(problem.objectives[i], x)
            scale = max(1.0, float(np.max(np.abs(analytic))))
            err = float(np.max(np.abs(analytic - numeric))) / scale
            if not np.isfinite(err):
                err = float("inf")
            worst[i] = max(worst[i], err)
            if err > worst_overall:
                worst_overall = err
                worst_point = x.copy()
            if err > tol and failure is None:
                failure = GradientMismatch(problem.name, x.copy(), i, err)

    report = GradientCheckReport(
        problem=problem.name,
        samples=samples,
        seed=seed,
        max_relative_error=worst.tolist(),
        worst_point=None if worst_point is None else worst_point.tolist(),
        tolerance=tol,
        passed=failure is None,
    )
    if failure is not None:
        logger.warning(f"Gradient check failed for {problem.name}: {failure.message}")
        if raise_on_failure:
            raise failure
    else:
        logger.debug(f"Gradient check passed for {problem.name} (worst {worst_overall:.2e})")
    return report
