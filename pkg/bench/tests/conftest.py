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

import numpy as np
import pytest

from services.mop_core import MopProblem


def quadratic_problem(Q, name: str = "quad") -> MopProblem:
    """Single-objective f(x) = 1/2 x^T Q x."""
    Q = np.asarray(Q, dtype=float)
    n = Q.shape[0]
    return MopProblem(
        name=name,
        n=n,
        m=1,
        objectives=(lambda x: 0.5 * float(x @ Q @ x),),
        gradients=(lambda x: Q @ x,),
        box_low=-np.ones(n),
        box_high=np.ones(n),
    )


def scalar_problem(f, g, name: str = "scalar", low: float = -2.0, high: float = 2.0) -> MopProblem:
    """One objective of one variable."""
    return MopProblem(
        name=name,
        n=1,
        m=1,
        objectives=(lambda x: float(f(x[0])),),
        gradients=(lambda x: np.array([g(x[0])]),),
        box_low=np.array([low]),
        box_high=np.array([high]),
    )


def random_spd(rng: np.random.Generator, n: int, spread: float = 1.0) -> np.ndarray:
    A = rng.standard_normal((n, n))
    return A @ A.T + spread * np.eye(n)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260118)


@pytest.fixture(autouse=True)
def _quiet_numpy():
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        yield
