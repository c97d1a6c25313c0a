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
from numpy.testing import assert_array_equal

from constants.problem_catalog import KNOWN_CONVEXITY_DISCREPANCIES, get_all_descriptors
from services.errors import UnknownProblem
from services.mop_core import EvalCounter, check_gradients, eval_f
from services.problem_registry import get_problem, list_problem_ids, problem_info, sample_starts

CATALOG = {
    "SD": (4, 2, True),
    "PNR": (2, 2, True),
    "JOS1a": (50, 2, True),
    "JOS1b": (100, 2, True),
    "DGO1": (1, 2, False),
    "DGO2": (1, 2, True),
    "Lov1": (2, 2, True),
    "Lov2": (2, 2, False),
    "Lov3": (2, 2, False),
    "Lov4": (2, 2, False),
    "SK1": (1, 2, False),
    "BK1": (2, 2, True),
    "SLCDT1": (2, 2, False),
    "MOP1": (1, 2, True),
    "MOP2": (2, 2, False),
    "LDTZ": (3, 3, False),
    "Hil1": (2, 2, False),
    "AP2": (1, 2, True),
    "AP3": (2, 2, False),
    "FF1": (2, 2, False),
    "KW2": (2, 2, False),
    "MHHM1": (1, 3, True),
    "MHHM2": (2, 3, True),
}

CONVEX_IDS = [pid for pid, (_, _, convex) in CATALOG.items() if convex and pid not in KNOWN_CONVEXITY_DISCREPANCIES]


class TestRegistry:
    def test_all_catalog_problems_registered(self):
        assert list_problem_ids() == list(CATALOG)
        assert len(get_all_descriptors()) == 23

    @pytest.mark.parametrize("problem_id", list(CATALOG))
    def test_dimensions(self, problem_id):
        n, m, convex = CATALOG[problem_id]
        problem = get_problem(problem_id)
        assert (problem.n, problem.m) == (n, m)
        assert problem.box_low.shape == (n,)
        assert np.all(problem.box_low < problem.box_high)
        assert problem_info(problem_id).convex is convex

    def test_boxes(self):
        assert_array_equal(get_problem("SD").box_low, [1.0, -np.sqrt(2.0), -np.sqrt(2.0), 1.0])
        assert_array_equal(get_problem("SD").box_high, [3.0] * 4)
        assert_array_equal(get_problem("MOP1").box_high, [1e5])
        assert_array_equal(get_problem("LDTZ").box_low, [0.0] * 3)

    def test_unknown_problem(self):
        with pytest.raises(UnknownProblem) as excinfo:
            get_problem("NOPE")
        assert excinfo.value.error_code.value == "ERR_PROBLEM_1001"
        with pytest.raises(UnknownProblem):
            problem_info("NOPE")

    def test_problem_info_carries_convexity_note(self):
        assert problem_info("SD").convexity_note is not None
        assert problem_info("BK1").convexity_note is None
        assert problem_info("JOS1b").n == 100

    @pytest.mark.parametrize("problem_id", list(CATALOG))
    def test_gradients_match_finite_differences(self, problem_id):
        report = check_gradients(get_problem(problem_id), samples=100, seed=0)
        assert report.passed
        assert len(report.max_relative_error) == CATALOG[problem_id][1]


class TestSampleStarts:
    def test_deterministic(self):
        problem = get_problem("Lov2")
        first = sample_starts(problem, 20, seed=5)
        second = sample_starts(problem, 20, seed=5)
        assert all(np.array_equal(a, b) for a, b in zip(first, second))
        other = sample_starts(problem, 20, seed=6)
        assert not np.array_equal(first[0], other[0])

    @pytest.mark.parametrize("problem_id", ["SD", "JOS1b", "DGO1", "LDTZ"])
    def test_inside_box(self, problem_id):
        problem = get_problem(problem_id)
        starts = sample_starts(problem, 50, seed=1)
        assert len(starts) == 50
        for x in starts:
            assert x.shape == (problem.n,)
            assert np.all(x >= problem.box_low)
            assert np.all(x <= problem.box_high)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            sample_starts(get_problem("BK1"), 0, seed=0)


class TestConvexity:
    @pytest.mark.parametrize("problem_id", CONVEX_IDS)
    def test_midpoint_convexity(self, problem_id):
        problem = get_problem(problem_id)
        rng = np.random.default_rng(17)
        for _ in range(1000):
            x = rng.uniform(problem.box_low, problem.box_high)
            y = rng.uniform(problem.box_low, problem.box_high)
            mid = eval_f(problem, 0.5 * (x + y), EvalCounter())
            avg = 0.5 * (eval_f(problem, x, EvalCounter()) + eval_f(problem, y, EvalCounter()))
            assert np.all(mid <= avg + 1e-9 * (1.0 + np.abs(avg))), (x, y)

    @pytest.mark.parametrize(
        "problem_id,x,y",
        [
            ("PNR", [-0.5, -0.5], [0.5, 0.5]),
            ("SD", [2.0, -1.0, 1.0, 2.0], [2.0, -0.5, 1.0, 2.0]),
        ],
    )
    def test_listed_discrepancies_are_real(self, problem_id, x, y):
        assert problem_id in KNOWN_CONVEXITY_DISCREPANCIES
        problem = get_problem(problem_id)
        x, y = np.array(x), np.array(y)
        mid = eval_f(problem, 0.5 * (x + y), EvalCounter())
        avg = 0.5 * (eval_f(problem, x, EvalCounter()) + eval_f(problem, y, EvalCounter()))
        assert np.any(mid > avg)
