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
from numpy.testing import assert_allclose

from conftest import random_spd
from services.errors import CurvatureBreakdown, DegenerateMetric, ZeroStep
from services.hessian_approx import (
    MetricMatrix,
    build_ingredients,
    dfp_update,
    factorize_spd,
    is_positive_definite,
    mfbfgs_update,
    per_objective_bfgs_update,
)
from services.mop_core import SimplexWeights

E1 = np.array([1.0, 0.0])


def _ingredients_for(s: np.ndarray, gamma: np.ndarray):
    """Ingredients of a zero-weight-decrease step whose gamma equals the given vector (eta >= 0)."""
    J_old = np.zeros((1, s.size))
    J_new = gamma[None, :]
    return build_ingredients(np.zeros(s.size), s, J_old, J_new, np.zeros(1), np.zeros(1), SimplexWeights.vertex(1, 0))


class TestMetricMatrix:
    def test_identity_is_consistent(self):
        M = MetricMatrix.identity(3)
        M.validate()
        assert M.inverse_pair_error() == 0.0
        assert M.n == 3

    def test_from_matrix_inverts(self, rng):
        M = MetricMatrix.from_matrix(random_spd(rng, 4))
        assert M.inverse_pair_error() <= 1e-10

    def test_factorize_rejects_asymmetric_and_indefinite(self):
        with pytest.raises(DegenerateMetric):
            factorize_spd(np.array([[1.0, 1e-3], [0.0, 1.0]]))
        with pytest.raises(DegenerateMetric):
            factorize_spd(np.array([[1.0, 2.0], [2.0, 1.0]]))
        assert not is_positive_definite(np.diag([1.0, 0.0]))
        assert is_positive_definite(np.diag([1.0, 1e-6]))

    def test_scaled_identity(self):
        M = MetricMatrix.scaled_identity(2, 0.5)
        assert_allclose(M.B, 0.5 * np.eye(2))
        assert_allclose(M.B_inv, 2.0 * np.eye(2))
        for bad in (0.0, -1.0, np.inf, np.nan):
            with pytest.raises(DegenerateMetric):
                MetricMatrix.scaled_identity(2, bad)

    def test_safeguarded_keeps_a_consistent_pair(self, rng):
        M = MetricMatrix.from_matrix(random_spd(rng, 3))
        assert M.safeguarded() is M

    def test_safeguarded_refactorizes_a_drifted_inverse(self, rng):
        B = random_spd(rng, 3)
        B = 0.5 * (B + B.T)
        drifted = MetricMatrix(B, np.linalg.inv(B) + 1e-6 * np.eye(3))
        assert drifted.inverse_pair_error() > 1e-8
        repaired = drifted.safeguarded()
        assert np.array_equal(repaired.B, drifted.B)
        assert repaired.inverse_pair_error() <= 1e-8

    def test_safeguarded_rejects_indefinite_and_hopeless_pairs(self):
        with pytest.raises(DegenerateMetric):
            MetricMatrix(np.diag([1.0, -1.0]), np.diag([1.0, -1.0])).safeguarded()
        c, s = np.cos(0.3), np.sin(0.3)
        Q = np.array([[c, -s], [s, c]])
        B = Q @ np.diag([1.0, 1e-15]) @ Q.T
        with pytest.raises(DegenerateMetric):
            MetricMatrix(B, np.eye(2)).safeguarded()


class TestBuildIngredients:
    def test_positive_eta(self):
        s = np.array([1.0, 0.0])
        y = np.array([0.2, 0.7])
        ing = build_ingredients(np.zeros(2), s, np.zeros((1, 2)), y[None, :], np.array([1.0]), np.array([0.5]), SimplexWeights.vertex(1, 0))
        assert ing.eta == pytest.approx(0.2)
        assert ing.m == pytest.approx(0.5)
        assert_allclose(ing.gamma, y + 0.5 * s)

    def test_negative_eta(self):
        s = np.array([2.0])
        J_old = np.array([[0.0], [0.0]])
        J_new = np.array([[-0.6], [-0.6]])
        ing = build_ingredients(
            np.zeros(1), s, J_old, J_new, np.array([1.0, 1.0]), np.array([0.95, 0.85]), SimplexWeights(np.array([0.5, 0.5]))
        )
        assert ing.eta == pytest.approx(-0.3)
        assert ing.f_decrease == pytest.approx(0.1)
        assert ing.m == pytest.approx(0.4)
        assert ing.m >= 0.0 and ing.m >= -ing.eta

    def test_curvature_after_decrease(self):
        s = np.array([0.3, -0.4])
        c, delta = 1.7, 0.05
        ing = build_ingredients(
            np.zeros(2), s, np.zeros((1, 2)), (c * s)[None, :], np.array([1.0]), np.array([1.0 - delta]), SimplexWeights.vertex(1, 0)
        )
        assert ing.curvature == pytest.approx((c + delta) * float(s @ s))

    def test_zero_step(self):
        with pytest.raises(ZeroStep):
            build_ingredients(np.ones(2), np.ones(2), np.zeros((1, 2)), np.zeros((1, 2)), np.zeros(1), np.zeros(1), SimplexWeights.vertex(1, 0))


class TestMfbfgsUpdate:
    def test_fixed_point(self):
        M = mfbfgs_update(MetricMatrix.identity(2), _ingredients_for(E1, E1))
        assert_allclose(M.B, np.eye(2), atol=1e-15)
        assert_allclose(M.B_inv, np.eye(2), atol=1e-15)

    def test_doubling(self):
        M = mfbfgs_update(MetricMatrix.identity(2), _ingredients_for(E1, 2.0 * E1))
        assert_allclose(M.B, np.diag([2.0, 1.0]), atol=1e-15)
        assert_allclose(M.B_inv, np.diag([0.5, 1.0]), atol=1e-15)

    def test_breakdown(self):
        with pytest.raises(CurvatureBreakdown):
            mfbfgs_update(MetricMatrix.identity(2), _ingredients_for(E1, np.array([0.0, 1.0])))

    def test_secant_inverse_and_definiteness_properties(self, rng):
        for _ in range(2000):
            n = int(rng.integers(1, 7))
            M = MetricMatrix.from_matrix(random_spd(rng, n))
            s = rng.standard_normal(n)
            gamma = rng.standard_normal(n)
            if gamma @ s <= 1e-3 * float(s @ s):
                gamma = gamma - ((gamma @ s) / (s @ s) - 0.5) * s
            updated = mfbfgs_update(M, _ingredients_for(s, gamma))

            assert np.linalg.norm(updated.B @ s - gamma) <= 1e-8 * max(np.linalg.norm(gamma), 1.0)
            assert_allclose(updated.B_inv, np.linalg.inv(updated.B), atol=1e-8 * max(1.0, np.abs(updated.B_inv).max()))
            assert updated.symmetry_error() <= 1e-10 * np.abs(updated.B).max()
            assert is_positive_definite(updated.B)

    def test_inputs_are_not_modified(self, rng):
        M = MetricMatrix.from_matrix(random_spd(rng, 3))
        before = M.B.copy()
        mfbfgs_update(M, _ingredients_for(np.ones(3), np.array([1.0, 2.0, 3.0])))
        assert np.array_equal(M.B, before)


class TestDfpUpdate:
    def test_fixed_point(self):
        M = dfp_update(MetricMatrix.identity(2), E1, E1)
        assert_allclose(M.B, np.eye(2), atol=1e-15)

    def test_doubling(self):
        M = dfp_update(MetricMatrix.identity(2), E1, 2.0 * E1)
        assert_allclose(M.B, np.diag([2.0, 1.0]), atol=1e-15)
        assert_allclose(M.B_inv, np.diag([0.5, 1.0]), atol=1e-15)

    def test_orthogonal_pair_breaks_down(self):
        with pytest.raises(CurvatureBreakdown):
            dfp_update(MetricMatrix.identity(2), E1, np.array([0.0, 1.0]))

    def test_secant_and_inverse(self, rng):
        for _ in range(500):
            n = int(rng.integers(1, 6))
            M = MetricMatrix.from_matrix(random_spd(rng, n))
            s = rng.standard_normal(n)
            y = random_spd(rng, n) @ s
            updated = dfp_update(M, s, y)
            assert np.linalg.norm(updated.B @ s - y) <= 1e-8 * np.linalg.norm(y)
            assert updated.inverse_pair_error() <= 1e-8 * max(1.0, np.abs(updated.B).max() * np.abs(updated.B_inv).max())


class TestPerObjectiveBfgs:
    def test_fixed_point(self):
        (M,) = per_objective_bfgs_update([MetricMatrix.identity(2)], E1, E1[None, :])
        assert_allclose(M.B, np.eye(2), atol=1e-15)

    def test_skip_policy(self):
        family = [MetricMatrix.identity(2), MetricMatrix.identity(2)]
        mu = np.array([2.0 * E1, -E1])
        updated = per_objective_bfgs_update(family, E1, mu)
        assert_allclose(updated[0].B, np.diag([2.0, 1.0]), atol=1e-15)
        assert updated[1] is family[1]

    def test_secant(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 6))
            family = [MetricMatrix.from_matrix(random_spd(rng, n)) for _ in range(2)]
            s = rng.standard_normal(n)
            mu = np.array([random_spd(rng, n) @ s for _ in range(2)])
            updated = per_objective_bfgs_update(family, s, mu)
            for B_new, mu_i in zip(updated, mu):
                assert np.linalg.norm(B_new.B @ s - mu_i) <= 1e-8 * np.linalg.norm(mu_i)


@pytest.mark.slow
def test_mfbfgs_properties_ten_thousand_instances():
    rng = np.random.default_rng(11)
    for _ in range(10_000):
        n = int(rng.integers(1, 9))
        M = MetricMatrix.from_matrix(random_spd(rng, n))
        s = rng.standard_normal(n)
        gamma = rng.standard_normal(n)
        if gamma @ s <= 1e-3 * float(s @ s):
            gamma = gamma - ((gamma @ s) / (s @ s) - 0.5) * s
        updated = mfbfgs_update(M, _ingredients_for(s, gamma))
        assert np.linalg.norm(updated.B @ s - gamma) <= 1e-8 * max(np.linalg.norm(gamma), 1.0)
        assert is_positive_definite(updated.B)
