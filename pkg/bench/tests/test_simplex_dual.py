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
from numpy.testing import assert_allclose, assert_array_equal

from conftest import random_spd
from constants.solver_defaults import DEFAULT_DUAL_STRATEGY
from models.solver import DualSolverConfig, DualStrategy
from services.errors import DegenerateMetric, DualNonConvergence
from services.hessian_approx import MetricMatrix
from services.mop_core import EvalCounter, d_operator, eval_jacobian
from services.problem_registry import get_problem
from services.simplex_dual import (
    MetricKind,
    project_to_simplex,
    solve_dual_common,
    solve_dual_per_objective,
    solve_dual_sd,
)

DEFAULT = DualSolverConfig()


def _grid_m2(J: np.ndarray, M: np.ndarray, step: float = 1e-6):
    """Brute-force minimizer of 1/2 ||lam g1 + (1 - lam) g2||_M^2 over lam in [0, 1]."""
    g1, g2 = J
    a, b, c = g1 @ M @ g1, g1 @ M @ g2, g2 @ M @ g2
    lam = np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)
    phi = 0.5 * (lam**2 * a + 2.0 * lam * (1.0 - lam) * b + (1.0 - lam) ** 2 * c)
    best = int(np.argmin(phi))
    weights = np.array([lam[best], 1.0 - lam[best]])
    return -float(phi[best]), -(M @ (J.T @ weights))


def _simplex_grid(m: int, step: float) -> np.ndarray:
    k = int(round(1.0 / step))
    points = [
        (i / k, j / k, (k - i - j) / k)
        for i in range(k + 1)
        for j in range(k + 1 - i)
    ]
    return np.array(points)[:, :m]


def test_default_strategy():
    assert DEFAULT.strategy == DualStrategy(DEFAULT_DUAL_STRATEGY) == DualStrategy.FRANK_WOLFE


class TestProjection:
    def test_examples(self):
        assert_allclose(project_to_simplex(np.array([0.5, 0.5, 0.5])), [1 / 3, 1 / 3, 1 / 3])
        assert_allclose(project_to_simplex(np.array([1.5, 0.5])), [1.0, 0.0])
        assert_allclose(project_to_simplex(np.array([0.2, 0.8])), [0.2, 0.8])

    def test_result_lies_on_simplex(self, rng):
        for _ in range(100):
            p = project_to_simplex(rng.standard_normal(5) * 3.0)
            assert np.all(p >= 0.0)
            assert p.sum() == pytest.approx(1.0, abs=1e-12)


class TestSolveDualCommon:
    def test_single_objective_is_steepest_descent(self):
        result = solve_dual_common(np.array([[3.0, 4.0]]), np.eye(2), DEFAULT)
        assert_array_equal(result.weights.values, [1.0])
        assert_allclose(result.d, [-3.0, -4.0])
        assert result.theta == pytest.approx(-12.5)
        assert result.metric_used == MetricKind.COMMON

    def test_orthogonal_gradients(self):
        result = solve_dual_common(np.eye(2), np.eye(2), DEFAULT)
        assert_allclose(result.weights.values, [0.5, 0.5], atol=1e-12)
        assert_allclose(result.d, [-0.5, -0.5], atol=1e-12)
        assert result.theta == pytest.approx(-0.25)

    def test_opposite_gradients_are_critical(self):
        J = np.array([[1.0, -2.0], [-1.0, 2.0]])
        result = solve_dual_common(J, np.eye(2), DEFAULT)
        assert_array_equal(result.d, [0.0, 0.0])
        assert result.theta == 0.0
        assert result.is_critical

    @pytest.mark.parametrize("bad", [np.array([[1.0, 0.5], [0.0, 1.0]]), np.diag([1.0, -1.0])])
    def test_degenerate_metric(self, bad):
        with pytest.raises(DegenerateMetric):
            solve_dual_common(np.eye(2), bad, DEFAULT)

    def test_agrees_with_grid_oracle_m2(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 5))
            J = rng.standard_normal((2, n))
            M = np.linalg.inv(random_spd(rng, n))
            M = 0.5 * (M + M.T)
            result = solve_dual_common(J, M, DEFAULT)
            theta, d = _grid_m2(J, M)
            assert abs(result.theta - theta) <= 1e-5
            assert np.linalg.norm(result.d - d) <= 1e-4

    def test_grid_bounds_theta_m3(self, rng):
        grid = _simplex_grid(3, 1e-2)
        for _ in range(20):
            J = rng.standard_normal((3, 3))
            M = np.linalg.inv(random_spd(rng, 3))
            M = 0.5 * (M + M.T)
            result = solve_dual_common(J, M, DEFAULT)
            G = J @ M @ J.T
            theta_grid = -0.5 * float(np.min(np.einsum("ki,ij,kj->k", grid, G, grid)))
            assert result.theta >= theta_grid - 1e-12
            assert result.theta - theta_grid <= 1e-3

    def test_primal_dual_agreement_and_descent_bound(self, rng):
        for _ in range(100):
            m, n = int(rng.integers(1, 4)), int(rng.integers(1, 6))
            J = rng.standard_normal((m, n))
            metric = MetricMatrix.from_matrix(random_spd(rng, n))
            result = solve_dual_common(J, metric.B_inv, DEFAULT)
            if result.is_critical:
                continue
            dBd = float(result.d @ metric.B @ result.d)
            assert -0.5 * dBd == pytest.approx(result.theta, rel=1e-8)
            assert d_operator(J, result.d) <= -dBd + 1e-8

    def test_kkt_stationarity(self, rng):
        for _ in range(100):
            J = rng.standard_normal((3, 4))
            result = solve_dual_common(J, np.eye(4), DEFAULT)
            grad = result.dual_gradient
            active = result.weights.values > 1e-10
            assert np.all(grad[active] - grad.min() <= 1e-6)

    def test_scaling_covariance(self, rng):
        for _ in range(50):
            J = rng.standard_normal((2, 3))
            t = float(rng.uniform(0.1, 10.0))
            base = solve_dual_common(J, np.eye(3), DEFAULT)
            scaled = solve_dual_common(t * J, np.eye(3), DEFAULT)
            assert_allclose(scaled.d, t * base.d, rtol=1e-8, atol=1e-12)
            assert scaled.theta == pytest.approx(t * t * base.theta, rel=1e-8)

    @pytest.mark.parametrize(
        "config",
        [
            DualSolverConfig(strategy=DualStrategy.PROJECTED_GRADIENT),
            DualSolverConfig(strategy=DualStrategy.CLOSED_FORM_M2),
            DualSolverConfig(m2_fast_path=True),
        ],
    )
    def test_strategies_agree_with_frank_wolfe(self, rng, config):
        for _ in range(30):
            m = int(rng.integers(2, 4))
            J = rng.standard_normal((m, 3))
            M = np.linalg.inv(random_spd(rng, 3))
            M = 0.5 * (M + M.T)
            reference = solve_dual_common(J, M, DEFAULT)
            other = solve_dual_common(J, M, config)
            assert other.theta == pytest.approx(reference.theta, rel=1e-6, abs=1e-10)
            assert_allclose(other.d, reference.d, rtol=1e-4, atol=1e-6)

    def test_exact_support_solve_when_iterations_run_out(self, rng):
        for _ in range(30):
            J = rng.standard_normal((3, 4))
            metric = MetricMatrix.from_matrix(random_spd(rng, 4))
            reference = solve_dual_common(J, metric.B_inv, DEFAULT)
            capped = solve_dual_common(J, metric.B_inv, DualSolverConfig(max_iters=1))
            assert capped.gap <= 1e-12
            assert capped.theta == pytest.approx(reference.theta, rel=1e-9, abs=1e-14)
            assert_allclose(capped.d, reference.d, rtol=1e-7, atol=1e-12)

    def test_many_objectives_without_enough_iterations(self, rng):
        J = rng.standard_normal((13, 3))
        with pytest.raises(DualNonConvergence) as excinfo:
            solve_dual_common(J, np.eye(3), DualSolverConfig(max_iters=1))
        assert excinfo.value.iterations == 1

    def test_gap_tolerance_does_not_grow_with_the_gradients(self, rng):
        for _ in range(20):
            J = rng.standard_normal((3, 3))
            J = 20.0 * J / np.linalg.norm(J, axis=1, keepdims=True)
            result = solve_dual_common(J, np.eye(3), DEFAULT)
            assert result.gap <= 1e-11
            d_norm2 = float(result.d @ result.d)
            if d_norm2 > 0.0:
                assert d_operator(J, result.d) <= -d_norm2 + 1e-8 * (1.0 + d_norm2)


class TestSolveDualSd:
    def test_shorter_gradient_wins(self):
        result = solve_dual_sd(np.array([[2.0, 0.0], [1.0, 0.0]]), DEFAULT)
        assert_allclose(result.weights.values, [0.0, 1.0])
        assert_allclose(result.d, [-1.0, 0.0])
        assert result.theta == pytest.approx(-0.5)
        assert result.metric_used == MetricKind.IDENTITY

    def test_zero_jacobian_is_critical(self):
        result = solve_dual_sd(np.zeros((2, 3)), DEFAULT)
        assert_array_equal(result.d, np.zeros(3))
        assert result.theta == 0.0

    def test_matches_common_with_identity(self, rng):
        for _ in range(30):
            J = rng.standard_normal((2, 4))
            sd = solve_dual_sd(J, DEFAULT)
            common = solve_dual_common(J, np.eye(4), DEFAULT)
            assert_allclose(sd.d, common.d, atol=1e-12)
            assert sd.theta == pytest.approx(-0.5 * float(sd.d @ sd.d), rel=1e-12)

    def test_badly_scaled_gradients_give_descent(self):
        # far out along the unbounded coordinate of LDTZ the gradient entries differ by about seven orders of magnitude
        problem = get_problem("LDTZ")
        x = np.array([0.417, 0.641, 3.8e6])
        J = eval_jacobian(problem, x, EvalCounter())
        result = solve_dual_sd(J, DEFAULT, float(np.linalg.norm(x)))
        d_norm2 = float(result.d @ result.d)
        assert d_norm2 > 0.0
        # cancellation in J^T lam limits the bound to about eps ||grad f_i||^2
        assert d_operator(J, result.d) <= -0.5 * d_norm2


class TestSolveDualPerObjective:
    def test_single_objective_identity(self):
        result = solve_dual_per_objective(np.array([[3.0, 4.0]]), [MetricMatrix.identity(2)], DEFAULT)
        assert_allclose(result.d, [-3.0, -4.0])
        assert result.theta == pytest.approx(-12.5)
        assert result.metric_used == MetricKind.PER_OBJECTIVE

    def test_equal_family_matches_common(self, rng):
        for _ in range(30):
            J = rng.standard_normal((2, 3))
            metric = MetricMatrix.from_matrix(random_spd(rng, 3))
            per = solve_dual_per_objective(J, [metric, metric], DEFAULT)
            common = solve_dual_common(J, metric.B_inv, DEFAULT)
            assert_allclose(per.d, common.d, rtol=1e-8, atol=1e-8)
            assert per.theta == pytest.approx(common.theta, rel=1e-8, abs=1e-8)

    def test_one_dimensional_grid_oracle(self):
        J = np.array([[1.0], [-2.0]])
        family = [MetricMatrix.from_matrix(np.array([[1.0]])), MetricMatrix.from_matrix(np.array([[2.0]]))]
        result = solve_dual_per_objective(J, family, DEFAULT)

        lam = np.linspace(0.0, 1.0, 1_000_001)
        g = lam * 1.0 + (1.0 - lam) * -2.0
        H = lam * 1.0 + (1.0 - lam) * 2.0
        phi = 0.5 * g * g / H
        best = lam[int(np.argmin(phi))]
        assert result.weights.values[0] == pytest.approx(best, abs=1e-6)
        assert abs(result.theta) <= 1e-12
        assert np.linalg.norm(result.d) <= 1e-6

    def test_random_family_against_grid(self, rng):
        lam = np.linspace(0.0, 1.0, 10_001)
        for _ in range(10):
            J = rng.standard_normal((2, 2))
            B1, B2 = random_spd(rng, 2), random_spd(rng, 2)
            result = solve_dual_per_objective(J, [MetricMatrix.from_matrix(B1), MetricMatrix.from_matrix(B2)], DEFAULT)
            values = []
            for t in lam:
                g = t * J[0] + (1.0 - t) * J[1]
                values.append(0.5 * float(g @ np.linalg.solve(t * B1 + (1.0 - t) * B2, g)))
            theta_grid = -min(values)
            assert result.theta >= theta_grid - 1e-10
            assert result.theta == pytest.approx(theta_grid, rel=1e-6, abs=1e-7)

    def test_non_convergence_is_reported(self):
        J = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]])
        family = [MetricMatrix.identity(2) for _ in range(3)]
        with pytest.raises(DualNonConvergence) as excinfo:
            solve_dual_per_objective(J, family, DualSolverConfig(max_iters=1))
        assert excinfo.value.iterations == 1

    def test_family_size_must_match(self):
        with pytest.raises(ValueError):
            solve_dual_per_objective(np.eye(2), [MetricMatrix.identity(2)], DEFAULT)


@pytest.mark.slow
def test_grid_oracle_m2_thousand_instances():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        n = int(rng.integers(1, 6))
        J = rng.standard_normal((2, n))
        M = np.linalg.inv(random_spd(rng, n))
        M = 0.5 * (M + M.T)
        result = solve_dual_common(J, M, DEFAULT)
        theta, d = _grid_m2(J, M)
        assert abs(result.theta - theta) <= 1e-5
        assert np.linalg.norm(result.d - d) <= 1e-4
