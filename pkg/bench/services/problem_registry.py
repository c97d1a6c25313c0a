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

"""Objective formulas of the catalog problems and the problem registry.

Each builder returns (objectives, gradients) for its catalog entry. Formulas
are transcribed from the cited sources; ``check_gradients`` and the
convexity check in the test suite guard the transcription.
"""

import logging
from collections.abc import Callable
from functools import lru_cache

import numpy as np

from constants.problem_catalog import (
    KNOWN_CONVEXITY_DISCREPANCIES,
    ProblemDescriptor,
    get_all_descriptors,
    get_descriptor_by_id,
)
from models.problem import ProblemInfo
from services.errors import UnknownProblem
from services.mop_core import Gradient, MopProblem, Objective

logger = logging.getLogger(__name__)

Builder = Callable[[ProblemDescriptor], tuple[list[Objective], list[Gradient]]]

_BUILDERS: dict[str, Builder] = {}

# Hyperplanes (coordinate, value) where an objective divides by zero
_POLES: dict[str, tuple[tuple[int, float], ...]] = {
    "SD": ((0, 0.0), (1, 0.0), (2, 0.0), (3, 0.0)),
    "Lov2": ((0, -1.0),),
}


def _register(*problem_ids: str):
    def decorator(builder: Builder) -> Builder:
        for problem_id in problem_ids:
            _BUILDERS[problem_id] = builder
        return builder

    return decorator


# =============================================================================
# Convex quadratics
# =============================================================================


@_register("JOS1a", "JOS1b")
def _jos1(desc: ProblemDescriptor):
    """JOS1 (Jin, Olhofer and Sendhoff): mean squared distance to 0 and to 2."""
    n = desc.n
    return (
        [lambda x: float(np.mean(x**2)), lambda x: float(np.mean((x - 2.0) ** 2))],
        [lambda x: 2.0 * x / n, lambda x: 2.0 * (x - 2.0) / n],
    )


@_register("BK1")
def _bk1(desc: ProblemDescriptor):
    """BK1 (Binh and Korn, via Huband et al.)."""
    return (
        [
            lambda x: float(x[0] ** 2 + x[1] ** 2),
            lambda x: float((x[0] - 5.0) ** 2 + (x[1] - 5.0) ** 2),
        ],
        [
            lambda x: np.array([2.0 * x[0], 2.0 * x[1]]),
            lambda x: np.array([2.0 * (x[0] - 5.0), 2.0 * (x[1] - 5.0)]),
        ],
    )


@_register("Lov1")
def _lov1(desc: ProblemDescriptor):
    """Lov1 (Lovison): two weighted convex quadratics."""
    return (
        [
            lambda x: float(1.05 * x[0] ** 2 + 0.98 * x[1] ** 2),
            lambda x: float(0.99 * (x[0] - 3.0) ** 2 + 1.03 * (x[1] - 2.5) ** 2),
        ],
        [
            lambda x: np.array([2.1 * x[0], 1.96 * x[1]]),
            lambda x: np.array([1.98 * (x[0] - 3.0), 2.06 * (x[1] - 2.5)]),
        ],
    )


@_register("MOP1")
def _mop1(desc: ProblemDescriptor):
    """MOP1 (Schaffer, via Huband et al.)."""
    return (
        [lambda x: float(x[0] ** 2), lambda x: float((x[0] - 2.0) ** 2)],
        [lambda x: np.array([2.0 * x[0]]), lambda x: np.array([2.0 * (x[0] - 2.0)])],
    )


@_register("AP2")
def _ap2(desc: ProblemDescriptor):
    """AP2 (Ansary and Panda)."""
    return (
        [lambda x: float(x[0] ** 2 - 4.0), lambda x: float((x[0] - 1.0) ** 2)],
        [lambda x: np.array([2.0 * x[0]]), lambda x: np.array([2.0 * (x[0] - 1.0)])],
    )


def _squared_distances(centers: list[tuple[float, ...]]):
    def objective(c):
        c = np.asarray(c)
        return lambda x: float(np.sum((x - c) ** 2))

    def gradient(c):
        c = np.asarray(c)
        return lambda x: 2.0 * (x - c)

    return [objective(c) for c in centers], [gradient(c) for c in centers]


@_register("MHHM1")
def _mhhm1(desc: ProblemDescriptor):
    """MHHM1 (via Huband et al.): three shifted parabolas."""
    return _squared_distances([(0.8,), (0.85,), (0.9,)])


@_register("MHHM2")
def _mhhm2(desc: ProblemDescriptor):
    """MHHM2 (via Huband et al.): three shifted paraboloids."""
    return _squared_distances([(0.8, 0.6), (0.85, 0.7), (0.9, 0.6)])


# =============================================================================
# Other flagged-convex problems
# =============================================================================


@_register("SD")
def _sd(desc: ProblemDescriptor):
    """SD (Stadler and Dauer): a four-bar truss design problem."""
    r2 = np.sqrt(2.0)
    w1 = np.array([2.0, r2, r2, 1.0])
    w2 = np.array([2.0, 2.0 * r2, 2.0 * r2, 2.0])
    return (
        [lambda x: float(w1 @ x), lambda x: float(np.sum(w2 / x))],
        [lambda x: w1.copy(), lambda x: -w2 / x**2],
    )


@_register("PNR")
def _pnr(desc: ProblemDescriptor):
    """PNR (Preuss, Naujoks and Rudolph)."""

    def f1(x):
        return float(x[0] ** 4 + x[1] ** 4 - x[0] ** 2 + x[1] ** 2 - 10.0 * x[0] * x[1] + 0.25 * x[0] + 20.0)

    def g1(x):
        return np.array([
            4.0 * x[0] ** 3 - 2.0 * x[0] - 10.0 * x[1] + 0.25,
            4.0 * x[1] ** 3 + 2.0 * x[1] - 10.0 * x[0],
        ])

    return (
        [f1, lambda x: float((x[0] - 1.0) ** 2 + x[1] ** 2)],
        [g1, lambda x: np.array([2.0 * (x[0] - 1.0), 2.0 * x[1]])],
    )


@_register("DGO2")
def _dgo2(desc: ProblemDescriptor):
    """DGO2 (via Huband et al.). f2 is only defined for |x| < 9."""
    return (
        [lambda x: float(x[0] ** 2), lambda x: float(9.0 - np.sqrt(81.0 - x[0] ** 2))],
        [lambda x: np.array([2.0 * x[0]]), lambda x: np.array([x[0] / np.sqrt(81.0 - x[0] ** 2)])],
    )


# =============================================================================
# Nonconvex problems
# =============================================================================


@_register("DGO1")
def _dgo1(desc: ProblemDescriptor):
    """DGO1 (via Huband et al.): two phase-shifted sines."""
    return (
        [lambda x: float(np.sin(x[0])), lambda x: float(np.sin(x[0] + 0.7))],
        [lambda x: np.array([np.cos(x[0])]), lambda x: np.array([np.cos(x[0] + 0.7)])],
    )


@_register("Lov2")
def _lov2(desc: ProblemDescriptor):
    """Lov2 (Lovison)."""

    def f2(x):
        return float(-(x[1] - x[0] ** 3) / (x[0] + 1.0))

    def g2(x):
        denom = x[0] + 1.0
        return np.array([
            (2.0 * x[0] ** 3 + 3.0 * x[0] ** 2 + x[1]) / denom**2,
            -1.0 / denom,
        ])

    return ([lambda x: float(x[1]), f2], [lambda x: np.array([0.0, 1.0]), g2])


@_register("Lov3")
def _lov3(desc: ProblemDescriptor):
    """Lov3 (Lovison). f2 is unbounded below along x2."""
    return (
        [
            lambda x: float(x[0] ** 2 + x[1] ** 2),
            lambda x: float((x[0] - 6.0) ** 2 - (x[1] + 0.3) ** 2),
        ],
        [
            lambda x: np.array([2.0 * x[0], 2.0 * x[1]]),
            lambda x: np.array([2.0 * (x[0] - 6.0), -2.0 * (x[1] + 0.3)]),
        ],
    )


@_register("Lov4")
def _lov4(desc: ProblemDescriptor):
    """Lov4 (Lovison): a paraboloid with two Gaussian bumps against a shifted paraboloid."""

    def bumps(x):
        return np.exp(-((x[0] + 2.0) ** 2) - x[1] ** 2), np.exp(-((x[0] - 2.0) ** 2) - x[1] ** 2)

    def f1(x):
        e1, e2 = bumps(x)
        return float(x[0] ** 2 + x[1] ** 2 + 4.0 * (e1 + e2))

    def g1(x):
        e1, e2 = bumps(x)
        return np.array([
            2.0 * x[0] - 8.0 * ((x[0] + 2.0) * e1 + (x[0] - 2.0) * e2),
            2.0 * x[1] - 8.0 * x[1] * (e1 + e2),
        ])

    return (
        [f1, lambda x: float((x[0] - 6.0) ** 2 + (x[1] + 0.5) ** 2)],
        [g1, lambda x: np.array([2.0 * (x[0] - 6.0), 2.0 * (x[1] + 0.5)])],
    )


@_register("SK1")
def _sk1(desc: ProblemDescriptor):
    """SK1 (Sefrioui, via Huband et al.), written as a minimization."""
    return (
        [
            lambda x: float(x[0] ** 4 + 3.0 * x[0] ** 3 - 10.0 * x[0] ** 2 - 10.0 * x[0] - 10.0),
            lambda x: float(0.5 * x[0] ** 4 - 2.0 * x[0] ** 3 - 10.0 * x[0] ** 2 + 10.0 * x[0] - 5.0),
        ],
        [
            lambda x: np.array([4.0 * x[0] ** 3 + 9.0 * x[0] ** 2 - 20.0 * x[0] - 10.0]),
            lambda x: np.array([2.0 * x[0] ** 3 - 6.0 * x[0] ** 2 - 20.0 * x[0] + 10.0]),
        ],
    )


@_register("SLCDT1")
def _slcdt1(desc: ProblemDescriptor):
    """SLCDT1 (Schuetze, Laumanns, Coello, Dellnitz and Talbi)."""
    bump = 0.85

    def parts(x):
        u = x[0] + x[1]
        v = x[0] - x[1]
        a = np.sqrt(1.0 + u**2)
        b = np.sqrt(1.0 + v**2)
        c = bump * np.exp(-(v**2))
        return u, v, a, b, c

    def objective(sign: float):
        def f(x):
            _, v, a, b, c = parts(x)
            return float(0.5 * (a + b + sign * v) + c)

        return f

    def gradient(sign: float):
        def g(x):
            u, v, a, b, c = parts(x)
            da = u / a
            db = v / b
            dc = -2.0 * v * c
            return np.array([
                0.5 * (da + db + sign) + dc,
                0.5 * (da - db - sign) - dc,
            ])

        return g

    return [objective(1.0), objective(-1.0)], [gradient(1.0), gradient(-1.0)]


@_register("MOP2")
def _mop2(desc: ProblemDescriptor):
    """MOP2 (Fonseca and Fleming, via Huband et al.)."""
    shift = 1.0 / np.sqrt(desc.n)

    def objective(sign: float):
        return lambda x: float(1.0 - np.exp(-np.sum((x - sign * shift) ** 2)))

    def gradient(sign: float):
        def g(x):
            r = x - sign * shift
            return 2.0 * r * np.exp(-np.sum(r**2))

        return g

    return [objective(1.0), objective(-1.0)], [gradient(1.0), gradient(-1.0)]


@_register("LDTZ")
def _ldtz(desc: ProblemDescriptor):
    """LDTZ (Laumanns, Thiele, Deb and Zitzler). Unbounded below along x3."""
    h = 0.5 * np.pi

    def f1(x):
        return float(3.0 - (1.0 + x[2]) * np.cos(h * x[0]) * np.cos(h * x[1]))

    def g1(x):
        c0, s0, c1, s1 = np.cos(h * x[0]), np.sin(h * x[0]), np.cos(h * x[1]), np.sin(h * x[1])
        r = 1.0 + x[2]
        return np.array([r * h * s0 * c1, r * h * c0 * s1, -c0 * c1])

    def f2(x):
        return float(3.0 - (1.0 + x[2]) * np.cos(h * x[0]) * np.sin(h * x[1]))

    def g2(x):
        c0, s0, c1, s1 = np.cos(h * x[0]), np.sin(h * x[0]), np.cos(h * x[1]), np.sin(h * x[1])
        r = 1.0 + x[2]
        return np.array([r * h * s0 * s1, -r * h * c0 * c1, -c0 * s1])

    def f3(x):
        return float(3.0 - (1.0 + x[2]) * np.sin(h * x[0]))

    def g3(x):
        r = 1.0 + x[2]
        return np.array([-r * h * np.cos(h * x[0]), 0.0, -np.sin(h * x[0])])

    return [f1, f2, f3], [g1, g2, g3]


@_register("Hil1")
def _hil1(desc: ProblemDescriptor):
    """Hil1 (Hillermeier)."""
    deg = 2.0 * np.pi / 360.0

    def parts(x):
        a = deg * (45.0 + 40.0 * np.sin(2.0 * np.pi * x[0]) + 25.0 * np.sin(np.pi * x[0]))
        da = deg * (80.0 * np.pi * np.cos(2.0 * np.pi * x[0]) + 25.0 * np.pi * np.cos(np.pi * x[0]))
        b = 1.0 + 0.5 * np.cos(2.0 * np.pi * x[1])
        db = -np.pi * np.sin(2.0 * np.pi * x[1])
        return a, da, b, db

    def f1(x):
        a, _, b, _ = parts(x)
        return float(np.cos(a) * b)

    def g1(x):
        a, da, b, db = parts(x)
        return np.array([-np.sin(a) * da * b, np.cos(a) * db])

    def f2(x):
        a, _, b, _ = parts(x)
        return float(np.sin(a) * b)

    def g2(x):
        a, da, b, db = parts(x)
        return np.array([np.cos(a) * da * b, np.sin(a) * db])

    return [f1, f2], [g1, g2]


@_register("AP3")
def _ap3(desc: ProblemDescriptor):
    """AP3 (Ansary and Panda): a quartic against a Rosenbrock valley."""

    def f2(x):
        return float((x[1] - x[0] ** 2) ** 2 + (1.0 - x[0]) ** 2)

    def g2(x):
        r = x[1] - x[0] ** 2
        return np.array([-4.0 * x[0] * r - 2.0 * (1.0 - x[0]), 2.0 * r])

    return (
        [lambda x: float(0.25 * ((x[0] - 1.0) ** 4 + 2.0 * (x[1] - 2.0) ** 4)), f2],
        [lambda x: np.array([(x[0] - 1.0) ** 3, 2.0 * (x[1] - 2.0) ** 3]), g2],
    )


@_register("FF1")
def _ff1(desc: ProblemDescriptor):
    """FF1 (Fonseca and Fleming, via Huband et al.)."""

    def objective(center):
        c = np.asarray(center)
        return lambda x: float(1.0 - np.exp(-np.sum((x - c) ** 2)))

    def gradient(center):
        c = np.asarray(center)

        def g(x):
            r = x - c
            return 2.0 * r * np.exp(-np.sum(r**2))

        return g

    centers = [(1.0, -1.0), (-1.0, 1.0)]
    return [objective(c) for c in centers], [gradient(c) for c in centers]


@_register("KW2")
def _kw2(desc: ProblemDescriptor):
    """KW2 (Kim and de Weck)."""

    def f1(x):
        x1, x2 = x
        return float(
            -3.0 * (1.0 - x1) ** 2 * np.exp(-(x1**2) - (x2 + 1.0) ** 2)
            + 10.0 * (x1 / 5.0 - x1**3 - x2**5) * np.exp(-(x1**2) - x2**2)
            + 3.0 * np.exp(-((x1 + 2.0) ** 2) - x2**2)
            - 0.5 * (2.0 * x1 + x2)
        )

    def g1(x):
        x1, x2 = x
        ea = np.exp(-(x1**2) - (x2 + 1.0) ** 2)
        eb = np.exp(-(x1**2) - x2**2)
        ec = np.exp(-((x1 + 2.0) ** 2) - x2**2)
        p = x1 / 5.0 - x1**3 - x2**5
        return np.array([
            ea * (6.0 * (1.0 - x1) + 6.0 * x1 * (1.0 - x1) ** 2)
            + 10.0 * eb * (0.2 - 3.0 * x1**2 - 2.0 * x1 * p)
            - 6.0 * (x1 + 2.0) * ec
            - 1.0,
            6.0 * (1.0 - x1) ** 2 * (x2 + 1.0) * ea
            + 10.0 * eb * (-5.0 * x2**4 - 2.0 * x2 * p)
            - 6.0 * x2 * ec
            - 0.5,
        ])

    def f2(x):
        x1, x2 = x
        return float(
            -3.0 * (1.0 + x2) ** 2 * np.exp(-(x2**2) - (1.0 - x1) ** 2)
            + 10.0 * (-x2 / 5.0 + x2**3 + x1**5) * np.exp(-(x1**2) - x2**2)
            + 3.0 * np.exp(-((2.0 - x2) ** 2) - x1**2)
        )

    def g2(x):
        x1, x2 = x
        ed = np.exp(-(x2**2) - (1.0 - x1) ** 2)
        eb = np.exp(-(x1**2) - x2**2)
        ee = np.exp(-((2.0 - x2) ** 2) - x1**2)
        q = -x2 / 5.0 + x2**3 + x1**5
        return np.array([
            -6.0 * (1.0 + x2) ** 2 * (1.0 - x1) * ed
            + 10.0 * eb * (5.0 * x1**4 - 2.0 * x1 * q)
            - 6.0 * x1 * ee,
            ed * (-6.0 * (1.0 + x2) + 6.0 * x2 * (1.0 + x2) ** 2)
            + 10.0 * eb * (-0.2 + 3.0 * x2**2 - 2.0 * x2 * q)
            + 6.0 * (2.0 - x2) * ee,
        ])

    return [f1, f2], [g1, g2]


# =============================================================================
# Registry
# =============================================================================


def list_problem_ids() -> list[str]:
    """All registered problem ids in catalog order."""
    return [d.id for d in get_all_descriptors() if d.id in _BUILDERS]


def get_descriptor(problem_id: str) -> ProblemDescriptor:
    descriptor = get_descriptor_by_id(problem_id)
    if descriptor is None or problem_id not in _BUILDERS:
        raise UnknownProblem(problem_id)
    return descriptor


@lru_cache(maxsize=None)
def get_problem(problem_id: str) -> MopProblem:
    """Build the MopProblem of a registered id."""
    descriptor = get_descriptor(problem_id)
    objectives, gradients = _BUILDERS[problem_id](descriptor)
    return MopProblem(
        name=descriptor.id,
        n=descriptor.n,
        m=descriptor.m,
        objectives=tuple(objectives),
        gradients=tuple(gradients),
        box_low=np.array(descriptor.box_low),
        box_high=np.array(descriptor.box_high),
        poles=_POLES.get(problem_id, ()),
    )


def sample_starts(problem: MopProblem, count: int, seed: int) -> list[np.ndarray]:
    """`count` points drawn uniformly from the problem's box; identical for identical seeds."""
    if count < 1:
        raise ValueError("count must be positive")
    rng = np.random.default_rng(seed)
    points = rng.uniform(problem.box_low, problem.box_high, size=(count, problem.n))
    return [row.copy() for row in points]


def problem_info(problem_id: str) -> ProblemInfo:
    """Catalog metadata of a registered problem."""
    d = get_descriptor(problem_id)
    return ProblemInfo(
        id=d.id,
        n=d.n,
        m=d.m,
        box_low=list(d.box_low),
        box_high=list(d.box_high),
        convex=d.convex,
        source=d.source,
        convexity_note=KNOWN_CONVEXITY_DISCREPANCIES.get(d.id),
    )
