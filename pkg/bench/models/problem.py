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

from pydantic import BaseModel, Field


class ProblemInfo(BaseModel):
    """Catalog metadata of a registered test problem."""

    id: str = Field(..., description="Problem identifier")
    n: int = Field(..., ge=1, description="Number of variables")
    m: int = Field(..., ge=1, description="Number of objectives")
    box_low: list[float] = Field(..., description="Lower sampling bound per coordinate")
    box_high: list[float] = Field(..., description="Upper sampling bound per coordinate")
    convex: bool = Field(..., description="Convex flag as listed in the problem catalog")
    source: str = Field(..., description="Literature citation key")
    convexity_note: str | None = Field(default=None, description="Known disagreement with the convex flag")


class GradientCheckReport(BaseModel):
    """Outcome of comparing analytic gradients with central differences."""

    problem: str = Field(..., description="Problem identifier")
    samples: int = Field(..., ge=1, description="Number of sampled points")
    seed: int = Field(..., description="Sampling seed")
    max_relative_error: list[float] = Field(..., description="Worst relative error per objective")
    worst_point: list[float] | None = Field(default=None, description="Point of the overall worst error")
    tolerance: float = Field(..., description="Pass threshold")
    passed: bool = Field(..., description="Whether every objective is within tolerance")
