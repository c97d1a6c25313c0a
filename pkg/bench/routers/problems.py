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

from fastapi import APIRouter, HTTPException, Query, status

from constants.solver_defaults import DEFAULT_GRADIENT_SAMPLES, DEFAULT_SEED
from models.problem import GradientCheckReport, ProblemInfo
from models.run import ErrorResponse
from services.errors import UnknownProblem
from services.mop_core import check_gradients
from services.problem_registry import get_problem, list_problem_ids, problem_info

router = APIRouter(prefix="/api/problems", tags=["problems"])


def _not_found(e: UnknownProblem) -> HTTPException:
    return HTTPException(
        status_code=status.HTTP_404_NOT_FOUND,
        detail={"error_code": e.error_code},
    )


@router.get(
    "",
    response_model=list[ProblemInfo],
    summary="List all problems",
    description="Returns the catalog metadata of every registered test problem.",
)
async def list_problems() -> list[ProblemInfo]:
    return [problem_info(problem_id) for problem_id in list_problem_ids()]


@router.get(
    "/{problem_id}",
    response_model=ProblemInfo,
    summary="Get a problem",
    responses={404: {"model": ErrorResponse, "description": "Problem not found"}},
)
async def get_problem_info(problem_id: str) -> ProblemInfo:
    try:
        return problem_info(problem_id)
    except UnknownProblem as e:
        raise _not_found(e)


@router.get(
    "/{problem_id}/gradient-check",
    response_model=GradientCheckReport,
    summary="Check analytic gradients",
    description="Compares the analytic gradients with central differences at uniform samples from the box.",
    responses={404: {"model": ErrorResponse, "description": "Problem not found"}},
)
def gradient_check(
    problem_id: str,
    samples: int = Query(DEFAULT_GRADIENT_SAMPLES, ge=1, le=10_000),
    seed: int = Query(DEFAULT_SEED),
) -> GradientCheckReport:
    try:
        problem = get_problem(problem_id)
    except UnknownProblem as e:
        raise _not_found(e)
    return check_gradients(problem, samples, seed, raise_on_failure=False)
