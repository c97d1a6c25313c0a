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

import logging

import numpy as np
from fastapi import APIRouter, HTTPException, status

from error_codes import ErrorCode
from models.run import CriticalityRequest, CriticalityResponse, ErrorResponse, RunRecord, RunRequest
from services.errors import BenchError, UnknownProblem
from services.problem_registry import get_problem, sample_starts
from services.solver_service import criticality_report, solve

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api", tags=["runs"])


def _to_http(e: BenchError) -> HTTPException:
    code = status.HTTP_404_NOT_FOUND if isinstance(e, UnknownProblem) else status.HTTP_422_UNPROCESSABLE_CONTENT
    return HTTPException(status_code=code, detail={"error_code": e.error_code})


def _invalid_point() -> HTTPException:
    return HTTPException(
        status_code=status.HTTP_422_UNPROCESSABLE_CONTENT,
        detail={"error_code": ErrorCode.EXPERIMENT_INVALID_CONFIG},
    )


@router.post(
    "/runs",
    response_model=RunRecord,
    summary="Run a solver once",
    description="Runs one method from one starting point. Without x0 the start is sampled from the problem's box.",
    responses={
        404: {"model": ErrorResponse, "description": "Problem not found"},
        422: {"model": ErrorResponse, "description": "Invalid starting point"},
    },
)
def create_run(request: RunRequest) -> RunRecord:
    try:
        problem = get_problem(request.problem)
    except BenchError as e:
        raise _to_http(e)

    if request.x0 is None:
        x0 = sample_starts(problem, 1, request.seed if request.seed is not None else 0)[0]
    else:
        x0 = np.array(request.x0, dtype=float)
        if x0.shape != (problem.n,) or not np.all(np.isfinite(x0)):
            raise _invalid_point()

    record = solve(problem, x0, request.config)
    logger.info(
        f"[{problem.name}/{record.method.value}] HTTP run finished: "
        f"reason={record.reason.value} iterations={record.iterations}"
    )
    return record


@router.post(
    "/criticality",
    response_model=CriticalityResponse,
    summary="Certify a point",
    description="Returns the steepest-descent criticality pair (theta_SD, ||d_SD||) at a point.",
    responses={
        404: {"model": ErrorResponse, "description": "Problem not found"},
        422: {"model": ErrorResponse, "description": "Invalid point"},
    },
)
def criticality(request: CriticalityRequest) -> CriticalityResponse:
    try:
        problem = get_problem(request.problem)
    except BenchError as e:
        raise _to_http(e)

    x = np.array(request.x, dtype=float)
    if x.shape != (problem.n,) or not np.all(np.isfinite(x)):
        raise _invalid_point()
    theta_sd, d_sd_norm = criticality_report(problem, x)
    return CriticalityResponse(theta_sd=theta_sd, d_sd_norm=d_sd_norm)
