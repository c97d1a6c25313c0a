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
import os
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from config import LOG_FORMAT, get_config, init_config
from routers.health import router as health_router
from routers.problems import router as problems_router
from routers.runs import router as runs_router
from startup import run_startup_tasks

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan handler for startup and shutdown tasks."""
    run_startup_tasks()
    logger.info(f"Results directory: {get_config().out_dir}")
    yield


def create_app() -> FastAPI:
    """Create and configure the FastAPI application."""
    try:
        get_config()
    except RuntimeError:
        # Started without the CLI (e.g. uvicorn main:create_app --factory)
        init_config()
        logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)

    application = FastAPI(
        title="ParetoForge API",
        description="Quasi-Newton methods and benchmarks for multiobjective optimization",
        version="0.1.0",
        lifespan=lifespan,
    )

    cors_origins_env = os.environ.get("PARETOFORGE_CORS_ORIGINS", "")
    if cors_origins_env:
        application.add_middleware(
            CORSMiddleware,
            allow_origins=[origin.strip() for origin in cors_origins_env.split(",")],
            allow_credentials=True,
            allow_methods=["*"],
            allow_headers=["*"],
        )

    application.include_router(health_router)
    application.include_router(problems_router)
    application.include_router(runs_router)

    return application
