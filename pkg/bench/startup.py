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

from config import LOG_FORMAT, get_config

logger = logging.getLogger(__name__)


def configure_logging(level: str | None = None) -> None:
    """Configure the root logger with the application format."""
    level_name = level or get_config().log_level
    logging.basicConfig(level=getattr(logging, level_name, logging.INFO), format=LOG_FORMAT)


def ensure_directories() -> None:
    """
    Ensure the results directory exists on startup.
    """
    config = get_config()
    config.out_dir.mkdir(parents=True, exist_ok=True)
    logger.debug(f"Results directory: {config.out_dir}")


def run_startup_tasks() -> None:
    """Run all startup tasks."""
    configure_logging()
    ensure_directories()
