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

import argparse
import logging
import os
from pathlib import Path

from constants.solver_defaults import (
    DEFAULT_EPSILON,
    DEFAULT_GRADIENT_SAMPLES,
    DEFAULT_MAX_ITERS,
    DEFAULT_METHOD,
    DEFAULT_SEED,
    DEFAULT_STARTS,
)

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 23980
DEFAULT_LOG_LEVEL = "INFO"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def get_default_paretoforge_dir() -> Path:
    """Get the default ParetoForge base directory."""
    return Path.home() / ".paretoforge"


def get_default_results_dir() -> Path:
    """Get the default results directory."""
    return get_default_paretoforge_dir() / "results"


def _comma_list(value: str) -> list[str]:
    return [item.strip() for item in value.split(",") if item.strip()]


def _add_solver_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--starts", type=int, default=DEFAULT_STARTS, help=f"Starting points per problem (default: {DEFAULT_STARTS})")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"Seed of the start sampler (default: {DEFAULT_SEED})")
    parser.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON, help=f"Criticality tolerance (default: {DEFAULT_EPSILON})")
    parser.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS, help=f"Iteration budget per run (default: {DEFAULT_MAX_ITERS})")
    parser.add_argument(
        "--jobs",
        type=int,
        default=None,
        help="Worker processes (overrides PARETOFORGE_JOBS env var, default: 1)",
    )
    parser.add_argument(
        "--check-invariants",
        action="store_true",
        help="Verify update and descent invariants in every iteration",
    )
    parser.add_argument(
        "--b0",
        type=str,
        default="identity",
        choices=["identity", "scaled_identity"],
        help="Initial metric of the quasi-Newton methods (default: identity)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bench",
        description="ParetoForge - Quasi-Newton methods and benchmarks for multiobjective optimization",
    )
    parser.add_argument(
        "--log-level",
        type=str,
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Log level (overrides PARETOFORGE_LOG_LEVEL env var, default: INFO)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run every method on every problem and aggregate the statistics")
    run.add_argument("--problems", type=_comma_list, default=None, help="Comma separated problem ids (default: all)")
    run.add_argument("--methods", type=_comma_list, default=None, help="Comma separated methods (default: mfqnmo,mqnmo,qnmo,sd)")
    run.add_argument("--out", type=str, default=None, help="Output directory (overrides PARETOFORGE_OUT env var)")
    _add_solver_arguments(run)

    front = commands.add_parser("front", help="Write the final objective vectors of converged runs as a CSV point cloud")
    front.add_argument("--problem", type=str, required=True, help="Problem id")
    front.add_argument("--method", type=str, default=DEFAULT_METHOD, help=f"Method (default: {DEFAULT_METHOD})")
    front.add_argument("--out", dest="front_out", type=str, default=None, help="CSV path (default: <results>/<problem>_<method>_front.csv)")
    _add_solver_arguments(front)

    listing = commands.add_parser("list-problems", help="Print the problem catalog")
    listing.add_argument("--json", action="store_true", help="Print JSON instead of a table")

    check = commands.add_parser("check-gradients", help="Compare analytic gradients with central differences")
    check.add_argument("--problems", type=_comma_list, default=None, help="Comma separated problem ids (default: all)")
    check.add_argument("--samples", type=int, default=DEFAULT_GRADIENT_SAMPLES, help=f"Points per problem (default: {DEFAULT_GRADIENT_SAMPLES})")
    check.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"Sampling seed (default: {DEFAULT_SEED})")

    serve = commands.add_parser("serve", help="Start the HTTP service")
    serve.add_argument("--host", type=str, default=DEFAULT_HOST, help=f"Host to bind the server to (default: {DEFAULT_HOST})")
    serve.add_argument("--port", type=int, default=DEFAULT_PORT, help=f"Port to bind the server to (default: {DEFAULT_PORT})")
    serve.add_argument("--out", type=str, default=None, help="Output directory (overrides PARETOFORGE_OUT env var)")

    return parser


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """Parse command line arguments."""
    return build_parser().parse_args(argv)


class Config:
    """Application configuration."""

    def __init__(self, args: argparse.Namespace | None = None):
        self._args = args if args is not None else argparse.Namespace()
        self._out_dir: Path | None = None

    def _arg(self, name: str):
        return getattr(self._args, name, None)

    @property
    def paretoforge_dir(self) -> Path:
        """Get the ParetoForge base directory."""
        return get_default_paretoforge_dir()

    @property
    def out_dir(self) -> Path:
        """
        Get the output directory.
        Priority: CLI flag > environment variable > default
        """
        if self._out_dir is not None:
            return self._out_dir

        # 1. CLI flag has highest priority
        if self._arg("out"):
            self._out_dir = Path(self._arg("out"))
            return self._out_dir

        # 2. Environment variable
        env_out = os.environ.get("PARETOFORGE_OUT")
        if env_out:
            self._out_dir = Path(env_out)
            return self._out_dir

        # 3. Default
        self._out_dir = get_default_results_dir()
        return self._out_dir

    @property
    def jobs(self) -> int:
        """
        Get the number of worker processes.
        Priority: CLI flag > environment variable > default
        """
        if self._arg("jobs") is not None:
            return max(1, int(self._arg("jobs")))
        env_jobs = os.environ.get("PARETOFORGE_JOBS", "").strip()
        if env_jobs:
            try:
                return max(1, int(env_jobs))
            except ValueError:
                logging.getLogger(__name__).warning(f"Ignoring invalid PARETOFORGE_JOBS value: {env_jobs}")
        return 1

    @property
    def log_level(self) -> str:
        """
        Get the log level name.
        Priority: CLI flag > environment variable > default
        """
        if self._arg("log_level"):
            return self._arg("log_level")
        env_level = os.environ.get("PARETOFORGE_LOG_LEVEL", "").strip().upper()
        if env_level in ("DEBUG", "INFO", "WARNING", "ERROR"):
            return env_level
        return DEFAULT_LOG_LEVEL

    @property
    def host(self) -> str:
        """Get the host to bind the server to."""
        return self._arg("host") or DEFAULT_HOST

    @property
    def port(self) -> int:
        """Get the port to bind the server to."""
        return self._arg("port") or DEFAULT_PORT


# Global config instance (initialized by run.py or main.py)
config: Config | None = None


def init_config(args: argparse.Namespace | None = None) -> Config:
    """Initialize the global configuration."""
    global config
    config = Config(args)
    return config


def get_config() -> Config:
    """Get the global configuration instance."""
    if config is None:
        raise RuntimeError("Configuration not initialized. Call init_config() first.")
    return config
