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

"""Command line entry point: bench run | front | list-problems | check-gradients | serve."""

import argparse
import json
import logging
import sys
from pathlib import Path

from config import Config, init_config, parse_args
from models.experiment import ExperimentConfig
from models.solver import SolverMethod
from services.errors import BenchError
from services.experiment_service import emit_front, run_experiment
from services.mop_core import check_gradients
from services.problem_registry import get_problem, list_problem_ids, problem_info
from startup import configure_logging, run_startup_tasks

logger = logging.getLogger(__name__)


def _experiment_config(args: argparse.Namespace, config: Config, **overrides) -> ExperimentConfig:
    values = {
        "starts": args.starts,
        "seed": args.seed,
        "epsilon": args.epsilon,
        "max_iters": args.max_iters,
        "jobs": config.jobs,
        "check_invariants": args.check_invariants,
        "b0": args.b0,
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(**values)


def cmd_run(args: argparse.Namespace, config: Config) -> int:
    experiment = _experiment_config(
        args,
        config,
        problems=args.problems,
        methods=args.methods,
        out_dir=config.out_dir,
    )
    rows = run_experiment(experiment)
    print(f"{'problem':<8} {'method':<7} {'iter':>9} {'time_ms':>10} {'feval':>9} {'nf':>4}")
    for row in rows:
        print(
            f"{row.problem:<8} {row.method.value:<7} {row.mean_iter:>9.2f} "
            f"{row.mean_time_ms:>10.2f} {row.mean_feval:>9.2f} {row.nf:>4}"
        )
    return 0


def cmd_front(args: argparse.Namespace, config: Config) -> int:
    method = SolverMethod(args.method)
    out_path = Path(args.front_out) if args.front_out else config.out_dir / f"{args.problem}_{method.value}_front.csv"
    sidecar = emit_front(args.problem, method, args.starts, args.seed, out_path, _experiment_config(args, config))
    print(f"{sidecar.points} points written to {out_path} (nf={sidecar.nf}, uncertified={sidecar.uncertified})")
    return 0


def cmd_list_problems(args: argparse.Namespace, config: Config) -> int:
    infos = [problem_info(problem_id) for problem_id in list_problem_ids()]
    if args.json:
        print(json.dumps([info.model_dump() for info in infos], indent=2))
        return 0
    print(f"{'id':<8} {'n':>3} {'m':>2} {'convex':<7} {'box':<28} source")
    for info in infos:
        lows, highs = set(info.box_low), set(info.box_high)
        if len(lows) == 1 and len(highs) == 1:
            box = f"[{info.box_low[0]:g}, {info.box_high[0]:g}]^{info.n}"
        else:
            box = " x ".join(f"[{lo:.4g}, {hi:.4g}]" for lo, hi in zip(info.box_low, info.box_high))
        flag = "yes" if info.convex else "no"
        if info.convexity_note:
            flag += "*"
        print(f"{info.id:<8} {info.n:>3} {info.m:>2} {flag:<7} {box:<28} {info.source}")
    return 0


def cmd_check_gradients(args: argparse.Namespace, config: Config) -> int:
    failed = 0
    for problem_id in args.problems or list_problem_ids():
        report = check_gradients(get_problem(problem_id), args.samples, args.seed, raise_on_failure=False)
        worst = max(report.max_relative_error)
        status = "ok" if report.passed else "FAILED"
        print(f"{report.problem:<8} {status:<7} worst relative error {worst:.2e}")
        failed += 0 if report.passed else 1
    return 1 if failed else 0


def cmd_serve(args: argparse.Namespace, config: Config) -> int:
    import uvicorn

    from main import create_app

    uvicorn.run(create_app(), host=config.host, port=config.port, log_level=config.log_level.lower())
    return 0


COMMANDS = {
    "run": cmd_run,
    "front": cmd_front,
    "list-problems": cmd_list_problems,
    "check-gradients": cmd_check_gradients,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    """Main entry point of the bench command."""
    args = parse_args(argv)
    config = init_config(args)
    if args.command in ("run", "front", "serve"):
        run_startup_tasks()
    else:
        configure_logging()

    try:
        return COMMANDS[args.command](args, config)
    except BenchError as e:
        logger.error(f"{e.error_code.value}: {e.message}")
        return 1
    except ValueError as e:
        logger.error(f"Invalid configuration: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
