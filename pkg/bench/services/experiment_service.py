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

"""Batch experiments: many starts, several methods, aggregated statistics."""

import logging
import time
from collections import Counter
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from constants.solver_defaults import (
    AGGREGATE_FILENAME,
    CRITICALITY_CERT_TOL,
    FEVAL_UNIT,
    RUNS_FILENAME,
    SUMMARY_FILENAME,
)
from models.experiment import AggregateRow, ExperimentConfig, ExperimentSummary, FrontSidecar, MethodSummary
from models.run import FailureReason, RunRecord
from models.solver import SolverConfig, SolverMethod
from services.problem_registry import get_problem, sample_starts
from services.solver_service import solve
from utils.output_files import ensure_dir, write_aggregate_csv, write_front, write_json, write_run_records

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunTask:
    """Everything a worker needs for one run; problems are resolved by id inside the worker."""

    problem_id: str
    start_index: int
    x0: tuple[float, ...]
    config: SolverConfig


def _execute_task(task: RunTask) -> RunRecord:
    problem = get_problem(task.problem_id)
    return solve(problem, np.array(task.x0), task.config, start_index=task.start_index)


def build_tasks(config: ExperimentConfig) -> list[RunTask]:
    """Tasks in (problem, method, start) order; every method sees the same starts."""
    tasks: list[RunTask] = []
    for problem_id in config.problems:
        problem = get_problem(problem_id)
        starts = sample_starts(problem, config.starts, config.seed)
        for method in config.methods:
            solver_config = config.solver_config(method)
            for i, x0 in enumerate(starts):
                tasks.append(RunTask(problem_id, i, tuple(float(v) for v in x0), solver_config))
    return tasks


def execute_tasks(tasks: Sequence[RunTask], jobs: int = 1) -> list[RunRecord]:
    """Run every task; results come back in task order regardless of ``jobs``."""
    if jobs <= 1 or len(tasks) <= 1:
        return [_execute_task(task) for task in tasks]
    chunksize = max(1, len(tasks) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(_execute_task, tasks, chunksize=chunksize))


def collect_runs(config: ExperimentConfig) -> list[RunRecord]:
    tasks = build_tasks(config)
    logger.info(
        f"Running {len(tasks)} runs ({len(config.problems)} problems x {len(config.methods)} methods "
        f"x {config.starts} starts) with {config.jobs} worker(s)"
    )
    started = time.perf_counter()
    records = execute_tasks(tasks, config.jobs)
    logger.info(f"Finished {len(records)} runs in {time.perf_counter() - started:.1f}s")
    return records


# =============================================================================
# Aggregation
# =============================================================================


def _group(records: Sequence[RunRecord]) -> dict[tuple[str, SolverMethod], list[RunRecord]]:
    groups: dict[tuple[str, SolverMethod], list[RunRecord]] = {}
    for record in records:
        groups.setdefault((record.problem, record.method), []).append(record)
    return groups


def _mean(values: Sequence[float]) -> float:
    return float(np.mean(values)) if values else 0.0


def aggregate(records: Sequence[RunRecord]) -> list[AggregateRow]:
    """One row per (problem, method) in first-seen order. Failed runs count toward the means and NF."""
    rows = []
    for (problem, method), group in _group(records).items():
        rows.append(
            AggregateRow(
                problem=problem,
                method=method,
                mean_iter=_mean([r.iterations for r in group]),
                mean_time_ms=_mean([r.time_ms for r in group]),
                mean_feval=_mean([r.f_evals for r in group]),
                nf=sum(1 for r in group if not r.converged),
            )
        )
    return rows


def summarize(records: Sequence[RunRecord], config: ExperimentConfig) -> ExperimentSummary:
    entries = []
    for (problem, method), group in _group(records).items():
        converged = [r for r in group if r.converged]
        failures = Counter(r.reason.value for r in group if r.reason != FailureReason.CONVERGED)
        updates = sum(r.metric_updates for r in group)
        resets = sum(r.metric_resets for r in group)
        iterations = sum(r.iterations for r in group)
        attempted = updates + resets
        entries.append(
            MethodSummary(
                problem=problem,
                method=method,
                runs=len(group),
                converged=len(converged),
                nf=len(group) - len(converged),
                mean_iter=_mean([r.iterations for r in group]),
                mean_time_ms=_mean([r.time_ms for r in group]),
                mean_feval=_mean([r.f_evals for r in group]),
                mean_geval=_mean([r.g_evals for r in group]),
                converged_mean_iter=_mean([r.iterations for r in converged]) if converged else None,
                converged_mean_time_ms=_mean([r.time_ms for r in converged]) if converged else None,
                converged_mean_feval=_mean([r.f_evals for r in converged]) if converged else None,
                failures=dict(sorted(failures.items())),
                metric_updates=updates,
                metric_resets=resets,
                skipped_updates=sum(r.skipped_updates for r in group),
                reset_fraction=resets / attempted if attempted else None,
                unit_step_fraction=sum(r.unit_steps for r in group) / iterations if iterations else None,
                invariant_violations=sum(len(r.invariant_violations) for r in group),
            )
        )
    return ExperimentSummary(
        starts=config.starts,
        seed=config.seed,
        epsilon=config.epsilon,
        max_iters=config.max_iters,
        feval_unit=FEVAL_UNIT,
        entries=entries,
    )


# =============================================================================
# Entry points
# =============================================================================


def run_experiment(config: ExperimentConfig) -> list[AggregateRow]:
    """Run the batch, write runs.jsonl / aggregate.csv / summary.json to out_dir (if set)."""
    records = collect_runs(config)
    rows = aggregate(records)
    for row in rows:
        logger.info(
            f"[{row.problem}/{row.method.value}] iter={row.mean_iter:.2f} "
            f"feval={row.mean_feval:.2f} time={row.mean_time_ms:.2f}ms nf={row.nf}"
        )

    if config.out_dir is not None:
        out_dir = ensure_dir(Path(config.out_dir))
        write_run_records(out_dir / RUNS_FILENAME, records)
        write_aggregate_csv(out_dir / AGGREGATE_FILENAME, rows)
        write_json(out_dir / SUMMARY_FILENAME, summarize(records, config))
        logger.info(f"Results written to {out_dir}")
    return rows


def emit_front(
    problem_id: str,
    method: SolverMethod,
    starts: int,
    seed: int,
    out_path: Path,
    config: ExperimentConfig | None = None,
) -> FrontSidecar:
    """Write the final objective vectors of converged runs to ``out_path`` (CSV) plus a JSON sidecar.

    ``config`` supplies the solver parameters (epsilon, max_iters, line search, jobs);
    its problems, methods, starts and seed are overridden by the explicit arguments.
    """
    problem = get_problem(problem_id)
    base = config or ExperimentConfig()
    experiment = ExperimentConfig(
        **{**base.model_dump(), "problems": [problem_id], "methods": [SolverMethod(method)], "starts": starts, "seed": seed}
    )
    records = collect_runs(experiment)

    converged = [r for r in records if r.converged]
    failures = Counter(r.reason.value for r in records if not r.converged)
    sd_norms = [r.final_sd_norm for r in converged if r.final_sd_norm is not None]
    uncertified = sum(1 for r in converged if r.final_sd_norm is None or r.final_sd_norm > CRITICALITY_CERT_TOL)
    if uncertified:
        logger.warning(f"[{problem_id}/{experiment.methods[0].value}] {uncertified} front point(s) fail the criticality certificate")

    out_path = Path(out_path)
    ensure_dir(out_path.parent)
    sidecar = FrontSidecar(
        problem=problem_id,
        method=experiment.methods[0],
        m=problem.m,
        starts=starts,
        seed=seed,
        epsilon=experiment.epsilon,
        max_iters=experiment.max_iters,
        points=len(converged),
        nf=len(records) - len(converged),
        failures=dict(sorted(failures.items())),
        max_sd_norm=max(sd_norms) if sd_norms else None,
        uncertified=uncertified,
        points_file=out_path.name,
    )
    write_front(out_path, [r.final_f for r in converged], sidecar)
    logger.info(f"[{problem_id}/{sidecar.method.value}] Wrote {len(converged)} front points to {out_path}")
    return sidecar
