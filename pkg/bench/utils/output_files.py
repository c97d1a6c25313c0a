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

"""Writers and readers for the experiment output files."""

import csv
import json
import logging
from collections.abc import Iterable, Sequence
from pathlib import Path

from pydantic import BaseModel, ValidationError

from constants.solver_defaults import AGGREGATE_CSV_HEADER
from models.experiment import AggregateRow, FrontSidecar
from models.run import RunRecord
from services.errors import ExperimentIOError

logger = logging.getLogger(__name__)


def ensure_dir(path: Path) -> Path:
    """Create a directory (and parents) if missing."""
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        logger.error(f"Cannot create output directory {path}: {e}")
        raise ExperimentIOError(path, str(e)) from e
    return path


def write_run_records(path: Path, records: Iterable[RunRecord]) -> int:
    """Write one JSON object per run. Returns the number of lines written."""
    count = 0
    try:
        with open(path, "w", encoding="utf-8") as f:
            for record in records:
                f.write(record.model_dump_json(by_alias=True))
                f.write("\n")
                count += 1
    except OSError as e:
        logger.error(f"Cannot write run records to {path}: {e}")
        raise ExperimentIOError(path, str(e)) from e
    return count


def read_run_records(path: Path) -> list[RunRecord]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return [RunRecord.model_validate_json(line) for line in f if line.strip()]
    except (OSError, ValidationError) as e:
        raise ExperimentIOError(path, str(e)) from e


def write_aggregate_csv(path: Path, rows: Sequence[AggregateRow]) -> None:
    """Write the aggregate table; floats keep full repr precision."""
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(AGGREGATE_CSV_HEADER)
            for row in rows:
                writer.writerow([
                    row.problem,
                    row.method.value,
                    repr(row.mean_iter),
                    repr(row.mean_time_ms),
                    repr(row.mean_feval),
                    row.nf,
                ])
    except OSError as e:
        logger.error(f"Cannot write aggregate table to {path}: {e}")
        raise ExperimentIOError(path, str(e)) from e


def read_aggregate_csv(path: Path) -> list[AggregateRow]:
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames != AGGREGATE_CSV_HEADER:
                raise ExperimentIOError(path, f"unexpected header {reader.fieldnames}")
            return [AggregateRow.model_validate(row) for row in reader]
    except (OSError, ValidationError) as e:
        raise ExperimentIOError(path, str(e)) from e


def write_json(path: Path, model: BaseModel) -> None:
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(model.model_dump_json(indent=2))
            f.write("\n")
    except OSError as e:
        logger.error(f"Cannot write {path}: {e}")
        raise ExperimentIOError(path, str(e)) from e


def write_front(csv_path: Path, points: Sequence[Sequence[float]], sidecar: FrontSidecar) -> Path:
    """Write the front CSV (header f1..fm) and its JSON sidecar next to it.

    Returns the sidecar path.
    """
    sidecar_path = csv_path.with_suffix(".json")
    try:
        with open(csv_path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow([f"f{i + 1}" for i in range(sidecar.m)])
            for point in points:
                writer.writerow([repr(float(v)) for v in point])
    except OSError as e:
        logger.error(f"Cannot write front to {csv_path}: {e}")
        raise ExperimentIOError(csv_path, str(e)) from e
    write_json(sidecar_path, sidecar)
    return sidecar_path


def read_front(csv_path: Path) -> tuple[list[list[float]], FrontSidecar]:
    sidecar_path = csv_path.with_suffix(".json")
    try:
        with open(csv_path, "r", encoding="utf-8", newline="") as f:
            reader = csv.reader(f)
            next(reader)
            points = [[float(v) for v in row] for row in reader]
        with open(sidecar_path, "r", encoding="utf-8") as f:
            sidecar = FrontSidecar.model_validate(json.load(f))
    except (OSError, ValueError, StopIteration, ValidationError) as e:
        raise ExperimentIOError(csv_path, str(e)) from e
    return points, sidecar
