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

import pytest

from models.experiment import AggregateRow, FrontSidecar
from models.solver import SolverMethod
from services.errors import ExperimentIOError
from utils.output_files import (
    ensure_dir,
    read_aggregate_csv,
    read_front,
    read_run_records,
    write_aggregate_csv,
    write_front,
)


def _sidecar(**overrides) -> FrontSidecar:
    values = {
        "problem": "LDTZ",
        "method": SolverMethod.SD,
        "m": 3,
        "starts": 2,
        "seed": 0,
        "epsilon": 1e-8,
        "max_iters": 500,
        "points": 2,
        "nf": 0,
        "failures": {},
        "max_sd_norm": 1e-5,
        "uncertified": 0,
        "points_file": "front.csv",
    }
    values.update(overrides)
    return FrontSidecar(**values)


class TestAggregateCsv:
    def test_header_and_precision(self, tmp_path):
        rows = [AggregateRow(problem="BK1", method=SolverMethod.QNMO, mean_iter=1 / 3, mean_time_ms=0.1, mean_feval=2.5, nf=1)]
        path = tmp_path / "aggregate.csv"
        write_aggregate_csv(path, rows)
        lines = path.read_text().splitlines()
        assert lines[0] == "problem,method,mean_iter,mean_time_ms,mean_feval,nf"
        assert lines[1] == f"BK1,qnmo,{1 / 3!r},0.1,2.5,1"
        assert read_aggregate_csv(path) == rows

    def test_rejects_foreign_header(self, tmp_path):
        path = tmp_path / "aggregate.csv"
        path.write_text("problem,method,iterations\nBK1,sd,3\n")
        with pytest.raises(ExperimentIOError) as excinfo:
            read_aggregate_csv(path)
        assert excinfo.value.error_code.value == "ERR_EXPERIMENT_6001"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ExperimentIOError):
            read_aggregate_csv(tmp_path / "missing.csv")


class TestFrontFiles:
    def test_front_and_sidecar(self, tmp_path):
        path = tmp_path / "front.csv"
        sidecar_path = write_front(path, [[0.1, 0.2, 0.3], [1.0, 2.0, 3.0]], _sidecar())
        assert sidecar_path == tmp_path / "front.json"
        points, sidecar = read_front(path)
        assert points == [[0.1, 0.2, 0.3], [1.0, 2.0, 3.0]]
        assert sidecar.m == 3

    def test_missing_sidecar(self, tmp_path):
        path = tmp_path / "front.csv"
        path.write_text("f1,f2\n1.0,2.0\n")
        with pytest.raises(ExperimentIOError):
            read_front(path)


class TestRunRecords:
    def test_malformed_line(self, tmp_path):
        path = tmp_path / "runs.jsonl"
        path.write_text('{"problem": "BK1"}\n')
        with pytest.raises(ExperimentIOError):
            read_run_records(path)


def test_ensure_dir_over_file(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    with pytest.raises(ExperimentIOError):
        ensure_dir(blocker / "sub")
