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

import json
from pathlib import Path

import pytest

import config as config_module
from config import Config, get_config, init_config, parse_args
from run import main


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch, tmp_path):
    for name in ("PARETOFORGE_OUT", "PARETOFORGE_JOBS", "PARETOFORGE_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setattr(config_module, "config", None)
    monkeypatch.setenv("HOME", str(tmp_path / "home"))


class TestConfig:
    def test_uninitialized(self):
        with pytest.raises(RuntimeError):
            get_config()

    def test_defaults(self, tmp_path):
        config = init_config(parse_args(["run"]))
        assert config.jobs == 1
        assert config.log_level == "INFO"
        assert config.out_dir == Path.home() / ".paretoforge" / "results"
        assert get_config() is config

    def test_env_overrides_default(self, monkeypatch, tmp_path):
        monkeypatch.setenv("PARETOFORGE_OUT", str(tmp_path / "env"))
        monkeypatch.setenv("PARETOFORGE_JOBS", "3")
        monkeypatch.setenv("PARETOFORGE_LOG_LEVEL", "debug")
        config = Config(parse_args(["run"]))
        assert config.out_dir == tmp_path / "env"
        assert config.jobs == 3
        assert config.log_level == "DEBUG"

    def test_cli_overrides_env(self, monkeypatch, tmp_path):
        monkeypatch.setenv("PARETOFORGE_OUT", str(tmp_path / "env"))
        monkeypatch.setenv("PARETOFORGE_JOBS", "3")
        monkeypatch.setenv("PARETOFORGE_LOG_LEVEL", "DEBUG")
        args = parse_args(["--log-level", "WARNING", "run", "--out", str(tmp_path / "cli"), "--jobs", "2"])
        config = Config(args)
        assert config.out_dir == tmp_path / "cli"
        assert config.jobs == 2
        assert config.log_level == "WARNING"

    def test_invalid_env_jobs_is_ignored(self, monkeypatch):
        monkeypatch.setenv("PARETOFORGE_JOBS", "many")
        assert Config(parse_args(["run"])).jobs == 1

    def test_comma_lists(self):
        args = parse_args(["run", "--problems", "BK1, Lov1", "--methods", "sd,qnmo"])
        assert args.problems == ["BK1", "Lov1"]
        assert args.methods == ["sd", "qnmo"]

    def test_initial_metric(self):
        assert parse_args(["run"]).b0 == "identity"
        assert parse_args(["front", "--problem", "BK1", "--b0", "scaled_identity"]).b0 == "scaled_identity"
        with pytest.raises(SystemExit):
            parse_args(["run", "--b0", "hessian"])

    def test_front_requires_problem(self):
        with pytest.raises(SystemExit):
            parse_args(["front"])

    def test_serve_defaults(self):
        config = Config(parse_args(["serve"]))
        assert config.host == "127.0.0.1"
        assert config.port == 23980


class TestMain:
    def test_list_problems_json(self, capsys):
        assert main(["list-problems", "--json"]) == 0
        infos = json.loads(capsys.readouterr().out)
        assert len(infos) == 23
        assert infos[0]["id"] == "SD"
        assert {"id", "n", "m", "box_low", "box_high", "convex", "source"} <= set(infos[0])

    def test_list_problems_table(self, capsys):
        assert main(["list-problems"]) == 0
        out = capsys.readouterr().out
        assert "JOS1b" in out
        assert "[-2, 2]^100" in out

    def test_check_gradients(self, capsys):
        assert main(["check-gradients", "--problems", "BK1,LDTZ", "--samples", "20"]) == 0
        out = capsys.readouterr().out
        assert out.count(" ok ") == 2

    def test_run_writes_results(self, monkeypatch, tmp_path, capsys):
        monkeypatch.setenv("PARETOFORGE_OUT", str(tmp_path / "results"))
        code = main(["run", "--problems", "BK1", "--methods", "mfqnmo,sd", "--starts", "3"])
        assert code == 0
        assert (tmp_path / "results" / "aggregate.csv").exists()
        assert (tmp_path / "results" / "runs.jsonl").exists()
        assert (tmp_path / "results" / "summary.json").exists()
        assert "mfqnmo" in capsys.readouterr().out

    def test_front_default_path(self, monkeypatch, tmp_path):
        monkeypatch.setenv("PARETOFORGE_OUT", str(tmp_path))
        assert main(["front", "--problem", "MOP1", "--method", "sd", "--starts", "4"]) == 0
        assert (tmp_path / "MOP1_sd_front.csv").exists()
        assert (tmp_path / "MOP1_sd_front.json").exists()

    def test_unknown_problem_fails(self, monkeypatch, tmp_path):
        monkeypatch.setenv("PARETOFORGE_OUT", str(tmp_path))
        assert main(["run", "--problems", "NOPE", "--starts", "1"]) == 1
        assert main(["front", "--problem", "NOPE", "--starts", "1"]) == 1

    def test_unknown_method_fails(self, monkeypatch, tmp_path):
        monkeypatch.setenv("PARETOFORGE_OUT", str(tmp_path))
        assert main(["front", "--problem", "BK1", "--method", "newton", "--starts", "1"]) == 1
