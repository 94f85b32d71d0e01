"""CLI surface: exit codes, config validation, JSON/CSV emission, determinism."""

import copy
import csv
import json

import pytest

from wcsg import cli
from wcsg.defaults import DEFAULT_CONFIGS
from wcsg.errors import ConfigError
from wcsg.reporting import Case, Report, emit_csv, report_to_dict, report_to_json
from wcsg.suites import SUITES, build_space


def write_config(tmp_path, cfg, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


class TestExitCodes:
    def test_passing_suite_returns_zero(self, tmp_path):
        out = tmp_path / "r.json"
        code = cli.main(["admissibility", "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert set(doc) == {"meta", "config", "cases", "summary"}
        assert doc["summary"]["all_pass"] is True

    def test_failing_verdict_returns_one(self, tmp_path):
        cfg = copy.deepcopy(DEFAULT_CONFIGS["reconstruct"])
        cfg["tolerances"] = {"deviation": 1e-30, "generator_fd": 1e-30}
        code = cli.main(["reconstruct", "--config", write_config(tmp_path, cfg)])
        assert code == 1

    def test_unknown_key_returns_two(self, tmp_path):
        cfg = copy.deepcopy(DEFAULT_CONFIGS["admissibility"])
        cfg["surprise"] = 1
        code = cli.main(["admissibility", "--config", write_config(tmp_path, cfg)])
        assert code == 2

    def test_missing_config_file_returns_two(self):
        assert cli.main(["admissibility", "--config", "/nonexistent/x.json"]) == 2

    def test_suite_mismatch_returns_two(self, tmp_path):
        cfg = copy.deepcopy(DEFAULT_CONFIGS["admissibility"])
        code = cli.main(["reconstruct", "--config", write_config(tmp_path, cfg)])
        assert code == 2

    def test_bad_case_embedded_not_fatal(self, tmp_path):
        # one broken case (integral cocycle with a bad expression is a config
        # error; use a flow the coboundary rejects instead) is recorded, the
        # other cases still run
        cfg = {
            "suite": "cocycle-check",
            "flow": {"name": "attracting"},
            "cocycles": [
                {"type": "coboundary", "omega": "z", "zeros": [{"re": 0.0, "im": 0.0, "order": 1}]},
                {"type": "trivial"},
            ],
        }
        out = tmp_path / "r.json"
        code = cli.main(["cocycle-check", "--config", write_config(tmp_path, cfg), "--out", str(out)])
        assert code == 1
        doc = json.loads(out.read_text())
        verdicts = [c["verdict"] for c in doc["cases"]]
        assert "error" in verdicts and True in verdicts


class TestConfigValidation:
    def test_unknown_nested_key_path(self):
        with pytest.raises(ConfigError) as exc:
            build_space({"kind": "hardy", "pp": 2}, "space")
        assert "space.pp" in str(exc.value)

    def test_all_suites_have_defaults(self):
        assert set(DEFAULT_CONFIGS) == set(SUITES)

    def test_tol_override_applies(self, tmp_path):
        cfg = copy.deepcopy(DEFAULT_CONFIGS["reconstruct"])
        out = tmp_path / "r.json"
        code = cli.main(
            ["reconstruct", "--config", write_config(tmp_path, cfg), "--tol", "1e-30",
             "--out", str(out)]
        )
        assert code == 1
        doc = json.loads(out.read_text())
        assert doc["config"]["tolerances"]["deviation"] == 1e-30


class TestEmission:
    def test_json_round_trip(self):
        report = cli.run(copy.deepcopy(DEFAULT_CONFIGS["admissibility"]))
        doc = report_to_dict(report)
        assert json.loads(report_to_json(report)) == doc

    def test_csv_one_row_per_t(self, tmp_path):
        cfg = copy.deepcopy(DEFAULT_CONFIGS["continuity-probe"])
        cfg["cases"] = [cfg["cases"][1]]  # three sampled times
        report = cli.run(cfg)
        path = tmp_path / "r.csv"
        emit_csv(report, str(path))
        rows = list(csv.reader(path.open()))
        assert len(rows) == 1 + 3  # header + one row per t
        assert rows[0][0] == "case_id"

    def test_empty_report_header_only(self, tmp_path):
        report = Report(suite="norm-table", config={}, cases=[])
        path = tmp_path / "empty.csv"
        emit_csv(report, str(path))
        rows = list(csv.reader(path.open()))
        assert rows == [["case_id"]]

    def test_timing_excluded_by_default(self):
        report = cli.run(copy.deepcopy(DEFAULT_CONFIGS["admissibility"]))
        assert "wall_clock_s" not in report_to_dict(report)["meta"]
        assert "wall_clock_s" in report_to_dict(report, include_timing=True)["meta"]


class TestDeterminism:
    @pytest.mark.parametrize("suite", ["admissibility", "cocycle-check", "reconstruct"])
    def test_byte_identical_reports(self, suite):
        a = cli.run(copy.deepcopy(DEFAULT_CONFIGS[suite]))
        b = cli.run(copy.deepcopy(DEFAULT_CONFIGS[suite]))
        assert report_to_json(a) == report_to_json(b)
