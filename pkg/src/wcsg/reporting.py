"""Deterministic report assembly and JSON/CSV emission.

Reports echo the configuration that produced them plus every default that
applied, so a report is self-describing. The canonical JSON is byte-stable
across runs of the same build: keys are sorted, floats use shortest repr,
and the wall-clock (kept on the in-memory report and printed to stderr) is
excluded unless explicitly requested.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, is_dataclass, asdict

import numpy as np

ARTIFACT_VERSION = "0.1.0"
CORPUS_VERSION = "1"


@dataclass
class Case:
    """One diagnostic case: inputs, numeric outcomes, a verdict."""

    id: str
    inputs: dict
    numbers: dict
    verdict: bool | str
    error: str | None = None
    rows: list = field(default_factory=list)  # per-t numeric records for CSV

    @property
    def passed(self) -> bool:
        return self.verdict is True or self.verdict == "pass"


@dataclass
class Report:
    suite: str
    config: dict
    cases: list
    wall_clock: float = 0.0

    @property
    def summary(self) -> dict:
        n_pass = sum(1 for c in self.cases if c.passed)
        return {
            "n_cases": len(self.cases),
            "n_pass": n_pass,
            "n_fail": len(self.cases) - n_pass,
            "all_pass": n_pass == len(self.cases),
        }


def sanitize(value):
    """Make a value JSON-serializable, deterministically."""
    if isinstance(value, dict):
        return {str(k): sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [sanitize(v) for v in value]
    if isinstance(value, (np.complexfloating, complex)):
        c = complex(value)
        return {"re": float(c.real), "im": float(c.imag)}
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if is_dataclass(value) and not isinstance(value, type):
        return sanitize(asdict(value))
    if isinstance(value, float) and not np.isfinite(value):
        return repr(value)  # "inf"/"nan" are not valid JSON numbers
    return value


def report_to_dict(report: Report, include_timing: bool = False) -> dict:
    out = {
        "meta": {
            "artifact_version": ARTIFACT_VERSION,
            "corpus_version": CORPUS_VERSION,
            "suite": report.suite,
        },
        "config": sanitize(report.config),
        "cases": [
            {
                "id": c.id,
                "inputs": sanitize(c.inputs),
                "numbers": sanitize(c.numbers),
                "verdict": c.verdict,
                **({"error": c.error} if c.error else {}),
            }
            for c in report.cases
        ],
        "summary": report.summary,
    }
    if include_timing:
        out["meta"]["wall_clock_s"] = round(report.wall_clock, 3)
    return out


def report_to_json(report: Report, include_timing: bool = False) -> str:
    return json.dumps(report_to_dict(report, include_timing), indent=2, sort_keys=True) + "\n"


def emit_json(report: Report, path: str, include_timing: bool = False) -> None:
    with open(path, "w") as fh:
        fh.write(report_to_json(report, include_timing))


def _case_rows(case: Case):
    if case.rows:
        for row in case.rows:
            yield row
    elif case.numbers:
        yield dict(case.numbers)


def emit_csv(report: Report, path: str) -> None:
    """Flatten per-case numeric records, one row per (case, t)."""
    columns: list = []
    seen = set()
    flat = []
    for case in report.cases:
        for row in _case_rows(case):
            srow = {}
            for k, v in row.items():
                sv = sanitize(v)
                if isinstance(sv, dict):  # complex split into two columns
                    srow[f"{k}_re"] = sv["re"]
                    srow[f"{k}_im"] = sv["im"]
                else:
                    srow[k] = sv
            flat.append((case.id, srow))
            for k in srow:
                if k not in seen:
                    seen.add(k)
                    columns.append(k)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["case_id"] + columns)
        for cid, srow in flat:
            writer.writerow([cid] + [srow.get(k, "") for k in columns])
