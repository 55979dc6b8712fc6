"""Structured verification reports.

A report is a deterministic JSON document: given identical command, flags
and seeds the serialized bytes are identical (checks are run in a fixed
order and no timing or environment data is embedded; per-check wall-clock
is available separately behind an opt-in flag because it would break
byte-level reproducibility).
"""

from __future__ import annotations

import json

from . import __version__

PASS = "PASS"
FAIL = "FAIL"
DISCREPANCY = "DISCREPANCY"
DERIVED = "DERIVED"


def make_report(command: str, series: str, n: int, field, seeds, checks: list,
                extra: dict | None = None) -> dict:
    counts = {PASS: 0, FAIL: 0, DISCREPANCY: 0, DERIVED: 0}
    for c in checks:
        counts[c["verdict"]] = counts.get(c["verdict"], 0) + 1
    report = {
        "tool": {"name": "rmx", "version": __version__},
        "command": command,
        "series": series,
        "n": n,
        "backend": field.describe(),
        "seeds": list(seeds),
        "checks": checks,
        "summary": {
            "total": len(checks),
            "pass": counts.get(PASS, 0),
            "fail": counts.get(FAIL, 0),
            "discrepancy": counts.get(DISCREPANCY, 0),
            "derived": counts.get(DERIVED, 0),
        },
    }
    if extra:
        report.update(extra)
    return report


def exit_code(report: dict) -> int:
    """0 unless a FAIL record is present (discrepancies are expected output)."""
    return 1 if report["summary"]["fail"] else 0


def serialize(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"


def write_report(report: dict, path: str | None):
    text = serialize(report)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def check(name: str, anchor: str, verdict: str, method: str | None = None,
          witness=None) -> dict:
    rec = {"name": name, "paper_anchor": anchor, "verdict": verdict}
    if method:
        rec["method"] = method
    if witness is not None:
        rec["witness"] = witness
    return rec
