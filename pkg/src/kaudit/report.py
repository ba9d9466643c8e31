"""Canonical report serialization: JSON that round-trips byte for byte
and CSV with one row per verdict."""
from __future__ import annotations

import csv
import io
import json

VERDICT_FIELDS = ("check_id", "regime", "lhs", "rhs", "margin", "passed", "params")


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, two-space indent, shortest
    round-trip float repr.  parse -> re-serialize is byte-identical."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def verdicts_csv(verdict_dicts: list[dict]) -> str:
    """One CSV row per verdict; params are embedded as canonical JSON."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(VERDICT_FIELDS)
    for v in verdict_dicts:
        writer.writerow(
            [
                v["check_id"],
                v.get("regime") or "",
                repr(v["lhs"]),
                repr(v["rhs"]),
                repr(v["margin"]),
                v["passed"],
                json.dumps(v.get("params", {}), sort_keys=True),
            ]
        )
    return buf.getvalue()


def wrap_report(version: str, config: dict, verdicts: list[dict], summary: dict) -> dict:
    """The report envelope every command emits in JSON mode."""
    return {"version": version, "config": config, "verdicts": verdicts, "summary": summary}
