"""Report assembly and serialization.

A report has a stable section (config echo, counts, checks, toolkit
version, seed) and a volatile wall-time field.  The stable section is
serialized with sorted keys and fixed separators so that identical runs
are byte-identical; wall time stays outside it.
"""

from __future__ import annotations

import io
import json
import time

TOOLKIT_VERSION = "0.1.0"

STATUS_ORDER = {"pass": 0, "fail": 1, "inconclusive": 2}


def make_report(config: dict, counts: list, checks: list, seed: int | None = None,
                wall_time_s: float | None = None) -> dict:
    stable = {
        "version": TOOLKIT_VERSION,
        "config": config,
        "counts": counts,
        "checks": checks,
    }
    if seed is not None:
        stable["seed"] = seed
    return {"stable": stable, "wall_time_s": wall_time_s}


def merge_reports(parts: list[dict], config: dict, seed: int | None = None) -> dict:
    counts = []
    checks = []
    for part in parts:
        prefix = part.get("config", {})
        tag = ",".join(f"{k}={v}" for k, v in sorted(prefix.items()) if v not in (None, 0, ""))
        for row in part.get("counts", []):
            counts.append({"label": f"[{tag}] {row['label']}", "count": row["count"]})
        for chk in part.get("checks", []):
            item = dict(chk)
            item["name"] = f"[{tag}] {chk['name']}"
            checks.append(item)
    return make_report(config, counts, checks, seed=seed)


def exit_code(report: dict) -> int:
    statuses = [c["status"] for c in report["stable"]["checks"]]
    if any(s == "fail" for s in statuses):
        return 1
    if any(s == "inconclusive" for s in statuses):
        return 3
    return 0


def emit_json(report: dict) -> str:
    stable = json.dumps(report["stable"], sort_keys=True, separators=(",", ":"))
    wall = report.get("wall_time_s")
    return json.dumps(
        {"stable": json.loads(stable), "wall_time_s": wall}, sort_keys=True, indent=2
    )


def emit_stable_json(report: dict) -> str:
    return json.dumps(report["stable"], sort_keys=True, separators=(",", ":"))


def emit_csv(report: dict) -> str:
    out = io.StringIO()
    out.write("label,count\n")
    for row in report["stable"]["counts"]:
        label = str(row["label"]).replace('"', '""')
        out.write(f'"{label}",{row["count"]}\n')
    return out.getvalue()


def emit_md(report: dict) -> str:
    st = report["stable"]
    lines = [f"# stratakit report (v{st['version']})", ""]
    lines.append("## Configuration")
    lines.append("")
    lines.append("| key | value |")
    lines.append("| --- | --- |")
    for k in sorted(st["config"]):
        lines.append(f"| {k} | {st['config'][k]} |")
    lines.append("")
    if st["counts"]:
        lines.append("## Counts")
        lines.append("")
        lines.append("| label | count |")
        lines.append("| --- | --- |")
        for row in st["counts"]:
            lines.append(f"| {row['label']} | {row['count']} |")
        lines.append("")
    lines.append("## Checks")
    lines.append("")
    lines.append("| check | status |")
    lines.append("| --- | --- |")
    for chk in st["checks"]:
        lines.append(f"| {chk['name']} | {chk['status']} |")
    lines.append("")
    if report.get("wall_time_s") is not None:
        lines.append(f"wall time: {report['wall_time_s']:.2f} s")
        lines.append("")
    return "\n".join(lines)


def emit(report: dict, fmt: str) -> str:
    if fmt == "json":
        return emit_json(report)
    if fmt == "csv":
        return emit_csv(report)
    if fmt == "md":
        return emit_md(report)
    raise ValueError(f"unknown format {fmt!r}")


class Stopwatch:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0
        return False
