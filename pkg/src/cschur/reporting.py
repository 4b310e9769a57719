"""Report rendering: JSON (versioned schema), Markdown, delimited CSV, and
matplotlib figures written next to the delimited output."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .suites import REPORT_SCHEMA_VERSION, SuiteReport


def report_to_obj(report: SuiteReport, with_timing: bool = True) -> dict:
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "suite": report.suite,
        "config": report.config,
        "passed": report.passed,
        "counts": {
            "total": len(report.checks),
            "pass": sum(1 for c in report.checks if c.status == "pass"),
            "fail": sum(1 for c in report.checks if c.status == "fail"),
            "error": sum(1 for c in report.checks if c.status == "error"),
        },
        "total_seconds": round(report.total_seconds, 3) if with_timing else None,
        "checks": [
            {
                "id": c.check_id,
                "identity": c.identity,
                "status": c.status,
                "seconds": round(c.seconds, 4) if with_timing else None,
                "counterexample": c.counterexample,
            }
            for c in report.checks
        ],
    }


def to_json(report: SuiteReport, with_timing: bool = True) -> str:
    return json.dumps(report_to_obj(report, with_timing), indent=2, sort_keys=True) + "\n"


def to_markdown(report: SuiteReport) -> str:
    lines = [
        f"# Suite `{report.suite}`",
        "",
        "Config: " + ", ".join(f"{k}={v}" for k, v in sorted(report.config.items())),
        "",
        f"**{'PASS' if report.passed else 'FAIL'}** - "
        f"{sum(1 for c in report.checks if c.status == 'pass')}/{len(report.checks)} checks, "
        f"{report.total_seconds:.1f}s",
        "",
        "| check | status | seconds | identity |",
        "|---|---|---|---|",
    ]
    for c in report.checks:
        lines.append(f"| {c.check_id} | {c.status} | {c.seconds:.3f} | {c.identity} |")
    bad = [c for c in report.checks if c.status != "pass"]
    if bad:
        lines.append("")
        lines.append("## Counterexamples")
        for c in bad:
            lines.append(f"- `{c.check_id}`: {json.dumps(c.counterexample, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def to_csv(report: SuiteReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["check_id", "status", "seconds", "identity"])
    for c in report.checks:
        writer.writerow([c.check_id, c.status, f"{c.seconds:.4f}", c.identity])
    return buf.getvalue()


def write_figures(report: SuiteReport, outdir: Path) -> list[Path]:
    """Render the per-check wall times and the status summary to PNG files."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    ids = [c.check_id for c in report.checks]
    secs = [max(c.seconds, 1e-6) for c in report.checks]
    colors = ["#2a9d3a" if c.status == "pass" else "#cc2222" for c in report.checks]

    height = max(2.5, 0.18 * len(ids) + 1.2)
    fig, ax = plt.subplots(figsize=(9, height))
    ax.barh(range(len(ids)), secs, color=colors)
    ax.set_yticks(range(len(ids)))
    ax.set_yticklabels(ids, fontsize=6)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("wall time (s, log scale)")
    ax.set_title(f"{report.suite}: per-check wall time")
    fig.tight_layout()
    p = outdir / f"{report.suite}-times.png"
    fig.savefig(p, dpi=150)
    plt.close(fig)
    written.append(p)

    counts = {}
    for c in report.checks:
        counts[c.status] = counts.get(c.status, 0) + 1
    fig, ax = plt.subplots(figsize=(4, 3))
    labels = sorted(counts)
    ax.bar(labels, [counts[k] for k in labels],
           color=["#2a9d3a" if k == "pass" else "#cc2222" for k in labels])
    ax.set_ylabel("checks")
    ax.set_title(f"{report.suite}: status summary")
    fig.tight_layout()
    p = outdir / f"{report.suite}-status.png"
    fig.savefig(p, dpi=150)
    plt.close(fig)
    written.append(p)
    return written


def write_report_files(report: SuiteReport, outdir: Path, fmt: str = "json") -> list[Path]:
    """Write the report (json or md), the delimited per-check table, and the
    figures into a directory."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt == "json":
        p = outdir / f"{report.suite}-report.json"
        p.write_text(to_json(report), encoding="utf-8")
    else:
        p = outdir / f"{report.suite}-report.md"
        p.write_text(to_markdown(report), encoding="utf-8")
    written.append(p)
    p = outdir / f"{report.suite}-checks.csv"
    p.write_text(to_csv(report), encoding="utf-8")
    written.append(p)
    written.extend(write_figures(report, outdir))
    return written
