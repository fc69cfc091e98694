"""Report summaries and serialisation.

Formats an ExperimentReport as a one-line summary for the console, a JSON document
and CSV rows with one line per trial.
"""

import csv
import io
import json
from pathlib import Path
from typing import Any

from src.nerve_recon.harness.models import TIMING_FIELD, ExperimentReport, TrialOutcome

CSV_COLUMNS = [
    "trial_index",
    "seed",
    "betti_x",
    "betti_y",
    "nonempty",
    "simplicial",
    "multiplier",
    "verdict",
    "millis",
]


def summarize_report(report: ExperimentReport) -> str:
    """One-line summary.

    Format: "scenario -> n_x=.. n_y=.. -> successes/trials (freq [low, high]) -> target=.. -> PASS|BELOW"
    """
    low, high = report.interval
    parts = [report.config.scenario, f"n_x={report.n_x}"]
    if report.n_y is not None:
        parts[-1] += f" n_y={report.n_y}"
    parts.append(
        f"{report.successes}/{len(report.trials)} ({report.frequency:.3f} [{low:.3f}, {high:.3f}])"
    )
    parts.append(f"target={report.target:.3f}")
    if report.errors:
        parts.append(f"errors={report.errors}")
    if report.infeasible_override:
        parts.append("INFEASIBLE_OVERRIDE")
    parts.append("PASS" if report.frequency >= report.target else "BELOW")
    return " -> ".join(parts)


def report_to_dict(report: ExperimentReport, include_timings: bool = True) -> dict[str, Any]:
    """JSON-safe dict; ``include_timings=False`` gives a run-to-run comparable document."""
    if include_timings:
        return report.model_dump(mode="json")
    return report.model_dump(mode="json", exclude={"trials": {"__all__": {TIMING_FIELD}}})


def _join(values: list[int] | None) -> str:
    return "" if values is None else " ".join(str(v) for v in values)


def _flag(value: bool | None) -> str:
    return "" if value is None else str(value).lower()


def trial_row(outcome: TrialOutcome) -> dict[str, str]:
    return {
        "trial_index": str(outcome.trial_index),
        "seed": str(outcome.seed),
        "betti_x": _join(outcome.betti_x),
        "betti_y": _join(outcome.betti_y),
        "nonempty": _flag(outcome.nonempty),
        "simplicial": _flag(outcome.simplicial),
        "multiplier": "" if outcome.multiplier is None else str(outcome.multiplier),
        "verdict": "success" if outcome.success else (outcome.failure_reason or "failure"),
        "millis": f"{outcome.millis:.3f}",
    }


def report_to_csv(report: ExperimentReport) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for outcome in report.trials:
        writer.writerow(trial_row(outcome))
    return buffer.getvalue()


def write_report(report: ExperimentReport, out_dir: Path, fmt: str) -> Path:
    """Write ``<scenario>.json`` or ``<scenario>.csv`` under ``out_dir``."""
    out_dir.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        path = out_dir / f"{report.config.scenario}.csv"
        path.write_text(report_to_csv(report))
    else:
        path = out_dir / f"{report.config.scenario}.json"
        path.write_text(json.dumps(report_to_dict(report), indent=2, default=str) + "\n")
    return path
