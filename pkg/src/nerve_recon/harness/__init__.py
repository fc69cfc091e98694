"""Experiment harness: configs, reference maps, Monte Carlo runner and reports."""

from src.nerve_recon.harness.collector import ProgressHook, TrialCollector
from src.nerve_recon.harness.config import ExperimentConfig, load_config, parse_config
from src.nerve_recon.harness.models import ExperimentReport, TrialOutcome
from src.nerve_recon.harness.registry import (
    LipschitzAudit,
    MapId,
    RegisteredMap,
    audit_lipschitz,
    resolve_map,
)
from src.nerve_recon.harness.runner import (
    ExperimentPlan,
    prepare_experiment,
    run_experiment,
    run_trial,
    target_probability,
)
from src.nerve_recon.harness.stats import wilson_interval
from src.nerve_recon.harness.summary import (
    report_to_csv,
    report_to_dict,
    summarize_report,
    write_report,
)

__all__ = [
    "ExperimentConfig",
    "ExperimentPlan",
    "ExperimentReport",
    "LipschitzAudit",
    "MapId",
    "ProgressHook",
    "RegisteredMap",
    "TrialCollector",
    "TrialOutcome",
    "audit_lipschitz",
    "load_config",
    "parse_config",
    "prepare_experiment",
    "report_to_csv",
    "report_to_dict",
    "resolve_map",
    "run_experiment",
    "run_trial",
    "summarize_report",
    "target_probability",
    "wilson_interval",
    "write_report",
]
