"""Thread-safe accumulation of trial outcomes as they complete.

Trials may finish out of order when run in a worker pool; the collector keeps running
counts for progress reporting and hands back outcomes sorted by trial index.
"""

import logging
import threading
from typing import Callable

from src.nerve_recon.harness.models import TrialOutcome

logger = logging.getLogger("src.nerve_recon.harness")

ProgressHook = Callable[[TrialOutcome, int, int], None]


class TrialCollector:
    """Receives outcomes from the runner and aggregates success/failure/error counts.

    Usage:
        collector = TrialCollector(expected=config.trials)
        collector.record(outcome)
        outcomes = collector.finalize()
    """

    def __init__(self, expected: int, on_trial: ProgressHook | None = None) -> None:
        self._lock = threading.Lock()
        self._outcomes: dict[int, TrialOutcome] = {}
        self._expected = expected
        self._successes = 0
        self._errors = 0
        self._reasons: dict[str, int] = {}
        self._on_trial = on_trial

    # ── recording ──

    def record(self, outcome: TrialOutcome) -> None:
        with self._lock:
            if outcome.trial_index in self._outcomes:
                logger.warning("duplicate trial_index=%d ignored", outcome.trial_index)
                return
            self._outcomes[outcome.trial_index] = outcome
            if outcome.success:
                self._successes += 1
            if outcome.error is not None:
                self._errors += 1
            if outcome.failure_reason:
                self._reasons[outcome.failure_reason] = self._reasons.get(outcome.failure_reason, 0) + 1
            done = len(self._outcomes)

        logger.debug(
            "trial_end index=%d success=%s reason=%s done=%d/%d",
            outcome.trial_index, outcome.success, outcome.failure_reason, done, self._expected,
        )
        if self._on_trial is not None:
            self._on_trial(outcome, done, self._expected)

    # ── queries ──

    @property
    def successes(self) -> int:
        with self._lock:
            return self._successes

    @property
    def errors(self) -> int:
        with self._lock:
            return self._errors

    def failure_reasons(self) -> dict[str, int]:
        with self._lock:
            return dict(sorted(self._reasons.items()))

    def finalize(self) -> list[TrialOutcome]:
        """Outcomes in trial-index order; warns if some trials never reported."""
        with self._lock:
            missing = self._expected - len(self._outcomes)
            ordered = [self._outcomes[i] for i in sorted(self._outcomes)]
        if missing:
            logger.warning("finalize missing=%d of expected=%d", missing, self._expected)
        return ordered
