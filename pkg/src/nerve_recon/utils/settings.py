import os
from dataclasses import dataclass

from dotenv import load_dotenv

load_dotenv()

DEFAULT_SIMPLEX_LIMIT = 5_000_000


@dataclass(frozen=True)
class Settings:
    workers: int
    simplex_limit: int
    log_level: str


def load_settings(
    workers: int | None = None,
    simplex_limit: int | None = None,
    log_level: str | None = None,
) -> Settings:
    """Resolve runtime knobs: explicit arguments win over environment variables."""
    resolved_workers = workers or int(os.getenv("NERVE_RECON_WORKERS", "1"))
    resolved_limit = simplex_limit or int(
        os.getenv("NERVE_RECON_SIMPLEX_LIMIT", str(DEFAULT_SIMPLEX_LIMIT))
    )
    resolved_level = (log_level or os.getenv("NERVE_RECON_LOG_LEVEL") or "WARNING").upper()

    return Settings(
        workers=max(1, resolved_workers),
        simplex_limit=max(1, resolved_limit),
        log_level=resolved_level,
    )
