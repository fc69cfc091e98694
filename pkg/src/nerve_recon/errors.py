"""Exception hierarchy shared by every nerve_recon subpackage."""


class NerveReconError(Exception):
    """Base class for all errors raised by nerve_recon."""


class DimensionMismatchError(NerveReconError, ValueError):
    """Points or clouds with different ambient dimensions were combined."""


class EmptyInputError(NerveReconError, ValueError):
    """An operation that needs at least one point received none."""


class DomainError(NerveReconError, ValueError):
    """A parameter lies outside the admissible domain of a formula."""


class ProjectionError(NerveReconError, ValueError):
    """The nearest manifold point is not unique or lies outside the reach tube."""


class HypothesisError(NerveReconError, ValueError):
    """A radius/Lipschitz inequality required by a formula does not hold."""


class ConfigError(NerveReconError, ValueError):
    """An experiment configuration could not be loaded or is inconsistent."""


class SimplexLimitExceeded(NerveReconError):
    """Nerve construction produced more simplices than the configured cap."""

    def __init__(self, limit: int, dim: int) -> None:
        super().__init__(f"simplex limit {limit} exceeded while building dimension {dim}")
        self.limit = limit
        self.dim = dim


class NonSimplicialMapError(NerveReconError):
    """A vertex assignment does not send simplices to simplices."""


class InconsistentSystemError(NerveReconError):
    """An exact integer system that must be solvable was not."""


class FileFormatError(NerveReconError, ValueError):
    """A point-cloud, complex or map file does not follow its text format."""
