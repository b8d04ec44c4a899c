"""Exception types shared across the package."""


class HesslabError(Exception):
    """Base class for package-specific failures."""


class CostGuardError(HesslabError):
    """Input is legal but beyond the default cost envelope; pass force=True to override."""


class ConsistencyError(HesslabError):
    """Two independent internal computations disagree.  Never ignored, never downgraded."""


class UnstableSamplingError(ConsistencyError):
    """Randomized finite-field sampling failed its stability threshold after a retry."""


class TheoremViolation(HesslabError):
    """A checked theorem failed on a concrete instance.

    Carries a machine-readable witness so callers (and the CLI) can report
    exactly which instance broke and how.
    """

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}
