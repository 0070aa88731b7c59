"""Exception types shared across the package."""


class SoilFuzzError(Exception):
    """Base class for every error raised by soilfuzz."""


class PartitionError(SoilFuzzError, ValueError):
    """A linguistic variable could not be constructed (bad labels or centers)."""


class FuzzificationError(SoilFuzzError, ValueError):
    """An input value lies outside the variable's domain."""


class RuleConfigError(SoilFuzzError, ValueError):
    """A rule or rule base is malformed (unknown label, duplicate id, ...)."""


class EvaluationError(SoilFuzzError, ValueError):
    """Rule evaluation was given inconsistent inputs (e.g. a missing variable)."""


class SampleError(SoilFuzzError, ValueError):
    """A soil sample violates its physical invariants."""
