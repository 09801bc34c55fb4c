"""Shared exception types."""


class DigitCapExceeded(RuntimeError):
    """A factorial would exceed the configured decimal-digit cap."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a bug, not bad input."""


class IntervalDomainError(ValueError):
    """An interval operation left its real domain (log of a nonpositive
    interval, division through zero, formula argument below its floor)."""


class CertificationError(RuntimeError):
    """A certified inequality could not be established, even after
    precision escalation."""


class CheckpointError(ValueError):
    """Checkpoint file is malformed, inconsistent, or fails its CRC."""
