"""Exception types shared across the toolkit.

All library errors derive from :class:`AprError` so callers (notably the
CLI) can map them to a single "bad data" exit path while OS-level errors
propagate separately.
"""


class AprError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(AprError, ValueError):
    """Grid shapes are empty, mismatched, or have an unsupported channel count."""


class DomainError(AprError, ValueError):
    """A value lies outside its documented domain (negative amplitude, bad level, ...)."""


class DataError(AprError, ValueError):
    """Structured input data (manifests, CSV files, record sets) is invalid."""
