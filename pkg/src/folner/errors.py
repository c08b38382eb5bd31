"""Exception types shared across the package."""

from __future__ import annotations


class FolnerError(Exception):
    """Base class for all errors raised by this package."""


class UnknownLabel(FolnerError):
    """A label is not part of the ring's (or group's) index set."""

    def __init__(self, label, ring=None):
        self.label = label
        self.ring = ring
        where = f" in {ring}" if ring is not None else ""
        super().__init__(f"unknown label {label!r}{where}")


class TableIncomplete(FolnerError):
    """An explicit fusion table has no entry for a queried pair.

    Missing pairs are an error, never an implicit zero, so truncated
    table files are caught instead of silently fusing to nothing.
    """

    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"fusion table has no entry for pair {pair!r}")


class ConfigError(FolnerError):
    """A run configuration failed validation; ``path`` addresses the bad field."""

    def __init__(self, message, path="$"):
        self.path = path
        super().__init__(f"{path}: {message}")


class ComputeError(FolnerError):
    """A module-level error propagated with command context."""


class SearchExhausted(FolnerError):
    """A search finished its declared bounds without finding a witness."""

    def __init__(self, message, bounds=None):
        self.bounds = dict(bounds or {})
        super().__init__(f"{message} (bounds: {self.bounds})")


class WitnessNotInStabilizer(FolnerError):
    """An orbit witness label is not verified to fix the sequence."""


class WitnessNotFixing(FolnerError):
    """A group element required to fix the sequence does not."""
