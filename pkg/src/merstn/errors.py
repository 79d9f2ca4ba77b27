"""Exception types shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, DataError -> 3,
DegenerateStatisticsError -> 4.
"""


class ConfigError(ValueError):
    """A configuration value is missing, malformed or out of range."""


class DataError(ValueError):
    """Input data violates a structural requirement (file format, shape, range)."""


class EdfFormatError(DataError):
    """Malformed EDF byte stream; carries the byte offset of the defect."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class DegenerateStatisticsError(ValueError):
    """A statistical procedure received degenerate input (e.g. all-zero differences)."""


class LeakageError(AssertionError):
    """Train/test row-id disjointness was violated. Always fatal."""
