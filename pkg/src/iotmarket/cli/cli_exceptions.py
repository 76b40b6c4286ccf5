# iotmarket/cli/cli_exceptions.py
"""
CLI Exceptions
--------------

Errors raised while reading market files and assembling a run.
"""

from typing import Optional


class CliError(Exception):
    """Base CLI exception."""


class MarketFileError(CliError):
    """Raised for a malformed or invalid market file; carries the 1-based line and column when known."""

    def __init__(self, message: str, path: str = "", line: Optional[int] = None, column: Optional[int] = None):
        self.path = path
        self.line = line
        self.column = column
        where = path or "<market>"
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")


class RunConfigError(CliError):
    """Raised when flags, [options] and environment do not form a valid run."""


class UsageError(CliError):
    """Raised for an unknown command, a missing flag or a flag value of the wrong type."""
