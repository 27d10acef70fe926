"""Exception types raised across the package."""

from __future__ import annotations


class InvalidInputError(ValueError):
    """An argument is outside the domain of the operation."""


class UndefinedMetricError(ArithmeticError):
    """A statistic is mathematically undefined for the given values (e.g. Gini with mean <= 0)."""


class InsufficientDataError(ValueError):
    """Too few usable data points to perform a fit."""


class FinishedRunError(RuntimeError):
    """``step`` was called on a world that already completed all its steps."""


class ConfigError(ValueError):
    """Malformed or out-of-range configuration.

    ``line`` is the 1-based line number in the config text, or None when the
    problem is not tied to a single line (e.g. a CLI override).
    """

    def __init__(self, message: str, line: int | None = None, key: str | None = None):
        self.line = line
        self.key = key
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class ParamError(InvalidInputError):
    """A simulation parameter violates its allowed range; ``key`` names it."""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")
