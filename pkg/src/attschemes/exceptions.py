"""
Exception types raised by attenuated-schemes.
"""

from typing import List, Optional


class SchemeError(Exception):
    """Base class for all errors raised by the package."""


class ArithmeticDomainError(SchemeError, ValueError):
    """An exact kernel was called outside the region where it is defined."""


class FieldNotSupportedError(SchemeError, ValueError):
    """The requested field order has no entry in the built-in field table."""


class DomainIndexError(SchemeError, ValueError):
    """An index pair lies outside the domain of the scheme."""


class ConfigError(SchemeError, ValueError):
    """Invalid run configuration."""


class InvariantViolation(SchemeError, RuntimeError):
    """An internal invariant failed; this indicates a bug rather than bad input."""


class VerificationFailure(SchemeError):
    """One or more verification checks failed."""

    def __init__(self, message: str, failed_checks: Optional[List[str]] = None):
        super().__init__(message)
        self.failed_checks = failed_checks or []
