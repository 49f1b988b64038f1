"""
Exception hierarchy for the stringtop engine.

Every error carries an ``exit_code`` and a human readable ``detail`` so the
command line layer can translate it the same way for every command:
- 2: usage errors (bad manifold names, malformed flags)
- 1: mathematical failures that cannot be expressed as report content
"""


class StringTopError(Exception):
    """Base class for all errors raised by the engine."""

    exit_code: int = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InvalidManifoldError(StringTopError):
    """Unparsable or unsupported manifold (e.g. S1, RP1)."""

    exit_code = 2


class UsageError(StringTopError):
    """Malformed window or range arguments."""

    exit_code = 2


class SubquotientError(StringTopError):
    """The image span is not contained in the kernel span."""


class CertificationError(StringTopError):
    """A stabilization bound for a truncated computation cannot be certified."""


class BudgetExceededError(StringTopError):
    """A brute-force request exceeds the configured Hochschild-degree budget."""


class SeriesSupportError(StringTopError):
    """A Poincare series has a nonzero coefficient in negative degree."""
