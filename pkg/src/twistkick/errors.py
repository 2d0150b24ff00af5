"""Exception hierarchy shared by all physics modules.

Every error carries a short machine-readable ``code`` so the CLI can report
failures in a stable, grep-able form on stderr.
"""


class TwistkickError(Exception):
    """Base class for all errors raised by this package."""

    default_code = "ERROR"

    def __init__(self, message, code=None):
        super().__init__(message)
        self.code = code or self.default_code


class DomainError(TwistkickError):
    """An input is outside the physical/mathematical domain of an operation."""

    default_code = "DOMAIN"


class ConfigurationError(TwistkickError):
    """A required optional field (e.g. a beam envelope scale) is missing."""

    default_code = "CONFIG"


class SolverError(TwistkickError):
    """A root finder or optimizer failed to produce a physical solution."""

    default_code = "NO_ROOT"


class QuadratureError(TwistkickError):
    """A numerical integral failed to converge or is non-normalizable."""

    default_code = "QUADRATURE"


class UndefinedDistributionError(TwistkickError):
    """All transition amplitudes vanish; sublevel probabilities are undefined."""

    default_code = "UNDEFINED_DISTRIBUTION"


class NoAbsorptionError(TwistkickError):
    """The absorption strength integral is zero; conditional quantities undefined."""

    default_code = "NO_ABSORPTION"


class TruncationWarning(UserWarning):
    """A basis truncation left more probability unaccounted for than requested."""
