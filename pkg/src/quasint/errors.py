"""Exception types raised by quasint."""


class QuasintError(Exception):
    """Base class; ``code`` is the machine-readable name used in CLI error objects."""

    @property
    def code(self) -> str:
        return type(self).__name__


class InvalidRational(QuasintError, ValueError):
    pass


class InvalidInterval(QuasintError, ValueError):
    pass


class NotContained(QuasintError, ValueError):
    pass


class OutOfDomain(QuasintError, ValueError):
    pass


class SpaceMismatch(QuasintError, ValueError):
    pass


class DomainTooSmall(QuasintError, ValueError):
    pass


class NotAnchoredAtZero(QuasintError, ValueError):
    pass


class RangeViolation(QuasintError, ValueError):
    pass


class EmptySet(QuasintError, ValueError):
    pass


class NotAdmissibleSet(QuasintError, ValueError):
    """Raised when a measure is asked about a set that is neither open nor closed."""


class ProductNotPwl(QuasintError, ValueError):
    pass


class NotMonotoneInput(QuasintError, ValueError):
    pass


class InvariantViolation(QuasintError, AssertionError):
    """An internal representation invariant failed; always a bug or a bad input object."""


class ScenarioError(QuasintError, ValueError):
    pass
