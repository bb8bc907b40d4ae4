"""Exception types shared across the package."""


class PValentError(Exception):
    """Base class for all package-specific errors."""


class DomainError(PValentError, ValueError):
    """A parameter lies outside the domain an operation is defined on."""


class InadmissibleDeltaError(DomainError):
    """The radius delta does not exceed the lower bound its family requires."""


class HypothesisViolationError(PValentError):
    """An input fails a hypothesis of the statement being checked."""


class FalsificationError(PValentError):
    """Hypotheses were verified numerically but the guaranteed conclusion failed.

    This never indicates new mathematics; it indicates an implementation or
    tolerance defect and must not be swallowed.
    """
