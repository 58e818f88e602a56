"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid group parameters or out-of-domain arguments."""


class ContractError(RuntimeError):
    """An operation was called on an object that has not been verified for it."""


class ResourceGuardError(RuntimeError):
    """A computation would exceed the configured desk-scale limits."""


class HypothesisFailure(ValueError):
    """The hypothesis of a congruence check does not hold for the given input."""
