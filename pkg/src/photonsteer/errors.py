"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter is outside its physical domain (e.g. a probability not in [0, 1])."""


class InvalidOperatorError(ValueError):
    """An operator violates a structural requirement (Hermiticity, positivity)."""


class StateError(RuntimeError):
    """An operation was applied to a state in the wrong stage (e.g. loss applied twice)."""


class ResourceLimitError(RuntimeError):
    """A brute-force computation would exceed its built-in size cap."""
