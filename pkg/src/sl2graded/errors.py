"""Exception types shared across the package."""


class ParameterMismatchError(ValueError):
    """Operands were built for different values of lambda."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation (e.g. lambda not in 2Z)."""


class InternalInconsistencyError(RuntimeError):
    """A computed result contradicts an identity that must hold; indicates a bug."""
