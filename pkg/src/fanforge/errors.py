"""Exception hierarchy shared by the whole package."""


class FanforgeError(Exception):
    """Base class for all package errors."""


class DomainError(FanforgeError):
    """An element or subset does not belong to the expected ground set."""


class PreconditionError(FanforgeError):
    """A documented precondition of an operation was violated."""


class CapacityError(FanforgeError):
    """The instance exceeds the configured enumeration or search limits."""


class AxiomError(FanforgeError):
    """A set system presented as a matroid or twisted matroid fails its axioms."""


class ValidationError(FanforgeError):
    """A decomposition, witness, or certificate fails structural validation."""
