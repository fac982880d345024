class BikernelError(Exception):
    """Base class for every error raised by the kernel."""


class DuplicateId(BikernelError):
    pass


class DanglingReference(BikernelError):
    pass


class TypeMismatch(BikernelError):
    pass


class NotStrict(BikernelError):
    pass


class InvalidMonoid(BikernelError):
    pass


class ConstructionFailed(BikernelError):
    pass


class PreconditionFailed(BikernelError):
    pass


class ChaoticClosureViolation(BikernelError):
    pass


class NotAGroupoid(BikernelError):
    pass


class EnumerationBudgetExceeded(BikernelError):
    pass


class SchemaError(BikernelError):
    """Malformed input document; the message names the offending key path."""
