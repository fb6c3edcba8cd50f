"""Exception hierarchy.

InputError subclasses map to CLI exit code 2, NumericError subclasses to 4.
"""


class HybridError(Exception):
    pass


class InputError(HybridError, ValueError):
    """Bad arguments or points outside an operation's domain."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class NumericError(HybridError, ArithmeticError):
    pass


class WrongField(InputError):
    pass


class NotMonic(InputError):
    pass


class NotFlaggedIrreducible(InputError):
    pass


class NotSquarefree(InputError):
    pass


class UnsupportedTag(InputError):
    pass


class BadEpsilon(InputError):
    pass


class OutOfDisc(InputError):
    pass


class OutOfCylinder(InputError):
    pass


class OutOfRegion(InputError):
    pass


class BadDeltas(InputError):
    pass


class KernelPoint(InputError):
    pass


class DeltaTooLarge(InputError):
    pass


class DomainMismatch(InputError):
    pass


class SeedMismatch(InputError):
    pass


class ArchNotAllowed(InputError):
    pass


class UnsupportedPointKind(InputError):
    pass


class NotEquivariant(HybridError):
    pass


class NoConvergence(NumericError):
    pass


class StepCollapse(NumericError):
    pass
