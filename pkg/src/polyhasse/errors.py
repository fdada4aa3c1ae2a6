"""Exception hierarchy.

``PreconditionError`` groups the failures where the input is well formed but
a mathematical precondition (a unit, an invertible linear part) is not met.
"""


class PolyHasseError(Exception):
    pass


class PreconditionError(PolyHasseError):
    pass


class NonInvertibleDenominator(PreconditionError, ValueError):
    pass


class NotAUnit(PreconditionError, ArithmeticError):
    pass


class NotAUnitDeterminant(PreconditionError, ArithmeticError):
    pass


class SingularLinearPart(PreconditionError, ArithmeticError):
    pass


class RingMismatch(PolyHasseError, ValueError):
    pass


class VariableMismatch(PolyHasseError, ValueError):
    pass


class DimensionMismatch(PolyHasseError, ValueError):
    pass


class ArityMismatch(PolyHasseError, ValueError):
    pass


class NonSquare(PolyHasseError, ValueError):
    pass


class MissingAssignment(PolyHasseError, KeyError):
    pass


class UnknownVariable(PolyHasseError, ValueError):
    pass


class BoundExceeded(PolyHasseError, ValueError):
    pass


class ExponentOverflow(PolyHasseError, OverflowError):
    pass


class ParseError(PolyHasseError, ValueError):
    """Malformed polynomial text; ``column`` is 1-based."""

    def __init__(self, message, column):
        super().__init__(f"{message} (column {column})")
        self.column = column


class NotAnAutomorphism(PolyHasseError):
    """Inverse verification failed.

    ``component`` is the 0-based index of the first component where a
    composition differs from the identity, ``residual`` is that composed
    component and ``side`` tells which composition failed (``"G o F"`` or
    ``"F o G"``).
    """

    def __init__(self, component, residual, side="G o F", message=None):
        self.component = component
        self.residual = residual
        self.side = side
        if message is None:
            message = (
                f"not an automorphism: component {component + 1} of {side} is "
                f"{residual}, expected {residual.vars[component]}"
            )
        super().__init__(message)


class BoundInconclusive(NotAnAutomorphism):
    """Verification failed at the degree bound over a ring that is not a field.

    The degree bound is only guaranteed over fields, so the failure does not
    prove that the map is not invertible.
    """
