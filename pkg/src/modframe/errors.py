"""Exception hierarchy.

Everything derives from :class:`ModframeError`. The CLI maps
:class:`ShapeError` subclasses to exit code 3 and :class:`PreconditionError`
subclasses to exit code 4.
"""


class ModframeError(Exception):
    pass


class ShapeError(ModframeError, ValueError):
    pass


class PreconditionError(ModframeError, ValueError):
    pass


class NonSquare(ShapeError):
    pass


class ShapeMismatch(ShapeError):
    pass


class DimensionError(ShapeError):
    pass


class IndexOutOfRange(ShapeError, IndexError):
    pass


class NotHermitian(PreconditionError):
    pass


class NoConvergence(ModframeError, ArithmeticError):
    pass


class DomainError(PreconditionError):
    pass


class NotPositive(PreconditionError):
    pass


class SingularElement(PreconditionError):
    pass


class EmptySystem(PreconditionError):
    pass


class NotAFrame(PreconditionError):
    pass


class NotSurjective(PreconditionError):
    pass


class NotDual(PreconditionError):
    pass


class ChainNotIncreasing(PreconditionError):
    pass


class LastNotIdentity(PreconditionError):
    pass


class NotContraction(PreconditionError):
    pass


class NotDominated(PreconditionError):
    pass


class BesselBoundExceedsOne(PreconditionError):
    pass


class ExistenceFailure(PreconditionError):
    """No Parseval dual exists; ``reason`` is ``"lower_bound"`` or ``"corank"``."""

    reason = "existence"


class LowerBoundBelowOne(ExistenceFailure):
    reason = "lower_bound"


class InsufficientCorank(ExistenceFailure):
    reason = "corank"
