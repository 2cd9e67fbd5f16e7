"""Exception types raised across the package."""


class EnvelopeError(Exception):
    pass


class DimensionMismatch(EnvelopeError, ValueError):
    pass


class LieParseError(EnvelopeError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownSymbol(LieParseError):
    pass


class DuplicateBasisName(LieParseError):
    pass


class NotAnIdeal(EnvelopeError, ValueError):
    pass


class DependentModuloIdeal(EnvelopeError, ValueError):
    pass


class AlgebraMismatch(EnvelopeError, ValueError):
    pass


class ImagesNotALieMorphism(EnvelopeError, ValueError):
    pass


class WeightsNotAdditive(EnvelopeError, ValueError):
    pass


class NonzeroConstantTerm(EnvelopeError, ValueError):
    pass


class CounitNotOne(EnvelopeError, ValueError):
    pass


class NotPrimitive(EnvelopeError, ValueError):
    pass


class ClosureExceedsBound(EnvelopeError, RuntimeError):
    pass


class ResultOutsideAlgebra(EnvelopeError, ValueError):
    pass


class ChainNotDecreasing(EnvelopeError, ValueError):
    pass


class NoStageContained(EnvelopeError, ValueError):
    pass


class StageMismatch(EnvelopeError, ValueError):
    pass


class NotAbelian(EnvelopeError, ValueError):
    pass


class NotCommutative(EnvelopeError, ValueError):
    pass


class ExpressionError(EnvelopeError, ValueError):
    """Malformed expression or an operation the current mode does not support."""
