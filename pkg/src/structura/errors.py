"""Exception types shared across the library."""


class StructuraError(Exception):
    """Base class for all structura-specific errors."""


# scalar layer
class DivisionByZeroPoly(StructuraError):
    pass


class BothZero(StructuraError):
    pass


class RootAtA(StructuraError):
    pass


class FieldNotSplit(StructuraError):
    pass


# matrix kernel
class KOutOfRange(StructuraError):
    pass


class RankDeficient(StructuraError):
    pass


class ZeroMatrix(StructuraError):
    pass


class DegreeTooSmall(StructuraError):
    pass


class DegreeMismatch(StructuraError):
    pass


# extraction / verification
class ShapeMismatch(StructuraError):
    pass


# feasibility / synthesis
class LengthMismatch(StructuraError):
    pass


class MalformedPrescription(StructuraError):
    pass


class Infeasible(StructuraError):
    pass


class ImpossibleSquareCase(StructuraError):
    pass


class SumMismatch(StructuraError):
    pass


class MajorizationFails(StructuraError):
    pass


class SearchExhausted(StructuraError):
    pass


class CompletionSearchExhausted(StructuraError):
    pass


class PreconditionViolated(StructuraError):
    pass


class NonMonicDiagonal(StructuraError):
    pass


class SingularInput(StructuraError):
    pass


# io
class ParseError(StructuraError):
    pass
