"""Exception types shared across the package."""


class BuBoundsError(Exception):
    """Base class for all errors raised by this package."""


# ring construction and arithmetic

class DuplicateGenerator(BuBoundsError):
    pass


class InhomogeneousRelation(BuBoundsError):
    pass


class OddDegreeOverOddP(BuBoundsError):
    pass


class MalformedReplacement(BuBoundsError):
    pass


class UnknownGenerator(BuBoundsError):
    pass


class MixedRings(BuBoundsError):
    pass


class DimensionMismatch(BuBoundsError):
    pass


class DegreeMismatch(BuBoundsError):
    pass


# polynomial algebra

class NonMonicDivisor(BuBoundsError):
    pass


# modular arithmetic

class NonPrimeModulus(BuBoundsError):
    pass


# bound appliers (structural preconditions; hypothesis failures are
# reported inside BoundReport, not raised)

class KLessThanN(BuBoundsError):
    pass


class NExceedsM(BuBoundsError):
    pass


class DimensionTooSmall(BuBoundsError):
    pass


class EmptyList(BuBoundsError):
    pass


class ParameterOutOfRange(BuBoundsError):
    pass


# problem-file front end

class ProblemSyntaxError(BuBoundsError):
    """Malformed problem text; carries 1-based line/column when known."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self):
        loc = ""
        if self.line is not None:
            loc = f"line {self.line}"
            if self.column is not None:
                loc += f", col {self.column}"
            loc += ": "
        return loc + super().__str__()


class UndeclaredName(ProblemSyntaxError):
    pass
