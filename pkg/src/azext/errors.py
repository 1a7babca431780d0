"""Exception hierarchy.

Errors split into two families that the CLI maps to distinct exit codes:
input problems (``InputError``, exit 2) and failures of the computation
itself (``ComputationError``, exit 3).
"""

from __future__ import annotations


class AzextError(Exception):
    """Base class for every error raised by this package."""


class InputError(AzextError):
    pass


class ComputationError(AzextError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)


class ValidationError(InputError):
    pass


class MismatchedField(ComputationError):
    pass


class MismatchedCurve(ComputationError):
    pass


class MismatchedAlgebra(ComputationError):
    pass


class NotInvertible(ComputationError):
    pass


class DenominatorVanishesOnCurve(ComputationError):
    pass


class DegenerateTrace(ComputationError):
    pass


class NonGenerating(ComputationError):
    pass


class UnsupportedResidueDegree(ComputationError):
    pass


class NoSolution(ComputationError):
    pass


class NonUniqueSolution(ComputationError):
    def __init__(self, message: str, dimension: int):
        self.dimension = dimension
        super().__init__(message)


class SingularPoint(ComputationError):
    pass


class PrecisionExhausted(ComputationError):
    def __init__(self, message: str, cap: int):
        self.cap = cap
        super().__init__(message)


class ZeroElement(ComputationError):
    pass
