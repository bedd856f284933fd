"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class MaxAlgebraError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(MaxAlgebraError, ValueError):
    pass


class EmptyFamily(MaxAlgebraError, ValueError):
    pass


class CyclicGraph(MaxAlgebraError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"digraph has a multi-vertex cycle through {self.cycle}")


class NotTriangularizable(MaxAlgebraError):
    pass


class PreconditionFailed(MaxAlgebraError):
    """One or more hypotheses of a theorem check do not hold.

    ``failed`` lists a short human-readable reason per failing hypothesis.
    """

    def __init__(self, failed):
        self.failed = list(failed)
        super().__init__("precondition failed: " + "; ".join(self.failed))


class NotInCommutant(MaxAlgebraError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"witness #{index} does not commute with the family")


class TooLarge(MaxAlgebraError):
    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"order {n} exceeds enumeration guard {limit}")


class NotFactorable(MaxAlgebraError):
    pass


class TheoremViolation(MaxAlgebraError, AssertionError):
    """A theorem's conclusion failed although its hypotheses held."""


class ParseError(MaxAlgebraError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
