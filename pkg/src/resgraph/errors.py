"""Exception hierarchy.

Every error carries a machine-readable ``code`` (the class name) used by the
JSON reports, and belongs to one of two families that the CLI maps onto exit
codes: :class:`InputError` (bad graph or violated precondition, exit 2) and
:class:`InternalCheckError` (two independent computations disagree, exit 3).
"""

from __future__ import annotations


class ResgraphError(Exception):
    exit_code = 2

    @property
    def code(self) -> str:
        return type(self).__name__


class InputError(ResgraphError, ValueError):
    exit_code = 2


class InternalCheckError(ResgraphError, AssertionError):
    """Raised when two routes to the same invariant give different answers."""

    exit_code = 3


# -- graph construction -----------------------------------------------------

class GraphError(InputError):
    def __init__(self, message: str, element: object = None):
        super().__init__(message)
        self.element = element


class DuplicateVertex(GraphError):
    pass


class UnknownEndpoint(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class Disconnected(GraphError):
    pass


class NonPositiveWeight(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


class DSLSyntaxError(InputError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


# -- preconditions ------------------------------------------------------------

class DimensionMismatch(InputError):
    pass


class NotNegativeDefinite(InputError):
    pass


class NotMinimalResolution(InputError):
    pass


class NotRational(InputError):
    pass


class NotAntiNef(InputError):
    pass


class NotEffective(InputError):
    pass


class NonIntegralResult(InputError):
    pass


class NotStarShaped(InputError):
    pass


class NotQuotient(InputError):
    pass


class CyclicQuotient(InputError):
    pass


class GorensteinInput(InputError):
    pass


class WeightBelowTwo(InputError):
    pass


class NotCoprime(InputError):
    pass


class OutOfRange(InputError):
    pass


class DegreeNotPositive(InputError):
    pass


class CapExceeded(InputError):
    pass


# -- self-checks --------------------------------------------------------------

class InternalDisagreement(InternalCheckError):
    pass


class CriterionDisagreement(InternalCheckError):
    pass


class CrossCheckMismatch(InternalCheckError):
    pass


class FormulaMismatch(InternalCheckError):
    pass
