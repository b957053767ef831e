"""Exception hierarchy.

Every error raised by the library derives from :class:`GraphGlueError`, and
each also inherits from the closest builtin (``ValueError``/``IndexError``)
so callers can catch either.
"""


class GraphGlueError(Exception):
    pass


class ValidationError(GraphGlueError, ValueError):
    """Input violates an invariant of a graph, spec or matrix."""


class IndexOutOfRange(ValidationError, IndexError):
    pass


class SelfLoop(ValidationError):
    pass


class ParallelEdge(ValidationError):
    pass


class TooSmall(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


class SameEdge(ValidationError):
    pass


class SameIndex(ValidationError):
    pass


class InvalidInterface(ValidationError):
    pass


class InvalidBridge(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NotSquare(DimensionMismatch):
    pass


class NotSymmetric(ValidationError):
    pass


class VerticesAdjacent(ValidationError):
    pass


class Disconnected(ValidationError):
    pass


class NoEdges(ValidationError):
    pass


class NoNonzeroEigenvalue(ValidationError):
    pass


class InexactDivision(GraphGlueError, ArithmeticError):
    """An identity that must hold exactly did not; indicates a bug."""


class NoConvergence(GraphGlueError, ArithmeticError):
    pass


class EigendecompositionFailure(GraphGlueError, ArithmeticError):
    pass
