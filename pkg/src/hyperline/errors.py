"""Exception hierarchy shared by every module of the package."""


class HyperlineError(Exception):
    """Base class for all errors raised by hyperline."""


class GraphError(HyperlineError, ValueError):
    """The input does not describe a finite simple connected metric graph."""


class LoopEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class NonpositiveLength(GraphError):
    pass


class Disconnected(GraphError):
    pass


class InvalidPoint(GraphError):
    pass


class CapExceeded(HyperlineError, RuntimeError):
    """Too many geodesics between a pair of points for exhaustive mode."""

    def __init__(self, cap, pair=None):
        self.cap = cap
        self.pair = pair
        where = f" between {pair[0]} and {pair[1]}" if pair else ""
        super().__init__(f"more than {cap} geodesics{where}")


class DegenerateLineGraph(HyperlineError, ValueError):
    pass


class OutsideImage(HyperlineError, ValueError):
    pass


class NotACycle(HyperlineError, ValueError):
    pass


class NonUniformLengths(HyperlineError, ValueError):
    pass


class OracleBudgetExceeded(HyperlineError, RuntimeError):
    pass


class HypothesisViolated(HyperlineError, ValueError):
    pass


class InvalidParameters(HyperlineError, ValueError):
    pass


class NoKnownValue(HyperlineError, LookupError):
    pass
