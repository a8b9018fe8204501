"""Exception hierarchy shared by all modules."""


class MultipathError(Exception):
    """Base class for every error raised by this package."""


class GraphFormatError(MultipathError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnreachableVertex(MultipathError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} is unreachable from the source")


class NotOutconnected(MultipathError):
    """Raised when a target has fewer edge-disjoint paths than the phase needs."""

    def __init__(self, vertex, phase):
        self.vertex = vertex
        self.phase = phase
        super().__init__(
            f"vertex {vertex} has fewer than {phase} edge-disjoint paths from the source"
        )


class InternalInvariant(MultipathError, AssertionError):
    """An algorithmic invariant failed; always indicates a bug, never bad input."""


class NegativeReducedCost(InternalInvariant):
    def __init__(self, tail, head, value):
        self.tail, self.head, self.value = tail, head, value
        super().__init__(f"reduced cost of ({tail}->{head}) is negative: {value}")


class InstanceTooLarge(MultipathError, ValueError):
    pass


class DecompositionError(MultipathError):
    pass


class BadDivergence(DecompositionError):
    def __init__(self, vertex, value):
        self.vertex, self.value = vertex, value
        super().__init__(f"net outflow {value} at vertex {vertex}")


class LeftoverEdges(DecompositionError):
    def __init__(self, edges):
        self.edges = frozenset(edges)
        super().__init__(f"edges left over after peeling paths: {sorted(self.edges)}")


class CycleStuck(DecompositionError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"walk closed a cycle through vertices {self.cycle}")
