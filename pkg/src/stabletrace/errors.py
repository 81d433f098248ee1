"""Exception taxonomy shared across the package.

Every error raised by library code derives from StableTraceError so callers
can distinguish domain failures from programming errors.
"""

from __future__ import annotations


class StableTraceError(Exception):
    """Base class for all domain errors."""


# -- graph parsing / structure -------------------------------------------

class GraphFormatError(StableTraceError):
    """Malformed graph or trace text (wrong token count, bad params)."""


class EmptyGraph(StableTraceError):
    """Input contains no edges."""


class SelfLoop(StableTraceError):
    """An edge joins a vertex to itself."""


class DuplicateEdge(StableTraceError):
    """The same unordered edge appears more than once."""


class NotConnected(StableTraceError):
    """The edge list describes a disconnected graph."""


class NotEulerian(StableTraceError):
    """Some vertex has odd degree (or the graph is not connected)."""


class OddDegree(NotEulerian):
    """Expansion input has a vertex of odd degree."""


class MinDegreeTooLow(StableTraceError):
    """Minimum degree violates the required bound."""


class NotFourRegular(StableTraceError):
    """Operation requires a 4-regular host graph."""


# -- subtree contraction --------------------------------------------------

class NotATree(StableTraceError):
    """A subtree set does not induce a tree."""


class MultiNeighbor(StableTraceError):
    """A vertex outside a subtree has two or more neighbors inside it."""


class OverlappingSubtrees(StableTraceError):
    """Subtree vertex sets are not pairwise disjoint."""


# -- double-trace validation ----------------------------------------------

class WrongLength(StableTraceError):
    """Step sequence length differs from twice the edge count."""


class NonEdgeStep(StableTraceError):
    """A consecutive step pair is not an edge of the host graph."""

    def __init__(self, position: int, pair: tuple[str, str]):
        self.position = position
        self.pair = pair
        super().__init__(f"step {position}: {pair[0]} -> {pair[1]} is not an edge")


class EdgeCountMismatch(StableTraceError):
    """Some edge is not traversed exactly twice."""

    def __init__(self, edge: tuple[str, str], count: int):
        self.edge = edge
        self.count = count
        super().__init__(f"edge {edge[0]}-{edge[1]} traversed {count} times, expected 2")


class DegreeTooLargeForOracle(StableTraceError):
    """Brute-force repetition oracle refuses hosts with max degree > 12."""


# -- expansion / projection -----------------------------------------------

class MapMismatch(StableTraceError):
    """An expansion map does not match the supplied graph or trace."""


# -- construction ----------------------------------------------------------

class NoRepetitionAtVertex(StableTraceError):
    """Vertex has no removable pair of order-2 repetitions."""


class InternalStabilityCheckFailed(StableTraceError):
    """A constructed trace failed its own verification; construction bug."""
