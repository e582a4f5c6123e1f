"""Exception types raised across the package.

Every error is a subclass of :class:`PlanarTuranError`, so callers (notably
the CLI) can distinguish "bad input / misuse" from a genuine verification
failure, which is reported as a value, never as an exception.
"""

from __future__ import annotations


class PlanarTuranError(Exception):
    """Base class for all errors raised by this package."""


# ---------------------------------------------------------------------------
# embedding: rotation systems, face tracing, serialization
# ---------------------------------------------------------------------------

class AsymmetricAdjacency(PlanarTuranError):
    def __init__(self, u: int, v: int):
        super().__init__(f"vertex {u} lists {v} as a neighbor but not vice versa")
        self.pair = (u, v)


class SelfLoop(PlanarTuranError):
    def __init__(self, v: int):
        super().__init__(f"vertex {v} lists itself as a neighbor")
        self.vertex = v


class DuplicateNeighbor(PlanarTuranError):
    def __init__(self, u: int, v: int):
        super().__init__(f"vertex {u} lists neighbor {v} more than once")
        self.pair = (u, v)


class DisconnectedGraph(PlanarTuranError):
    pass


class NoSuchEdge(PlanarTuranError):
    def __init__(self, u: int, v: int):
        super().__init__(f"no edge between {u} and {v}")
        self.pair = (u, v)


class ZeroLength(PlanarTuranError):
    pass


class MalformedInput(PlanarTuranError):
    """Unparseable serialized graph; ``offset`` is the byte position."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


# ---------------------------------------------------------------------------
# hexhost: the hexagonal host family and girth stretching
# ---------------------------------------------------------------------------

class OddK(PlanarTuranError):
    pass


class KTooSmall(PlanarTuranError):
    pass


class GirthTooSmall(PlanarTuranError):
    pass


class HostTooLargeForAudit(PlanarTuranError):
    pass


# ---------------------------------------------------------------------------
# gadgets: triangulations with short longest cycles
# ---------------------------------------------------------------------------

class TooFewVertices(PlanarTuranError):
    pass


class NotATriangulation(PlanarTuranError):
    pass


class TTooSmall(PlanarTuranError):
    pass


class IndexOutOfRange(PlanarTuranError):
    pass


class EmptyLayers(PlanarTuranError):
    pass


# ---------------------------------------------------------------------------
# substitution
# ---------------------------------------------------------------------------

class BadHostDegree(PlanarTuranError):
    def __init__(self, v: int, degree: int):
        super().__init__(f"host vertex {v} has degree {degree}, expected 2 or 3")
        self.vertex = v
        self.degree = degree


class EmbeddingMismatch(PlanarTuranError):
    """Post-construction Euler audit failed; an anchor-ordering bug, not bad input."""


class OddHalfCount(PlanarTuranError):
    pass


class DegenerateDenominator(PlanarTuranError):
    pass


class NonUniformGadgets(PlanarTuranError):
    pass


class TrimCapacityExceeded(PlanarTuranError):
    pass


class MarginLost(PlanarTuranError):
    """Trim succeeded structurally but the result no longer beats the bound."""


# ---------------------------------------------------------------------------
# cycles: exhaustive cycle queries
# ---------------------------------------------------------------------------

class AcyclicGraph(PlanarTuranError):
    pass


class GraphTooLarge(PlanarTuranError):
    pass


class BudgetExceeded(PlanarTuranError):
    def __init__(self, explored: int):
        super().__init__(f"node expansion budget exceeded after {explored} expansions")
        self.explored = explored


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

class EllTooSmall(PlanarTuranError):
    pass


class BadParity(PlanarTuranError):
    pass


class NonpositiveD(PlanarTuranError):
    pass
