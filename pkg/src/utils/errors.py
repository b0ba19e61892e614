from typing import Any, Optional


class TriangulationError(Exception):
    """Base class for every error raised by the toolkit."""
    exit_code = 1


class InvalidInput(TriangulationError):
    """Malformed polygon, triangulation, measure or parameter."""
    exit_code = 3


class NotSimple(InvalidInput):
    def __init__(self, edge_a, edge_b):
        self.edges = (tuple(edge_a), tuple(edge_b))
        super().__init__(f"Polygon is not simple: edges {self.edges[0]} and {self.edges[1]} intersect")


class DegenerateVertex(InvalidInput):
    pass


class TooFewVertices(InvalidInput):
    pass


class WrongCount(InvalidInput):
    pass


class CrossingDiagonals(InvalidInput):
    pass


class InvalidDiagonal(InvalidInput):
    pass


class PolygonMismatch(InvalidInput):
    pass


class TooFew(InvalidInput):
    pass


class MeasureDomainError(InvalidInput):
    pass


class NotConvex(InvalidInput):
    pass


class KTooLarge(InvalidInput):
    pass


class BadValues(InvalidInput):
    pass


class RoundingCollision(InvalidInput):
    pass


class TooManyLayers(InvalidInput):
    pass


class NotDelaunayTriangulable(InvalidInput):
    pass


class Infeasible(TriangulationError):
    """Fewer than the requested number of nice triangulations exist."""
    exit_code = 2

    def __init__(self, count_found: int, requested: int, partial: Optional[Any] = None, message: Optional[str] = None):
        self.count_found = count_found
        self.requested = requested
        self.partial = partial
        if message is None:
            message = (
                f"The instance has less than {requested} nice triangulations "
                f"(found {count_found})"
            )
        super().__init__(message)


class ResourceLimit(TriangulationError):
    exit_code = 4

    def __init__(self, required: int, limit: int, what: str = "DP table cells"):
        self.required = required
        self.limit = limit
        super().__init__(f"{what} required ({required}) exceed the limit ({limit})")


class InvariantViolation(TriangulationError):
    exit_code = 5
