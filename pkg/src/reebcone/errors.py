"""Exception types raised across the package."""


class ReebConeError(ValueError):
    """Base class for input and evaluation errors."""


class InvalidCone(ReebConeError):
    pass


class NotStronglyConvex(InvalidCone):
    pass


class NotGood(InvalidCone):
    def __init__(self, face, index):
        self.face = tuple(face)
        self.index = index
        super().__init__(
            f"face spanned by facets {self.face} fails goodness: "
            f"normal lattice has index {index} in its saturation")


class NotSimple(InvalidCone):
    def __init__(self, vertex, nfacets):
        self.vertex = vertex
        self.nfacets = nfacets
        super().__init__(f"vertex {vertex} lies on {nfacets} facets; slice is not simple")


class DegenerateEdge(InvalidCone):
    pass


class NonPrimitiveNormalWarning(UserWarning):
    """A facet normal is a multiple m > 1 of a primitive vector (orbifold label)."""


class NotInReebCone(ReebConeError):
    pass


class MixedTruncation(ReebConeError):
    pass


class VanishingWeight(ReebConeError, ZeroDivisionError):
    """A weight pairing <kappa_j, b> is zero: b is not generic for the dataset."""

    def __init__(self, component, j):
        self.component = component
        self.j = j
        super().__init__(f"weight {j} of component {component!r} pairs to zero with b")


class DirectionNotGeneric(ReebConeError):
    pass


class PoleAtZero(ReebConeError):
    pass


class ZeroVolume(ReebConeError, ZeroDivisionError):
    pass


class AmbiguousMinimizer(ReebConeError):
    pass


class NotTransversal(ReebConeError):
    pass


class NonConvergence(ReebConeError):
    pass


class GridTooCoarse(ReebConeError):
    pass
