"""Exception types raised by the diagram, disk-search and algebra layers."""


class LegdgaError(Exception):
    """Base class for all package errors."""


class DiagramFormatError(LegdgaError):
    """Malformed .dgm content: bad JSON shape, bad rational literal,
    too few points, duplicate consecutive points, unknown keys."""


class NotClosable(LegdgaError):
    """A component has a nonzero p dq integral, so no u-coordinate closes up."""


class TripleIntersection(LegdgaError):
    """Three or more strand segments pass through one point."""


class TangentialContact(LegdgaError):
    """Two segments overlap collinearly (includes backtracking vertices)."""


class VertexOnStrand(LegdgaError):
    """A polyline vertex lies on another segment."""


class ZeroHeight(LegdgaError):
    """Two strands of a crossing carry equal u, so the link is not embedded."""


class UnsupportedDiagram(LegdgaError):
    """Structurally valid input outside what the planar-map builder handles
    (for example a component with no crossing incidences)."""


class NoRoomForKink(LegdgaError):
    """The chosen edge cannot host a kink loop plus its compensating bump."""


class LinkGradingUnsupported(LegdgaError):
    """Crossing degrees are defined here for knots only."""


class ImmersionAmbiguity(LegdgaError):
    """A closed disk boundary passed all combinatorial checks but shows
    evidence of more than one immersion filling; counting it once could be
    wrong, so the search refuses to continue."""


class DiskValidationError(LegdgaError):
    """An enumerated disk boundary violated an identity that admissible
    disks must satisfy; signals a bug in the enumeration, never ignored."""


class OracleBudgetExceeded(LegdgaError):
    """The brute-force disk oracle hit its work budget."""


class SearchCapExceeded(LegdgaError):
    """The exhaustive augmentation search was asked for more generators
    than the configured cap allows."""

    def __init__(self, n: int, cap: int):
        super().__init__(f"{n} generators exceeds augmentation search cap {cap}")
        self.n = n
        self.cap = cap


class UnknownGenerator(LegdgaError):
    """A polynomial mentions a generator the algebra does not have."""


class SelfReference(LegdgaError):
    """An elementary substitution a -> a + u where u mentions a."""
