"""Exception hierarchy shared by every geometric module."""


class GeometryError(ValueError):
    """Base class for all precondition and degeneracy failures."""


# kernel
class ZeroDenominator(GeometryError, ZeroDivisionError):
    pass


class MixedBackend(GeometryError):
    """Exact and approximate scalars were combined in one computation."""


# p2
class ZeroCoordinates(GeometryError):
    """All homogeneous coordinates vanish."""


class CoincidentPoints(GeometryError):
    pass


class CoincidentLines(GeometryError):
    pass


class NotCollinear(GeometryError):
    pass


class DegenerateQuadruple(GeometryError):
    pass


class DegeneratePairs(GeometryError):
    pass


class NotOnLine(GeometryError):
    pass


class SingularMatrix(GeometryError):
    pass


# p3
class CollinearPoints(GeometryError):
    pass


class CoincidentPlanes(GeometryError):
    pass


class LineInPlane(GeometryError):
    pass


class UndefinedProjection(GeometryError):
    pass


class HypothesisFails(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class PlaneContainsFold(GeometryError):
    pass


class SkewLines(GeometryError):
    pass


class InvalidSheet(GeometryError):
    pass


# conics
class NoUniqueConic(GeometryError):
    pass


class PointNotOnConic(GeometryError):
    pass


class SingularPoint(GeometryError):
    pass


class InvalidIncidence(GeometryError):
    pass


class NoSameSideTangents(GeometryError):
    pass


# theorems
class CoincidentSides(GeometryError):
    pass


class DegenerateBase(GeometryError):
    pass


class LineThroughBasePoint(GeometryError):
    pass


class SecantMissesConic(GeometryError):
    pass


class IrrationalMeet(SecantMissesConic):
    """The secant meets the conic in a conjugate pair of quadratic irrationals."""


class SecantNotThroughApex(GeometryError):
    pass


class DegenerateAxis(GeometryError):
    pass


class CarrierIncidenceViolated(GeometryError):
    pass


class InadmissibleQuadruplet(GeometryError):
    pass


class RayMissesFold(GeometryError):
    pass


# moulton
class BudgetExhausted(GeometryError):
    pass
