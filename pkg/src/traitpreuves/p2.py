"""The real projective plane in homogeneous coordinates.

Points and lines are triples modulo scale. Both are stored in canonical
form (see :func:`traitpreuves.kernel.canonical`), so exact equality is a
plain tuple comparison. Nothing is special-cased for parallel lines: their
meet is a point with ``z == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernel
from .errors import (
    CoincidentLines,
    CoincidentPoints,
    DegeneratePairs,
    DegenerateQuadruple,
    NotCollinear,
    NotOnLine,
    SingularMatrix,
    ZeroCoordinates,
)
from .kernel import DEFAULT_TOL, Tolerance


class _Homogeneous:
    __slots__ = ()

    def __init__(self, *coords):
        if len(coords) == 1 and not kernel.is_exact(coords[0]) and not isinstance(coords[0], float):
            coords = tuple(coords[0])
        if len(coords) != self._dim:
            raise ValueError(f"{type(self).__name__} needs {self._dim} coordinates")
        canon = kernel.canonical(coords)
        if canon is None:
            raise ZeroCoordinates(f"{type(self).__name__} coordinates cannot all vanish")
        object.__setattr__(self, "coords", canon)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other):
        return type(self) is type(other) and self.coords == other.coords

    def __hash__(self):
        return hash((type(self).__name__, self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self):
        return self._dim

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(str, self.coords))})"

    @property
    def exact(self) -> bool:
        return kernel.is_exact(self.coords[0])

    @property
    def backend(self) -> str:
        return kernel.EXACT if self.exact else kernel.APPROX

    def to_approx(self):
        return type(self)(*(float(c) for c in self.coords))


class PointP2(_Homogeneous):
    __slots__ = ("coords",)
    _dim = 3

    @classmethod
    def affine(cls, x, y):
        one = 1 if kernel.is_exact(x) and kernel.is_exact(y) else 1.0
        return cls(x, y, one)

    @property
    def at_infinity(self) -> bool:
        return kernel.scalar_is_zero(self.coords[2])

    def xy(self):
        """Affine coordinates; raises ZeroDivisionError for points at infinity."""
        x, y, z = self.coords
        if self.exact:
            return Fraction(x, z), Fraction(y, z)
        return x / z, y / z

    def __repr__(self):
        x, y, z = self.coords
        return f"({x}:{y}:{z})"


class LineP2(_Homogeneous):
    __slots__ = ("coords",)
    _dim = 3

    def __repr__(self):
        u, v, w = self.coords
        return f"[{u}:{v}:{w}]"


LINE_AT_INFINITY = LineP2(0, 0, 1)


def point(x, y) -> PointP2:
    return PointP2.affine(x, y)


def _check_same_backend(*objs):
    return kernel.backend_of(*(o.coords[0] for o in objs))


def _vector_vanishes(v, tol, scale=1.0):
    return kernel.is_zero_vector(v, tol, scale)


def join(p: PointP2, q: PointP2, tol: Tolerance = DEFAULT_TOL) -> LineP2:
    _check_same_backend(p, q)
    c = kernel.cross(p.coords, q.coords)
    if _vector_vanishes(c, tol):
        raise CoincidentPoints(f"{p} and {q} coincide")
    return LineP2(*c)


def meet(l: LineP2, m: LineP2, tol: Tolerance = DEFAULT_TOL) -> PointP2:
    _check_same_backend(l, m)
    c = kernel.cross(l.coords, m.coords)
    if _vector_vanishes(c, tol):
        raise CoincidentLines(f"{l} and {m} coincide")
    return PointP2(*c)


def incident(p: PointP2, l: LineP2, tol: Tolerance = DEFAULT_TOL) -> bool:
    _check_same_backend(p, l)
    s = kernel.dot(p.coords, l.coords)
    if kernel.is_exact(s):
        return s == 0
    scale = max(abs(a * b) for a, b in zip(p.coords, l.coords))
    return kernel.scalar_is_zero(s, tol, scale)


def _det_vanishes(a, b, c, tol):
    _check_same_backend(a, b, c)
    d = kernel.det3(a.coords, b.coords, c.coords)
    if kernel.is_exact(d):
        return d == 0
    return kernel.scalar_is_zero(d, tol, kernel.det3_scale(a.coords, b.coords, c.coords))


def collinear(p: PointP2, q: PointP2, r: PointP2, tol: Tolerance = DEFAULT_TOL) -> bool:
    return _det_vanishes(p, q, r, tol)


def concurrent(l: LineP2, m: LineP2, n: LineP2, tol: Tolerance = DEFAULT_TOL) -> bool:
    return _det_vanishes(l, m, n, tol)


def same(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Equality modulo scale; exact for the exact backend."""
    if type(a) is not type(b):
        return False
    if a.exact and b.exact:
        return a.coords == b.coords
    if len(a.coords) == 3:
        return _vector_vanishes(kernel.cross(a.coords, b.coords), tol)
    av, bv = a.coords, b.coords
    return all(
        kernel.scalar_is_zero(av[i] * bv[j] - av[j] * bv[i], tol)
        for i in range(len(av))
        for j in range(i + 1, len(av))
    )


# -- homographies ----------------------------------------------------------


class Homography:
    """Invertible 3x3 matrix acting on points, modulo scale."""

    __slots__ = ("m",)

    def __init__(self, m):
        rows = tuple(tuple(r) for r in m)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("homography needs a 3x3 matrix")
        flat = kernel.canonical([x for r in rows for x in r])
        if flat is None:
            raise SingularMatrix("zero matrix")
        rows = (flat[0:3], flat[3:6], flat[6:9])
        d = kernel.det(rows)
        if kernel.scalar_is_zero(d, DEFAULT_TOL):
            raise SingularMatrix("homography matrix is singular")
        object.__setattr__(self, "m", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Homography is immutable")

    def __eq__(self, other):
        return isinstance(other, Homography) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return f"Homography({self.m})"

    @classmethod
    def identity(cls):
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    def inverse(self) -> "Homography":
        return Homography(kernel.adjugate3(self.m))

    def __matmul__(self, other: "Homography") -> "Homography":
        cols = kernel.transpose(other.m)
        return Homography(tuple(tuple(kernel.dot(r, c) for c in cols) for r in self.m))


def apply_homography(h: Homography, p: PointP2) -> PointP2:
    return PointP2(*kernel.matmul(h.m, p.coords))


def apply_homography_line(h: Homography, l: LineP2) -> LineP2:
    """Image of a line: coefficients transform by the inverse transpose."""
    adj = kernel.adjugate3(h.m)
    return LineP2(*kernel.matmul(kernel.transpose(adj), l.coords))


# -- the projective line inside the plane ---------------------------------


def _basis_rows(p: PointP2, q: PointP2):
    """Coordinate indices (i, j) on which p and q are independent."""
    best = None
    for i, j in ((0, 1), (0, 2), (1, 2)):
        d = kernel.det2(p[i], q[i], p[j], q[j])
        if best is None or abs(d) > abs(best[2]):
            best = (i, j, d)
    return best


def line_parameters(base, x: PointP2):
    """(alpha, beta) with x ~ alpha*P + beta*Q for base = (P, Q), up to one common factor.

    The common factor depends only on the base, so ratios of 2x2
    determinants built from these pairs are basis-independent.
    """
    p, q = base
    i, j, _ = _basis_rows(p, q)
    alpha = x[i] * q[j] - x[j] * q[i]
    beta = p[i] * x[j] - p[j] * x[i]
    return alpha, beta


def from_parameters(base, alpha, beta) -> PointP2:
    p, q = base
    return PointP2(*(alpha * a + beta * b for a, b in zip(p.coords, q.coords)))


def _distinct_base(points, tol):
    first = points[0]
    for other in points[1:]:
        if not same(first, other, tol):
            return first, other
    raise DegenerateQuadruple("all points coincide")


def _require_collinear(points, tol):
    p, q = _distinct_base(points, tol)
    l = join(p, q, tol)
    for x in points:
        if not incident(x, l, tol):
            raise NotCollinear(f"{x} is not on {l}")
    return (p, q), l


def _bracket(u, v):
    return u[0] * v[1] - u[1] * v[0]


def cross_ratio(a: PointP2, b: PointP2, c: PointP2, d: PointP2, tol: Tolerance = DEFAULT_TOL):
    """(a, b; c, d) = ((c-a)(d-b)) / ((c-b)(d-a)) in affine parameters."""
    _check_same_backend(a, b, c, d)
    base, _ = _require_collinear([a, b, c, d], tol)
    pa, pb, pc, pd = (line_parameters(base, x) for x in (a, b, c, d))
    num = _bracket(pa, pc) * _bracket(pb, pd)
    den = _bracket(pb, pc) * _bracket(pa, pd)
    if kernel.scalar_is_zero(den, tol):
        raise DegenerateQuadruple("cross-ratio denominator vanishes")
    if kernel.is_exact(den):
        return Fraction(num) / Fraction(den)
    return num / den


@dataclass(frozen=True)
class Involution:
    """Involution of the line spanned by ``base``, acting on (alpha, beta) parameters."""

    base: tuple
    m: tuple

    @property
    def line(self) -> LineP2:
        return join(*self.base)


def involution_from_pairs(pair1, pair2, tol: Tolerance = DEFAULT_TOL) -> Involution:
    """The unique involution exchanging the points of ``pair1`` and of ``pair2``.

    A pair may repeat a point; that point is then fixed.
    """
    pts = [pair1[0], pair1[1], pair2[0], pair2[1]]
    _check_same_backend(*pts)
    base, _ = _require_collinear(pts, tol)
    # An involution is the symmetric bilinear relation x^T S y = 0.
    rows = []
    for x, y in (pair1, pair2):
        u, v = line_parameters(base, x), line_parameters(base, y)
        rows.append((u[0] * v[0], u[0] * v[1] + u[1] * v[0], u[1] * v[1]))
    s11, s12, s22 = kernel.cross(rows[0], rows[1])
    if kernel.is_zero_vector((s11, s12, s22), tol):
        raise DegeneratePairs("the two pairs do not determine a unique involution")
    if kernel.scalar_is_zero(s11 * s22 - s12 * s12, tol):
        raise DegeneratePairs("the induced map is singular")
    # y = J S x with J the quarter turn, so that (S x) . y = 0.
    m = ((-s12, -s22), (s11, s12))
    return Involution(base=base, m=m)


def apply_involution(inv: Involution, p: PointP2, tol: Tolerance = DEFAULT_TOL) -> PointP2:
    if not incident(p, inv.line, tol):
        raise NotOnLine(f"{p} is not on the involution's line")
    a, b = line_parameters(inv.base, p)
    (m00, m01), (m10, m11) = inv.m
    return from_parameters(inv.base, m00 * a + m01 * b, m10 * a + m11 * b)


def involution_square(inv: Involution):
    """m @ m, which must be a nonzero multiple of the identity."""
    (a, b), (c, d) = inv.m
    return ((a * a + b * c, a * b + b * d), (c * a + d * c, c * b + d * d))
