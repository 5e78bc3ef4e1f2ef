"""Projective 3-space: planes, lines, projections, and the spatial lifts.

Lines are stored as a pair of distinct points. Every meet needed here is a
small linear solve, so Plücker coordinates are not used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernel, p2
from .errors import (
    CoincidentPlanes,
    CoincidentPoints,
    CollinearPoints,
    DegenerateTriangle,
    HypothesisFails,
    InvalidSheet,
    LineInPlane,
    PlaneContainsFold,
    SkewLines,
    UndefinedProjection,
)
from .kernel import DEFAULT_TOL, Tolerance
from .p2 import PointP2, _Homogeneous


class PointP3(_Homogeneous):
    __slots__ = ("coords",)
    _dim = 4

    @classmethod
    def affine(cls, x, y, z):
        one = 1 if all(kernel.is_exact(c) for c in (x, y, z)) else 1.0
        return cls(x, y, z, one)

    @property
    def at_infinity(self) -> bool:
        return kernel.scalar_is_zero(self.coords[3])

    def xyz(self):
        x, y, z, w = self.coords
        if self.exact:
            return Fraction(x, w), Fraction(y, w), Fraction(z, w)
        return x / w, y / w, z / w


class PlaneP3(_Homogeneous):
    __slots__ = ("coords",)
    _dim = 4

    def __repr__(self):
        return "[" + ":".join(map(str, self.coords)) + "]"


PLANE_AT_INFINITY = PlaneP3(0, 0, 0, 1)


@dataclass(frozen=True)
class LineP3:
    p: PointP3
    q: PointP3

    def __post_init__(self):
        if p2.same(self.p, self.q):
            raise CoincidentPoints("a line needs two distinct points")

    def contains(self, x: PointP3, tol: Tolerance = DEFAULT_TOL) -> bool:
        return _rank([self.p.coords, self.q.coords, x.coords], tol) < 3

    def same_as(self, other: "LineP3", tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.contains(other.p, tol) and self.contains(other.q, tol)


def _rank(rows, tol):
    return kernel.rank([list(r) for r in rows], tol)


def point3(x, y, z) -> PointP3:
    return PointP3.affine(x, y, z)


def _three_minors(a, b, c):
    """Vector orthogonal to three 4-vectors (generalized cross product)."""
    rows = (a, b, c)

    def minor(skip):
        cols = [k for k in range(4) if k != skip]
        return kernel.det3(*(tuple(r[k] for k in cols) for r in rows))

    return (minor(0), -minor(1), minor(2), -minor(3))


def incident(x: PointP3, pl: PlaneP3, tol: Tolerance = DEFAULT_TOL) -> bool:
    s = kernel.dot(x.coords, pl.coords)
    if kernel.is_exact(s):
        return s == 0
    scale = max(abs(a * b) for a, b in zip(x.coords, pl.coords))
    return kernel.scalar_is_zero(s, tol, scale)


def coplanar(a: PointP3, b: PointP3, c: PointP3, d: PointP3, tol: Tolerance = DEFAULT_TOL) -> bool:
    return _rank([a.coords, b.coords, c.coords, d.coords], tol) < 4


def plane_through(p: PointP3, q: PointP3, r: PointP3, tol: Tolerance = DEFAULT_TOL) -> PlaneP3:
    n = _three_minors(p.coords, q.coords, r.coords)
    if kernel.is_zero_vector(n, tol):
        raise CollinearPoints("the three points are collinear")
    return PlaneP3(*n)


def meet_three_planes(a: PlaneP3, b: PlaneP3, c: PlaneP3, tol: Tolerance = DEFAULT_TOL) -> PointP3:
    n = _three_minors(a.coords, b.coords, c.coords)
    if kernel.is_zero_vector(n, tol):
        raise CoincidentPlanes("the three planes share a line")
    return PointP3(*n)


def meet_planes(a: PlaneP3, b: PlaneP3, tol: Tolerance = DEFAULT_TOL) -> LineP3:
    basis = kernel.nullspace([list(a.coords), list(b.coords)], tol)
    if len(basis) != 2:
        raise CoincidentPlanes(f"{a} and {b} coincide")
    return LineP3(PointP3(*basis[0]), PointP3(*basis[1]))


def meet_line_plane(l: LineP3, pl: PlaneP3, tol: Tolerance = DEFAULT_TOL) -> PointP3:
    sp = kernel.dot(pl.coords, l.p.coords)
    sq = kernel.dot(pl.coords, l.q.coords)
    x = tuple(sq * a - sp * b for a, b in zip(l.p.coords, l.q.coords))
    if incident(l.p, pl, tol) and incident(l.q, pl, tol):
        raise LineInPlane("line lies in the plane")
    return PointP3(*x)


_BASIS4 = tuple(tuple(1 if i == k else 0 for i in range(4)) for k in range(4))


def meet_coplanar_lines(l: LineP3, m: LineP3, tol: Tolerance = DEFAULT_TOL) -> PointP3:
    """Common point of two distinct coplanar lines."""
    if not coplanar(l.p, l.q, m.p, m.q, tol):
        raise SkewLines("the lines are skew")
    if l.same_as(m, tol):
        raise CoincidentPlanes("the lines coincide")
    backend = kernel.backend_of(*l.p.coords, *m.p.coords)
    for e in _BASIS4:
        e = PointP3(*(kernel.to_backend(c, backend) for c in e))
        try:
            pl = plane_through(m.p, m.q, e, tol)
        except CollinearPoints:
            continue
        if incident(l.p, pl, tol) and incident(l.q, pl, tol):
            continue
        return meet_line_plane(l, pl, tol)
    raise AssertionError("no auxiliary plane separates the lines")


# -- projections -----------------------------------------------------------


@dataclass(frozen=True)
class Projection:
    """Central projection from ``center`` onto ``image_plane``.

    An orthogonal projection is the central projection whose center is the
    point at infinity of the projecting direction. Image coordinates
    (a:b:c) denote the space point a*e1 + b*e2 + c*origin, where e1 and e2
    are directions (w = 0) in the image plane and origin is a finite point
    of it.
    """

    center: PointP3
    image_plane: PlaneP3
    e1: PointP3
    e2: PointP3
    origin: PointP3
    kind: str = "central"

    def __post_init__(self):
        if incident(self.center, self.image_plane):
            raise UndefinedProjection("projection center lies on the image plane")
        for f in (self.e1, self.e2, self.origin):
            if not incident(f, self.image_plane):
                raise UndefinedProjection(f"frame point {f} is off the image plane")
        if _rank([self.e1.coords, self.e2.coords, self.origin.coords], DEFAULT_TOL) < 3:
            raise UndefinedProjection("frame points are dependent")

    @classmethod
    def central(cls, center: PointP3, image_plane: PlaneP3 | None = None, frame=None):
        return cls._build(center, image_plane, frame, "central")

    @classmethod
    def orthogonal(cls, direction: PointP3, image_plane: PlaneP3 | None = None, frame=None):
        if not direction.at_infinity:
            raise UndefinedProjection("an orthogonal projection direction must lie at infinity")
        return cls._build(direction, image_plane, frame, "orthogonal")

    @classmethod
    def _build(cls, center, image_plane, frame, kind):
        if image_plane is None:
            image_plane = PlaneP3(0, 0, 1, 0)
        if frame is None:
            frame = (PointP3(1, 0, 0, 0), PointP3(0, 1, 0, 0), PointP3(0, 0, 0, 1))
        e1, e2, origin = frame
        return cls(center, image_plane, e1, e2, origin, kind)

    def to_space(self, p: PointP2) -> PointP3:
        """The space point on the image plane with image coordinates p."""
        a, b, c = p.coords
        return PointP3(
            *(a * x + b * y + c * z for x, y, z in zip(self.e1.coords, self.e2.coords, self.origin.coords))
        )

    def ray(self, p: PointP2) -> LineP3:
        return LineP3(self.center, self.to_space(p))


def _frame_coordinates(pr: Projection, x: PointP3, tol):
    cols = (pr.e1.coords, pr.e2.coords, pr.origin.coords)
    # Choose three independent rows of the 4x3 frame matrix.
    for skip in range(3, -1, -1):
        rows = [k for k in range(4) if k != skip]
        m = tuple(tuple(c[k] for c in cols) for k in rows)
        d = kernel.det(m)
        if not kernel.scalar_is_zero(d, tol):
            rhs = tuple(x.coords[k] for k in rows)
            adj = kernel.adjugate3(m)
            return kernel.matmul(adj, rhs)
    raise UndefinedProjection("degenerate frame")


def project(pr: Projection, p: PointP3, tol: Tolerance = DEFAULT_TOL) -> PointP2:
    if p2.same(p, pr.center, tol):
        raise UndefinedProjection("cannot project the projection center")
    x = meet_line_plane(LineP3(pr.center, p), pr.image_plane, tol)
    return PointP2(*_frame_coordinates(pr, x, tol))


def project_line(pr: Projection, l: LineP3, tol: Tolerance = DEFAULT_TOL):
    return p2.join(project(pr, l.p, tol), project(pr, l.q, tol), tol)


# -- the spatial proof of Desargues --------------------------------------


@dataclass(frozen=True)
class DesarguesLift:
    """Space witness for a planar Desargues configuration."""

    points: tuple  # A, B, C, A', B', C' in space
    planes: tuple  # plane of ABC, plane of A'B'C'
    projection: Projection
    apex: PointP3  # the tetrahedron vertex where AA', BB', CC' meet


def _lift_plane_point(p: PointP2) -> PointP3:
    x, y, z = p.coords
    zero = 0 if p.exact else 0.0
    return PointP3(x, y, zero, z)


def lift_desargues(A, B, C, A1, B1, C1, center: PointP2, height=1, tol: Tolerance = DEFAULT_TOL) -> DesarguesLift:
    """Realize the figure as a tetrahedron cut by a plane, seen from above.

    Triangle ABC stays on the drawing plane z = 0 and is the base of the
    tetrahedron. Its apex sits at ``height`` above the perspective center.
    Each primed vertex is raised vertically until it meets the edge from
    the apex to its unprimed partner. The vertical (orthogonal) projection
    then maps every space point back onto the drawing.
    """
    pairs = ((A, A1), (B, B1), (C, C1))
    if p2.collinear(A, B, C, tol) or p2.collinear(A1, B1, C1, tol):
        raise DegenerateTriangle("a triangle is degenerate")
    for X, X1 in pairs:
        if not p2.same(X, X1, tol):
            if not p2.incident(center, p2.join(X, X1, tol), tol):
                raise HypothesisFails("the joins of corresponding vertices miss the center")
    if kernel.is_exact(height):
        height = Fraction(height)
    if kernel.scalar_is_zero(height, tol):
        raise ValueError("apex height must be nonzero")

    backend = A.backend
    zero, one = kernel.to_backend(0, backend), kernel.to_backend(1, backend)
    ox, oy, oz = center.coords
    if kernel.scalar_is_zero(oz, tol):
        apex = PointP3(ox, oy, height, zero)
    else:
        apex = PointP3(ox, oy, height * oz, oz)
    vertical = PointP3(zero, zero, one, zero)

    base = [_lift_plane_point(X) for X in (A, B, C)]
    lifted = []
    for X3, (X, X1) in zip(base, pairs):
        if p2.same(X, X1, tol):
            lifted.append(X3)
            continue
        if p2.same(X, center, tol):
            raise DegenerateTriangle("a vertex coincides with the perspective center")
        edge = LineP3(apex, X3)
        upright = LineP3(_lift_plane_point(X1), vertical)
        lifted.append(meet_coplanar_lines(edge, upright, tol))

    plane1 = plane_through(*base, tol=tol)
    plane2 = plane_through(*lifted, tol=tol)
    if p2.same(plane1, plane2, tol):
        raise CoincidentPlanes("the section plane coincides with the base plane")
    pr = Projection.orthogonal(vertical)
    return DesarguesLift(points=tuple(base + lifted), planes=(plane1, plane2), projection=pr, apex=apex)


# -- the folded sheet ------------------------------------------------------


@dataclass(frozen=True)
class FoldedSheet:
    """A discrete developable: flat faces hinged along crease lines.

    ``faces[i]`` and ``faces[i + 1]`` meet exactly in ``folds[i]``.
    """

    folds: tuple
    faces: tuple

    def __post_init__(self):
        object.__setattr__(self, "folds", tuple(self.folds))
        object.__setattr__(self, "faces", tuple(self.faces))
        if not self.folds:
            raise InvalidSheet("a sheet needs at least one fold")
        if len(self.faces) != len(self.folds) + 1:
            raise InvalidSheet("a sheet needs exactly one more face than folds")
        for i, fold in enumerate(self.folds):
            before, after = self.faces[i], self.faces[i + 1]
            if p2.same(before, after):
                raise InvalidSheet(f"faces {i} and {i + 1} coincide")
            for f in (before, after):
                if not (incident(fold.p, f) and incident(fold.q, f)):
                    raise InvalidSheet(f"fold {i} is not on face {f}")

    @classmethod
    def from_faces(cls, faces, tol: Tolerance = DEFAULT_TOL) -> "FoldedSheet":
        faces = tuple(faces)
        folds = tuple(meet_planes(a, b, tol) for a, b in zip(faces, faces[1:]))
        return cls(folds, faces)

    @classmethod
    def from_folds(cls, folds, tol: Tolerance = DEFAULT_TOL) -> "FoldedSheet":
        """Sheet whose inner faces are spanned by consecutive folds.

        Consecutive folds must be coplanar. The two outer faces are taken
        through the first and last fold and a point off the inner faces.
        """
        folds = tuple(folds)
        inner = []
        for a, b in zip(folds, folds[1:]):
            if not coplanar(a.p, a.q, b.p, b.q, tol):
                raise InvalidSheet("consecutive folds are skew")
            for x in (b.p, b.q):
                if not a.contains(x, tol):
                    inner.append(plane_through(a.p, a.q, x, tol))
                    break
            else:
                raise InvalidSheet("consecutive folds coincide")
        first = _outer_face(folds[0], inner[:1], tol)
        last = _outer_face(folds[-1], inner[-1:], tol)
        return cls(folds, (first, *inner, last))


def _outer_face(fold: LineP3, avoid, tol):
    backend = fold.p.backend
    for e in _BASIS4:
        e = PointP3(*(kernel.to_backend(c, backend) for c in e))
        try:
            pl = plane_through(fold.p, fold.q, e, tol)
        except CollinearPoints:
            continue
        if not any(p2.same(pl, a, tol) for a in avoid):
            return pl
    raise InvalidSheet("cannot choose an outer face")


def section_by_plane(s: FoldedSheet, pl: PlaneP3, tol: Tolerance = DEFAULT_TOL):
    """The section polygon's vertices, one per fold, in fold order."""
    out = []
    for i, fold in enumerate(s.folds):
        try:
            out.append(meet_line_plane(fold, pl, tol))
        except LineInPlane:
            raise PlaneContainsFold(f"the cutting plane contains fold {i}") from None
    return out
