"""Conics as symmetric 3x3 matrices.

A point p lies on conic ``m`` when p^T m p = 0; its polar is the line m p.
Degenerate conics (line pairs) are legal values and report
``degenerate == True``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernel, p2
from .errors import (
    InvalidIncidence,
    NoSameSideTangents,
    NoUniqueConic,
    PointNotOnConic,
    SingularPoint,
)
from .kernel import DEFAULT_TOL, Tolerance
from .p2 import LineP2, PointP2


class Conic:
    __slots__ = ("m",)

    def __init__(self, m):
        rows = tuple(tuple(r) for r in m)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("a conic needs a 3x3 matrix")
        for i in range(3):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("conic matrix must be symmetric")
        flat = kernel.canonical([x for r in rows for x in r])
        if flat is None:
            raise ValueError("the zero matrix is not a conic")
        object.__setattr__(self, "m", (flat[0:3], flat[3:6], flat[6:9]))

    def __setattr__(self, name, value):
        raise AttributeError("Conic is immutable")

    def __eq__(self, other):
        return isinstance(other, Conic) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return f"Conic({self.m})"

    @classmethod
    def from_coefficients(cls, a, b, c, d, e, f):
        """a x^2 + b xy + c y^2 + d xz + e yz + f z^2."""
        half = Fraction(1, 2) if all(kernel.is_exact(v) for v in (a, b, c, d, e, f)) else 0.5
        return cls(((a, b * half, d * half), (b * half, c, e * half), (d * half, e * half, f)))

    @property
    def exact(self) -> bool:
        return kernel.is_exact(self.m[0][0])

    @property
    def det(self):
        return kernel.det(self.m)

    @property
    def degenerate(self) -> bool:
        return kernel.scalar_is_zero(self.det, DEFAULT_TOL)

    def evaluate(self, p: PointP2):
        return kernel.dot(p.coords, kernel.matmul(self.m, p.coords))

    def contains(self, p: PointP2, tol: Tolerance = DEFAULT_TOL) -> bool:
        kernel.backend_of(self.m[0][0], p.coords[0])
        v = self.evaluate(p)
        if kernel.is_exact(v):
            return v == 0
        scale = max(abs(float(x)) for r in self.m for x in r) * max(abs(c) for c in p.coords) ** 2
        return kernel.scalar_is_zero(v, tol, scale)

    def bilinear(self, p: PointP2, q: PointP2):
        return kernel.dot(p.coords, kernel.matmul(self.m, q.coords))

    def to_approx(self) -> "Conic":
        return Conic(tuple(tuple(float(x) for x in r) for r in self.m))

    def dual(self) -> "Conic":
        """Adjugate matrix: the conic's tangent lines, as a conic in line coordinates."""
        return Conic(kernel.adjugate3(self.m))

    def center(self) -> PointP2:
        """Pole of the line at infinity."""
        return PointP2(*kernel.matmul(kernel.adjugate3(self.m), (0, 0, 1)))


def line_pair(l: LineP2, m: LineP2) -> Conic:
    """The degenerate conic l ∪ m (symmetrized outer product)."""
    a, b = l.coords, m.coords
    return Conic(tuple(tuple(a[i] * b[j] + a[j] * b[i] for j in range(3)) for i in range(3)))


@dataclass(frozen=True)
class CirclePair:
    center1: tuple
    radius1: Fraction
    center2: tuple
    radius2: Fraction

    def __post_init__(self):
        if self.radius1 <= 0 or self.radius2 <= 0:
            raise ValueError("radii must be positive")
        if tuple(self.center1) == tuple(self.center2) and self.radius1 == self.radius2:
            raise ValueError("the two circles coincide")

    @property
    def circle1(self) -> Conic:
        return conic_from_circle(self.center1, self.radius1)

    @property
    def circle2(self) -> Conic:
        return conic_from_circle(self.center2, self.radius2)


def conic_from_circle(center, radius) -> Conic:
    if radius <= 0:
        raise ValueError("circle radius must be positive")
    cx, cy = center
    backend = kernel.backend_of(cx, cy, radius)
    one, zero = kernel.to_backend(1, backend), kernel.to_backend(0, backend)
    return Conic(((one, zero, -cx), (zero, one, -cy), (-cx, -cy, cx * cx + cy * cy - radius * radius)))


def _monomials(p: PointP2):
    x, y, z = p.coords
    return [x * x, x * y, y * y, x * z, y * z, z * z]


def conic_through_five(points, tol: Tolerance = DEFAULT_TOL) -> Conic:
    points = list(points)
    if len(points) != 5:
        raise ValueError("conic_through_five needs exactly five points")
    basis = kernel.nullspace([_monomials(p) for p in points], tol)
    if len(basis) != 1:
        raise NoUniqueConic(f"the five points leave a {len(basis)}-dimensional family")
    return Conic.from_coefficients(*basis[0])


def polar(c: Conic, p: PointP2, tol: Tolerance = DEFAULT_TOL) -> LineP2:
    v = kernel.matmul(c.m, p.coords)
    if kernel.is_zero_vector(v, tol):
        raise SingularPoint(f"{p} is a singular point of the conic")
    return LineP2(*v)


def tangent_at(c: Conic, p: PointP2, tol: Tolerance = DEFAULT_TOL) -> LineP2:
    if not c.contains(p, tol):
        raise PointNotOnConic(f"{p} is not on the conic")
    return polar(c, p, tol)


def _other_point(l: LineP2, avoid: PointP2, tol) -> PointP2:
    """A point of l distinct from ``avoid``; deterministic."""
    backend = l.backend
    best = None
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        e = tuple(kernel.to_backend(x, backend) for x in e)
        v = kernel.cross(l.coords, e)
        if kernel.is_zero_vector(v, tol):
            continue
        q = PointP2(*v)
        if avoid is not None and p2.same(q, avoid, tol):
            continue
        sep = kernel.norm(kernel.cross(q.coords, avoid.coords)) if avoid is not None else 1.0
        if best is None or sep > best[0]:
            best = (sep, q)
    return best[1]


def second_intersection(c: Conic, known: PointP2, l: LineP2, tol: Tolerance = DEFAULT_TOL) -> PointP2:
    """The other meet of l with c, given one meet. Exact by Vieta."""
    if not c.contains(known, tol) or not p2.incident(known, l, tol):
        raise InvalidIncidence(f"{known} must lie on both the conic and the line")
    q = _other_point(l, known, tol)
    kq = c.bilinear(known, q)
    qq = c.evaluate(q)
    # On X = s*known + t*q the conic restricts to t*(2 s kq + t qq).
    coords = tuple(qq * a - 2 * kq * b for a, b in zip(known.coords, q.coords))
    if kernel.is_zero_vector(coords, tol):
        raise InvalidIncidence("the line lies on the (degenerate) conic")
    return PointP2(*coords)


class MeetKind(enum.Enum):
    TWO_RATIONAL = "two_rational"
    TWO_REAL = "two_real"
    TANGENT = "tangent"
    NO_REAL = "no_real"
    IRRATIONAL = "irrational"
    CONTAINED = "contained"


@dataclass(frozen=True)
class MeetResult:
    kind: MeetKind
    points: tuple = ()
    # For IRRATIONAL: (a, b, c, P, Q) with a s^2 + 2 b s t + c t^2 = 0 on s*P + t*Q.
    quadratic: tuple = field(default=(), compare=False)

    @property
    def real_points(self) -> tuple:
        return self.points


def line_conic_meet(c: Conic, l: LineP2, tol: Tolerance = DEFAULT_TOL) -> MeetResult:
    kernel.backend_of(c.m[0][0], l.coords[0])
    P = _other_point(l, None, tol)
    Q = _other_point(l, P, tol)
    a, b, cc = c.evaluate(P), c.bilinear(P, Q), c.evaluate(Q)
    cscale = max(abs(float(x)) for r in c.m for x in r) * max(abs(float(x)) for x in P.coords + Q.coords) ** 2
    if kernel.is_zero_vector((a, b, cc), tol, cscale):
        return MeetResult(MeetKind.CONTAINED)
    disc = b * b - a * cc
    scale = max(abs(float(b * b)), abs(float(a * cc)))
    if kernel.is_exact(disc):
        if disc < 0:
            return MeetResult(MeetKind.NO_REAL)
        if disc == 0:
            return MeetResult(MeetKind.TANGENT, (_root(P, Q, a, b, cc, 0),))
        if not kernel.is_square(Fraction(disc)):
            return MeetResult(MeetKind.IRRATIONAL, quadratic=(a, b, cc, P, Q))
        r = kernel.exact_sqrt(Fraction(disc))
        return MeetResult(MeetKind.TWO_RATIONAL, (_root(P, Q, a, b, cc, r), _root(P, Q, a, b, cc, -r)))
    if kernel.scalar_is_zero(disc, tol, scale):
        return MeetResult(MeetKind.TANGENT, (_root(P, Q, a, b, cc, 0.0),))
    if disc < 0:
        return MeetResult(MeetKind.NO_REAL)
    r = math.sqrt(disc)
    return MeetResult(MeetKind.TWO_REAL, (_root(P, Q, a, b, cc, r), _root(P, Q, a, b, cc, -r)))


def _root(P, Q, a, b, c, r):
    """Root (-b + r)/a of a s^2 + 2 b s t + c t^2 = 0, with r a signed square root of b^2 - ac."""
    if a != 0 and (c == 0 or -b * r >= 0):
        s, t = -b + r, a
    elif c != 0:
        # Same root written as c / (-b - r); avoids cancellation.
        s, t = c, -b - r
    else:
        # a = c = 0: the roots are t = 0 (P) and s = 0 (Q).
        s, t = (1, 0) if r > 0 else (0, 1)
    return PointP2(*(s * x + t * y for x, y in zip(P.coords, Q.coords)))


def same_side_tangent_apex(cp: CirclePair) -> PointP2:
    """External homothety center, where the same-side common tangents meet."""
    (x1, y1), (x2, y2) = cp.center1, cp.center2
    r1, r2 = cp.radius1, cp.radius2
    d2 = (x2 - x1) ** 2 + (y2 - y1) ** 2
    if d2 <= (r1 - r2) ** 2:
        raise NoSameSideTangents("one circle lies inside the other")
    return PointP2(r2 * x1 - r1 * x2, r2 * y1 - r1 * y2, r2 - r1)


def homothety_image(cp: CirclePair, p: PointP2) -> PointP2:
    """Image of a point of circle 1 under the positive homothety onto circle 2."""
    if not cp.circle1.contains(p):
        raise PointNotOnConic(f"{p} is not on circle 1")
    k = Fraction(cp.radius2) / Fraction(cp.radius1)
    (x1, y1), (x2, y2) = cp.center1, cp.center2
    x, y, z = p.coords
    # C2 + k (p - C1), homogenized; z = 0 maps directions to directions.
    return PointP2(x2 * z + k * (x - x1 * z), y2 * z + k * (y - y1 * z), z)


def rational_circle_point(center, radius, t) -> PointP2:
    """Point of the circle at rational parameter t; t = None gives the antipode of t = 0."""
    cx, cy = center
    if t is None:
        return PointP2.affine(cx - radius, cy)
    t = Fraction(t)
    d = 1 + t * t
    return PointP2.affine(cx + radius * (1 - t * t) / d, cy + radius * 2 * t / d)


# -- approximate backend: general conic pairs ---------------------------------


def _split_degenerate(d):
    """Two lines (as float triples) whose union is the rank-2 symmetric matrix d, or None."""
    b = np.array(kernel.adjugate3(tuple(map(tuple, d))), dtype=float)
    i = int(np.argmax(np.abs(np.diag(b))))
    if b[i, i] > 1e-14 * max(1.0, np.abs(b).max()):
        return None  # complex conjugate lines
    beta = math.sqrt(max(-b[i, i], 0.0))
    if beta == 0:
        # Double line: d has rank 1.
        k = int(np.argmax(np.abs(np.diag(d))))
        line = d[k] / math.sqrt(abs(d[k, k])) if d[k, k] != 0 else d[k]
        return line, line
    pvec = b[:, i] / beta
    px = np.array([[0, pvec[2], -pvec[1]], [-pvec[2], 0, pvec[0]], [pvec[1], -pvec[0], 0]])
    cm = d + px
    r, c = np.unravel_index(np.argmax(np.abs(cm)), cm.shape)
    return cm[r, :], cm[:, c]


def conic_intersections_approx(c1: Conic, c2: Conic, tol: Tolerance = DEFAULT_TOL):
    """Real common points of two conics (approximate backend)."""
    a = np.array(c1.m, dtype=float)
    b = np.array(c2.m, dtype=float)
    a /= np.abs(a).max()
    b /= np.abs(b).max()
    # det(a + lam b) is a cubic in lam; recover its coefficients by sampling.
    lams = np.array([-1.0, 0.0, 1.0, 2.0])
    vals = [np.linalg.det(a + lam * b) for lam in lams]
    coeffs = np.polyfit(lams, vals, 3)
    roots = np.roots(coeffs) if np.abs(coeffs).max() > 0 else np.array([])
    candidates = sorted((r.real for r in roots if abs(r.imag) < 1e-9 * max(1.0, abs(r))), key=abs)
    if abs(np.linalg.det(b)) < 1e-14:
        candidates.append(math.inf)
    approx_a = c1.to_approx()
    for lam in candidates:
        d = b.copy() if math.isinf(lam) else a + lam * b
        split = _split_degenerate(d)
        if split is None:
            continue
        points = []
        for line in split:
            if np.abs(line).max() == 0:
                continue
            res = line_conic_meet(approx_a, LineP2(*map(float, line)), tol)
            points.extend(res.points)
        uniq = []
        for pt in points:
            if not any(p2.same(pt, q, Tolerance(1e-7, 1e-7)) for q in uniq):
                uniq.append(pt)
        return uniq
    return []


def common_tangents_approx(c1: Conic, c2: Conic, tol: Tolerance = DEFAULT_TOL):
    """Real common tangent lines of two nondegenerate conics."""
    d1, d2 = c1.to_approx().dual(), c2.to_approx().dual()
    return [LineP2(*pt.coords) for pt in conic_intersections_approx(d1, d2, tol)]


def same_side_apex_approx(c1: Conic, c2: Conic, tol: Tolerance = DEFAULT_TOL) -> PointP2:
    """Meet of the two common tangents that leave both (bounded) conics on one side."""
    k1, k2 = c1.to_approx().center(), c2.to_approx().center()
    same_side = []
    for t in common_tangents_approx(c1, c2, tol):
        s1 = kernel.dot(t.coords, k1.coords) * k1.coords[2]
        s2 = kernel.dot(t.coords, k2.coords) * k2.coords[2]
        if s1 * s2 > 0:
            same_side.append(t)
    if len(same_side) != 2:
        raise NoSameSideTangents(f"found {len(same_side)} same-side common tangents")
    return p2.meet(*same_side, tol)
