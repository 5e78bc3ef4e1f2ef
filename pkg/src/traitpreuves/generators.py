"""Seeded random instances for the property suites.

Every generator takes a :class:`random.Random` and retries internally until
it produces a nondegenerate instance, so a seed fully determines a run.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import conics, p2, p3, theorems
from .errors import GeometryError
from .p2 import LineP2, PointP2


def rational(rng: random.Random, bound: int = 9, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den))


def nonzero_rational(rng, bound=9, den=4) -> Fraction:
    while True:
        q = rational(rng, bound, den)
        if q:
            return q


def affine_point(rng, bound=9, den=4) -> PointP2:
    return p2.point(rational(rng, bound, den), rational(rng, bound, den))


def projective_point(rng, p_infinite=0.1) -> PointP2:
    if rng.random() < p_infinite:
        while True:
            x, y = rng.randint(-9, 9), rng.randint(-9, 9)
            if x or y:
                return PointP2(x, y, 0)
    return affine_point(rng)


def random_line(rng) -> LineP2:
    while True:
        u, v, w = (rng.randint(-9, 9) for _ in range(3))
        if u or v:
            return LineP2(u, v, w)


def homography(rng, bound=6) -> p2.Homography:
    while True:
        m = tuple(tuple(rng.randint(-bound, bound) for _ in range(3)) for _ in range(3))
        try:
            return p2.Homography(m)
        except GeometryError:
            continue


def _along(center: PointP2, x: PointP2, t: Fraction) -> PointP2:
    """The point (1 - t) center + t x, for a finite center; x + t*direction otherwise."""
    if center.at_infinity:
        cx, cy, _ = center.coords
        ax, ay = x.xy()
        return p2.point(ax + t * cx, ay + t * cy)
    ox, oy = center.xy()
    ax, ay = x.xy()
    return p2.point(ox + t * (ax - ox), oy + t * (ay - oy))


@dataclass(frozen=True)
class DesarguesInstance:
    points: tuple  # A, B, C, A', B', C'
    center: PointP2


def perspective_configuration(rng, parallel_sides: bool = False) -> DesarguesInstance:
    """Two triangles in perspective from a random center.

    With ``parallel_sides`` two vertex pairs share one ratio, so at least
    one side meet lies at infinity.
    """
    while True:
        center = projective_point(rng, p_infinite=0.15)
        tri = [affine_point(rng) for _ in range(3)]
        ratios = [nonzero_rational(rng, 3, 3) for _ in range(3)]
        if parallel_sides:
            ratios[1] = ratios[0]
        primed = [_along(center, X, t) for X, t in zip(tri, ratios)]
        pts = tuple(tri + primed)
        try:
            if any(p2.same(X, center) for X in pts):
                continue
            theorems.check_desargues(*pts)
        except GeometryError:
            continue
        if any(p2.same(X, X1) for X, X1 in zip(tri, primed)):
            continue
        return DesarguesInstance(pts, center)


def axial_configuration(rng) -> tuple:
    """Two triangles in perspective from a random axis (converse input)."""
    while True:
        axis = random_line(rng)
        tri = [affine_point(rng) for _ in range(3)]
        try:
            A, B, C = tri
            x_ab = p2.meet(p2.join(A, B), axis)
            x_bc = p2.meet(p2.join(B, C), axis)
            x_ca = p2.meet(p2.join(C, A), axis)
            A1 = affine_point(rng)
            # B' on A'X_ab, then C' closes the triangle through X_bc and X_ca.
            ab1 = p2.join(A1, x_ab)
            t = nonzero_rational(rng, 3, 3)
            other = p2.meet(ab1, random_line(rng))
            B1 = _point_on(A1, other, t)
            C1 = p2.meet(p2.join(B1, x_bc), p2.join(A1, x_ca))
            pts = (A, B, C, A1, B1, C1)
            if any(X.at_infinity for X in pts):
                continue
            theorems.check_desargues_converse(*pts)
        except GeometryError:
            continue
        if any(p2.same(X, X1) for X, X1 in zip(pts[:3], pts[3:])):
            continue
        return pts


def _point_on(a: PointP2, b: PointP2, t) -> PointP2:
    return PointP2(*(x + t * y for x, y in zip(a.coords, b.coords)))


def pencil_instance(rng):
    """Four base points in general position and a line avoiding them."""
    while True:
        base = tuple(affine_point(rng, 6, 2) for _ in range(4))
        line = random_line(rng)
        try:
            theorems.pencil_pairs(base, line)
        except GeometryError:
            continue
        return base, line


# -- example 1 --------------------------------------------------------------


@dataclass(frozen=True)
class CircleInstance:
    pair: conics.CirclePair
    apex: PointP2
    secants: tuple


def circle_instance(rng, n_secants: int = 5) -> CircleInstance:
    """Random rational circle pair with secants from the same-side apex through rational points."""
    while True:
        c1 = (rational(rng, 5, 2), rational(rng, 5, 2))
        c2 = (rational(rng, 5, 2), rational(rng, 5, 2))
        r1, r2 = Fraction(rng.randint(1, 8), rng.randint(1, 3)), Fraction(rng.randint(1, 8), rng.randint(1, 3))
        try:
            cp = conics.CirclePair(c1, r1, c2, r2)
            apex = conics.same_side_tangent_apex(cp)
        except (ValueError, GeometryError):
            continue
        if r1 == r2:
            continue
        secants = []
        seen = set()
        for _ in range(200):
            if len(secants) == n_secants:
                break
            t = rational(rng, 3, 5)
            x = conics.rational_circle_point(c1, r1, t)
            if p2.same(x, apex):
                continue
            s = p2.join(apex, x)
            if s in seen:
                continue
            try:
                theorems.tangent_meets(cp.circle1, cp.circle2, apex, s, theorems.PairingSelector.NEAR_NEAR)
            except GeometryError:
                continue
            seen.add(s)
            secants.append(s)
        if len(secants) == n_secants:
            return CircleInstance(cp, apex, tuple(secants))


@dataclass(frozen=True)
class ConicPairInstance:
    conic1: conics.Conic
    conic2: conics.Conic
    apex: PointP2
    secants: tuple


def _bitangent_conic(a1, a2, k):
    """Ellipse u^2 + (2-k)uv + v^2 scaled to touch u = 0 at v = a2 and v = 0 at u = a1.

    In (u, v) coordinates: (u/a1 + v/a2 - 1)^2 - k (u/a1)(v/a2) = 0.
    """
    p, q = 1.0 / a1, 1.0 / a2
    # Expand (p u + q v - 1)^2 - k p q u v.
    A = p * p
    B = 2 * p * q - k * p * q
    C = q * q
    D = -2 * p
    E = -2 * q
    F = 1.0
    return np.array([[A, B / 2, D / 2], [B / 2, C, E / 2], [D / 2, E / 2, F]])


def conic_pair_instance(rng, n_secants: int = 5) -> ConicPairInstance:
    """Two random ellipses inscribed in one angle; the angle's vertex is the apex.

    Both sides of the angle are common tangents leaving the two ellipses on
    the same side, so the vertex is a real same-side apex.
    """
    while True:
        ox, oy = rng.uniform(-5, 5), rng.uniform(-5, 5)
        th1 = rng.uniform(0, 2 * math.pi)
        th2 = th1 + rng.uniform(0.35, math.pi - 0.35)
        d1 = np.array([math.cos(th1), math.sin(th1)])
        d2 = np.array([math.cos(th2), math.sin(th2)])
        # (x, y, 1) = T (u, v, 1)
        T = np.array([[d1[0], d2[0], ox], [d1[1], d2[1], oy], [0.0, 0.0, 1.0]])
        Ti = np.linalg.inv(T)
        mats = []
        for _ in range(2):
            a1, a2 = rng.uniform(0.5, 6), rng.uniform(0.5, 6)
            k = rng.uniform(0.4, 3.6)
            m = Ti.T @ _bitangent_conic(a1, a2, k) @ Ti
            m = (m + m.T) / 2
            mats.append(m / np.abs(m).max())
        c1, c2 = (conics.Conic(tuple(tuple(float(x) for x in row) for row in m)) for m in mats)
        apex = PointP2(ox, oy, 1.0)
        secants = []
        for _ in range(n_secants):
            w = rng.uniform(0.05, 0.95)
            d = (1 - w) * d1 + w * d2
            secants.append(p2.join(apex, PointP2(ox + d[0], oy + d[1], 1.0)))
        try:
            for s in secants:
                theorems.tangent_meets(c1, c2, apex, s, theorems.CROSSED_PAIRINGS)
        except GeometryError:
            continue
        return ConicPairInstance(c1, c2, apex, tuple(secants))


# -- example 2 --------------------------------------------------------------


def random_plane(rng, bound=6) -> p3.PlaneP3:
    while True:
        c = [rng.randint(-bound, bound) for _ in range(4)]
        if any(c[:3]):
            return p3.PlaneP3(*c)


@dataclass(frozen=True)
class SheetInstance:
    sheet: p3.FoldedSheet
    projection: p3.Projection
    carriers: tuple
    first: theorems.SectionQuadruplet
    second: theorems.SectionQuadruplet


def sheet_instance(rng) -> SheetInstance:
    """A random four-fold sheet, a projection, and two genuine plane sections."""
    while True:
        try:
            faces = [random_plane(rng) for _ in range(5)]
            sheet = p3.FoldedSheet.from_faces(faces)
            if rng.random() < 0.5:
                projection = p3.Projection.orthogonal(p3.PointP3(0, 0, 1, 0))
            else:
                center = p3.point3(rational(rng, 4, 2), rational(rng, 4, 2), Fraction(rng.randint(15, 30)))
                projection = p3.Projection.central(center)
            carriers = theorems.projected_carriers(sheet, projection)
            if len(set(carriers)) < 4:
                continue
            q1 = theorems.section_quadruplet(sheet, projection, random_plane(rng))
            q2 = theorems.section_quadruplet(sheet, projection, random_plane(rng))
            if any(p2.same(a, b) for a, b in zip(q1.points, q2.points)):
                continue
            theorems.section_axis(q1, *q2.points[:3])
            theorems.complete_section(carriers, q1, *q2.points[:3])
        except GeometryError:
            continue
        return SheetInstance(sheet, projection, carriers, q1, q2)
