"""Checkable propositions: Desargues (both directions), the involution on a
pencil of conics, the two-conic tangent alignment, and section completion
on a folded sheet.

Every check computes its conclusion from the configuration; nothing is
assumed. In the exact backend the verdicts are exact.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from itertools import combinations

from . import conics, kernel, p2, p3
from .errors import (
    CarrierIncidenceViolated,
    CoincidentLines,
    CoincidentPoints,
    CoincidentSides,
    CollinearPoints,
    DegenerateAxis,
    DegenerateBase,
    DegenerateTriangle,
    InadmissibleQuadruplet,
    IrrationalMeet,
    LineInPlane,
    LineThroughBasePoint,
    RayMissesFold,
    SecantMissesConic,
    SecantNotThroughApex,
    SkewLines,
    CoincidentPlanes,
)
from .kernel import DEFAULT_TOL, Tolerance
from .p2 import LineP2, PointP2, collinear, incident, join, meet, same

log = logging.getLogger(__name__)


# -- Desargues ---------------------------------------------------------------


@dataclass(frozen=True)
class DesarguesVerdict:
    hypothesis_holds: bool
    perspective_center: PointP2 | None
    side_meets: tuple
    axis: LineP2 | None
    conclusion_holds: bool
    direction: str = "forward"


def _check_triangles(A, B, C, A1, B1, C1, tol):
    p2._check_same_backend(A, B, C, A1, B1, C1)
    if collinear(A, B, C, tol) or collinear(A1, B1, C1, tol):
        raise DegenerateTriangle("both triangles must be nondegenerate")
    sides = []
    for (X, Y), (X1, Y1) in zip(((A, B), (B, C), (C, A)), ((A1, B1), (B1, C1), (C1, A1))):
        s, s1 = join(X, Y, tol), join(X1, Y1, tol)
        if same(s, s1, tol):
            raise CoincidentSides(f"side {s} is shared by both triangles")
        sides.append((s, s1))
    return sides


def _vertex_joins(A, B, C, A1, B1, C1, tol):
    """Lines AA', BB', CC'; a vertex fixed by the perspectivity contributes None."""
    out = []
    for X, X1 in ((A, A1), (B, B1), (C, C1)):
        out.append(None if same(X, X1, tol) else join(X, X1, tol))
    return out


def _concurrency(lines, tol):
    """(concurrent?, common point or None) for up to three lines, None entries skipped."""
    lines = [l for l in lines if l is not None]
    distinct = []
    for l in lines:
        if not any(same(l, m, tol) for m in distinct):
            distinct.append(l)
    if len(distinct) < 2:
        return True, None
    center = meet(distinct[0], distinct[1], tol)
    return all(incident(center, l, tol) for l in distinct[2:]), center


def _collinearity(points, tol):
    """(collinear?, carrying line or None) for a list of points."""
    distinct = []
    for p in points:
        if not any(same(p, q, tol) for q in distinct):
            distinct.append(p)
    if len(distinct) < 2:
        return True, None
    line = join(distinct[0], distinct[1], tol)
    return all(incident(p, line, tol) for p in distinct[2:]), line


def check_desargues(A, B, C, A1, B1, C1, tol: Tolerance = DEFAULT_TOL) -> DesarguesVerdict:
    """Two triangles in perspective from a point are in perspective from a line."""
    sides = _check_triangles(A, B, C, A1, B1, C1, tol)
    hyp, center = _concurrency(_vertex_joins(A, B, C, A1, B1, C1, tol), tol)
    meets = tuple(meet(s, s1, tol) for s, s1 in sides)
    concl, axis = _collinearity(meets, tol)
    return DesarguesVerdict(hyp, center if hyp else None, meets, axis if concl else None, concl, "forward")


def check_desargues_converse(A, B, C, A1, B1, C1, tol: Tolerance = DEFAULT_TOL) -> DesarguesVerdict:
    """Dual statement: perspective from a line implies perspective from a point."""
    sides = _check_triangles(A, B, C, A1, B1, C1, tol)
    meets = tuple(meet(s, s1, tol) for s, s1 in sides)
    hyp, axis = _collinearity(meets, tol)
    concl, center = _concurrency(_vertex_joins(A, B, C, A1, B1, C1, tol), tol)
    return DesarguesVerdict(hyp, center if concl else None, meets, axis if hyp else None, concl, "converse")


def dualize_triangle(A, B, C):
    """The trilateral BC, CA, AB read as points of the dual plane."""
    return tuple(PointP2(*join(X, Y).coords) for X, Y in ((B, C), (C, A), (A, B)))


# -- the involution theorem ----------------------------------------------------


def _pencil_degenerate_members(base):
    P1, P2, P3, P4 = base
    return (
        conics.line_pair(join(P1, P2), join(P3, P4)),
        conics.line_pair(join(P1, P3), join(P2, P4)),
        conics.line_pair(join(P1, P4), join(P2, P3)),
    )


def _validate_pencil(base, l, tol):
    base = tuple(base)
    if len(base) != 4:
        raise DegenerateBase("a pencil needs exactly four base points")
    for trio in combinations(base, 3):
        if collinear(*trio, tol):
            raise DegenerateBase("three base points are collinear")
    for P in base:
        if incident(P, l, tol):
            raise LineThroughBasePoint(f"{P} lies on {l}")
    return base


def _meet_pair(c, l, tol):
    res = conics.line_conic_meet(c, l, tol)
    if res.kind is conics.MeetKind.TANGENT:
        return res.points[0], res.points[0]
    if res.kind in (conics.MeetKind.TWO_RATIONAL, conics.MeetKind.TWO_REAL):
        return res.points
    raise AssertionError(f"a degenerate pencil member met the line as {res.kind}")


def pencil_pairs(base, l: LineP2, tol: Tolerance = DEFAULT_TOL):
    """Pairs cut on l by the three line-pair members of the pencil through ``base``."""
    base = _validate_pencil(base, l, tol)
    return tuple(_meet_pair(c, l, tol) for c in _pencil_degenerate_members(base))


def pencil_involution(base, l: LineP2, tol: Tolerance = DEFAULT_TOL) -> p2.Involution:
    pairs = pencil_pairs(base, l, tol)
    return p2.involution_from_pairs(pairs[0], pairs[1], tol)


def check_desargues_involution(base, l: LineP2, tol: Tolerance = DEFAULT_TOL) -> bool:
    """The conics through four points cut any line in pairs of one involution.

    Builds the involution from two degenerate members and checks that it
    exchanges the pair cut by the third.
    """
    pairs = pencil_pairs(base, l, tol)
    inv = p2.involution_from_pairs(pairs[0], pairs[1], tol)
    x, y = pairs[2]
    return same(p2.apply_involution(inv, x, tol), y, tol)


def pencil_second_point(base, l: LineP2, x: PointP2, tol: Tolerance = DEFAULT_TOL) -> PointP2:
    """Second meet with l of the pencil conic through x (x on l)."""
    base = _validate_pencil(base, l, tol)
    a, b, _ = _pencil_degenerate_members(base)
    fa, fb = a.evaluate(x), b.evaluate(x)
    member = conics.Conic(
        tuple(tuple(fb * u - fa * v for u, v in zip(ra, rb)) for ra, rb in zip(a.m, b.m))
    )
    return conics.second_intersection(member, x, l, tol)


# -- two conics, common tangents, aligned tangent meets ------------------------


class PairingSelector(enum.Enum):
    NEAR_NEAR = "nearnear"
    FAR_FAR = "farfar"
    NEAR_FAR = "nearfar"
    FAR_NEAR = "farnear"

    @property
    def picks(self):
        """(index on conic 1, index on conic 2) into the near/far ordered meets."""
        return {
            PairingSelector.NEAR_NEAR: (0, 0),
            PairingSelector.FAR_FAR: (1, 1),
            PairingSelector.NEAR_FAR: (0, 1),
            PairingSelector.FAR_NEAR: (1, 0),
        }[self]


SAME_PAIRINGS = (PairingSelector.NEAR_NEAR, PairingSelector.FAR_FAR)
CROSSED_PAIRINGS = (PairingSelector.NEAR_FAR, PairingSelector.FAR_NEAR)


@dataclass(frozen=True)
class AlignmentReport:
    secant_count: int
    meets: tuple
    fitted_line: LineP2 | None
    all_collinear: bool
    max_residual: float | None = None


def _ray_parameter(apex: PointP2, secant: LineP2, x: PointP2, tol):
    """(num, den) with the signed position of x along the secant as num/den.

    For a finite apex the value is proportional to the affine offset of x
    from the apex, so |num/den| orders points by distance from the apex.
    For an apex at infinity it is the affine position along the common
    direction, increasing toward the apex.
    """
    if not apex.at_infinity:
        infinity = p2.LINE_AT_INFINITY if secant.exact else p2.LINE_AT_INFINITY.to_approx()
        direction = meet(secant, infinity, tol)
        mu, nu = p2.line_parameters((apex, direction), x)
        return nu, mu * apex.coords[2]
    finite = conics._other_point(secant, apex, tol)
    mu, nu = p2.line_parameters((apex, finite), x)
    return mu, nu * finite.coords[2]


def _ordered_meets(c, secant, apex, tol):
    res = conics.line_conic_meet(c, secant, tol)
    if res.kind is conics.MeetKind.IRRATIONAL:
        raise IrrationalMeet(f"{secant} meets the conic in irrational points; use the approx backend")
    if res.kind not in (conics.MeetKind.TWO_RATIONAL, conics.MeetKind.TWO_REAL):
        raise SecantMissesConic(f"{secant} does not meet the conic in two real points ({res.kind.value})")
    keyed = []
    for x in res.points:
        num, den = _ray_parameter(apex, secant, x, tol)
        keyed.append((x, num, den))
    (x0, n0, d0), (x1, n1, d1) = keyed
    if apex.at_infinity:
        # Larger position = nearer to the apex at infinity.
        lhs, rhs = n0 * d1 * d0 * d1, n1 * d0 * d0 * d1
        if kernel.scalar_is_zero(lhs - rhs, tol, max(abs(float(lhs)), abs(float(rhs)))):
            raise SecantMissesConic("ray order of the two meets is ambiguous")
        return (x0, x1) if lhs > rhs else (x1, x0)
    a0, a1 = abs(n0 * d1), abs(n1 * d0)
    if kernel.scalar_is_zero(a0 - a1, tol, max(float(a0), float(a1))):
        raise SecantMissesConic("ray order of the two meets is ambiguous")
    return (x0, x1) if a0 < a1 else (x1, x0)


def _normalized_residual(p, q, r) -> float:
    d = abs(float(kernel.det3(p.coords, q.coords, r.coords)))
    n = kernel.norm(p.coords) * kernel.norm(q.coords) * kernel.norm(r.coords)
    return d / n


def _as_pairings(pairing):
    if isinstance(pairing, PairingSelector):
        return (pairing,)
    return tuple(pairing)


def tangent_meets(c1, c2, apex, secant, pairing, tol: Tolerance = DEFAULT_TOL):
    """Tangent-meet points contributed by one secant, one per selector."""
    if not incident(apex, secant, tol):
        raise SecantNotThroughApex(f"{secant} does not pass through {apex}")
    near_far1 = _ordered_meets(c1, secant, apex, tol)
    near_far2 = _ordered_meets(c2, secant, apex, tol)
    out = []
    for sel in _as_pairings(pairing):
        i, j = sel.picks
        t1 = conics.tangent_at(c1, near_far1[i], tol)
        t2 = conics.tangent_at(c2, near_far2[j], tol)
        out.append(meet(t1, t2, tol))
    return out


def check_example1(c1, c2, apex: PointP2, secants, pairing, tol: Tolerance = DEFAULT_TOL) -> AlignmentReport:
    """Tangents at corresponding meets of secants from the apex cross on one line.

    ``pairing`` is a selector or a sequence of selectors; all resulting
    meets are tested against a single line fitted through the first two
    distinct ones.
    """
    secants = list(secants)
    meets = []
    for s in secants:
        meets.extend(tangent_meets(c1, c2, apex, s, pairing, tol))
    exact = meets[0].exact if meets else True
    distinct = []
    for m in meets:
        if not any(same(m, d, tol) for d in distinct):
            distinct.append(m)
    if len(distinct) < 2:
        return AlignmentReport(len(secants), tuple(meets), None, True, None if exact else 0.0)
    fitted = join(distinct[0], distinct[1], tol)
    if exact:
        ok = all(incident(m, fitted, tol) for m in meets)
        return AlignmentReport(len(secants), tuple(meets), fitted, ok, None)
    residual = max(
        (_normalized_residual(distinct[0], distinct[1], m) for m in meets),
        default=0.0,
    )
    ok = residual <= max(tol.eps_abs, tol.eps_rel)
    return AlignmentReport(len(secants), tuple(meets), fitted, ok, residual)


# -- folded sheet: section completion --------------------------------------


@dataclass(frozen=True)
class SectionQuadruplet:
    points: tuple
    carriers: tuple
    admissible: bool = False

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "carriers", tuple(self.carriers))
        if len(self.points) != 4 or len(self.carriers) != 4:
            raise ValueError("a section quadruplet has four points on four carriers")
        for i, (pt, line) in enumerate(zip(self.points, self.carriers)):
            if not incident(pt, line):
                raise CarrierIncidenceViolated(f"point {'ABCD'[i]} is not on carrier D{i + 1}")


def section_axis(q1: SectionQuadruplet, a1, b1, c1, tol: Tolerance = DEFAULT_TOL) -> LineP2:
    A, B, C, _ = q1.points
    try:
        m1 = meet(join(A, B, tol), join(a1, b1, tol), tol)
        m2 = meet(join(B, C, tol), join(b1, c1, tol), tol)
        return join(m1, m2, tol)
    except (CoincidentPoints, CoincidentLines) as exc:
        raise DegenerateAxis(f"the axis of the two sections is undetermined: {exc}") from None


def complete_section(carriers, first: SectionQuadruplet, a1, b1, c1, tol: Tolerance = DEFAULT_TOL) -> PointP2:
    """The fourth vertex forced on D4 once three vertices of a second section are chosen."""
    carriers = tuple(carriers)
    if not first.admissible:
        raise InadmissibleQuadruplet("the first quadruplet has not been verified as a section")
    for i, (pt, line) in enumerate(zip((a1, b1, c1), carriers)):
        if not incident(pt, line, tol):
            raise CarrierIncidenceViolated(f"point {'ABC'[i]}' is not on carrier D{i + 1}")
    for X, X1 in zip(first.points, (a1, b1, c1)):
        if same(X, X1, tol):
            raise DegenerateAxis("a vertex is shared by both sections")
    axis = section_axis(first, a1, b1, c1, tol)
    C, D = first.points[2], first.points[3]
    try:
        pivot = meet(join(C, D, tol), axis, tol)
        return meet(carriers[3], join(c1, pivot, tol), tol)
    except (CoincidentPoints, CoincidentLines) as exc:
        raise DegenerateAxis(f"completion is undetermined: {exc}") from None


@dataclass(frozen=True)
class SectionAlignment:
    aligned: bool
    meets: tuple
    note: str = ""


def section_alignment(carriers, q1: SectionQuadruplet, q2: SectionQuadruplet, tol: Tolerance = DEFAULT_TOL) -> SectionAlignment:
    for q in (q1, q2):
        for i, (pt, line) in enumerate(zip(q.points, carriers)):
            if not incident(pt, line, tol):
                raise CarrierIncidenceViolated(f"point {'ABCD'[i]} is not on carrier D{i + 1}")
    meets = []
    skipped = 0
    for i in range(3):
        X, Y = q1.points[i], q1.points[i + 1]
        X1, Y1 = q2.points[i], q2.points[i + 1]
        s, s1 = join(X, Y, tol), join(X1, Y1, tol)
        if same(s, s1, tol):
            skipped += 1
            continue
        meets.append(meet(s, s1, tol))
    ok, _ = _collinearity(meets, tol)
    note = "DegenerateComparison: coincident side lines skipped" if skipped else ""
    if note:
        log.info(note)
    return SectionAlignment(ok, tuple(meets), note)


def check_section_alignment(carriers, q1: SectionQuadruplet, q2: SectionQuadruplet, tol: Tolerance = DEFAULT_TOL) -> bool:
    """AB∧A'B', BC∧B'C', CD∧C'D' are collinear."""
    return section_alignment(carriers, q1, q2, tol).aligned


def projected_carriers(sheet: p3.FoldedSheet, projection: p3.Projection, tol: Tolerance = DEFAULT_TOL):
    return tuple(p3.project_line(projection, f, tol) for f in sheet.folds)


def _lift_to_fold(projection, pt, fold, tol):
    ray = projection.ray(pt)
    try:
        return p3.meet_coplanar_lines(ray, fold, tol)
    except (SkewLines, CoincidentPlanes):
        raise RayMissesFold(f"the projecting ray of {pt} misses its fold") from None


def verify_section_against_lift(sheet: p3.FoldedSheet, projection: p3.Projection, q, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether q is exactly the projection of a plane section of the sheet."""
    if len(sheet.folds) != 4:
        raise ValueError("verification needs a sheet with exactly four folds")
    points = q.points if isinstance(q, SectionQuadruplet) else tuple(q)
    lifted = [_lift_to_fold(projection, pt, fold, tol) for pt, fold in zip(points[:3], sheet.folds[:3])]
    try:
        plane = p3.plane_through(*lifted, tol=tol)
    except CollinearPoints:
        # Any plane through the common line works; the fourth lift must exist.
        _lift_to_fold(projection, points[3], sheet.folds[3], tol)
        return True
    try:
        d = p3.meet_line_plane(sheet.folds[3], plane, tol)
    except LineInPlane:
        return False
    return same(p3.project(projection, d, tol), points[3], tol)


def admit_quadruplet(sheet, projection, points, tol: Tolerance = DEFAULT_TOL) -> SectionQuadruplet:
    """Build a quadruplet on the sheet's projected carriers with its admissibility decided."""
    carriers = projected_carriers(sheet, projection, tol)
    ok = verify_section_against_lift(sheet, projection, points, tol)
    return SectionQuadruplet(tuple(points), carriers, ok)


def section_quadruplet(sheet, projection, plane, tol: Tolerance = DEFAULT_TOL) -> SectionQuadruplet:
    """Projected section of the sheet by a plane; admissible by construction."""
    pts = tuple(p3.project(projection, x, tol) for x in p3.section_by_plane(sheet, plane, tol))
    return SectionQuadruplet(pts, projected_carriers(sheet, projection, tol), True)
