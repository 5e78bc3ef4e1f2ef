"""The Moulton plane: an affine incidence plane in which Desargues fails.

Lines of nonnegative slope and vertical lines are ordinary. A line of
negative slope m is refracted at the y-axis: it reads y = m x + b for
x <= 0 and y = 2 m x + b for x >= 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import p2, theorems
from .errors import BudgetExhausted, CoincidentLines, CoincidentPoints

REFRACTION = 2


@dataclass(frozen=True, order=True)
class MoultonPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __repr__(self):
        return f"M({self.x}, {self.y})"


@dataclass(frozen=True)
class Vertical:
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))


@dataclass(frozen=True)
class Bent:
    """y = m x + b, with the slope multiplied by REFRACTION for x >= 0 when m < 0."""

    m: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "m", Fraction(self.m))
        object.__setattr__(self, "b", Fraction(self.b))

    @property
    def bends(self) -> bool:
        return self.m < 0

    def pieces(self):
        """(slope, intercept, xmin, xmax) affine pieces; None means unbounded."""
        if not self.bends:
            return ((self.m, self.b, None, None),)
        return ((self.m, self.b, None, Fraction(0)), (REFRACTION * self.m, self.b, Fraction(0), None))

    def y_at(self, x) -> Fraction:
        x = Fraction(x)
        slope = REFRACTION * self.m if self.bends and x > 0 else self.m
        return slope * x + self.b


MoultonLine = Vertical | Bent


def m_incident(p: MoultonPoint, l: MoultonLine) -> bool:
    if isinstance(l, Vertical):
        return p.x == l.c
    return p.y == l.y_at(p.x)


def m_line_through(p: MoultonPoint, q: MoultonPoint) -> MoultonLine:
    if p == q:
        raise CoincidentPoints(f"{p} and {q} coincide")
    if p.x == q.x:
        return Vertical(p.x)
    if p.x > q.x:
        p, q = q, p
    s = (q.y - p.y) / (q.x - p.x)
    if s >= 0 or q.x <= 0:
        # Unbent, or the whole segment lies on the left piece.
        return Bent(s, p.y - s * p.x)
    if p.x >= 0:
        m = s / REFRACTION
        return Bent(m, p.y - s * p.x)
    # Straddles the axis descending: p on the left piece, q on the right.
    m = (q.y - p.y) / (REFRACTION * q.x - p.x)
    return Bent(m, p.y - m * p.x)


def _in_range(x, lo, hi):
    return (lo is None or x >= lo) and (hi is None or x <= hi)


def m_meet(l1: MoultonLine, l2: MoultonLine) -> MoultonPoint | None:
    """The common point of two distinct Moulton lines, or None when parallel."""
    if l1 == l2:
        raise CoincidentLines(f"{l1} and {l2} coincide")
    if isinstance(l1, Vertical) and isinstance(l2, Vertical):
        return None
    if isinstance(l2, Vertical):
        l1, l2 = l2, l1
    if isinstance(l1, Vertical):
        return MoultonPoint(l1.c, l2.y_at(l1.c))
    found = set()
    for m1, b1, lo1, hi1 in l1.pieces():
        for m2, b2, lo2, hi2 in l2.pieces():
            if m1 == m2:
                continue
            x = (b2 - b1) / (m1 - m2)
            if _in_range(x, lo1, hi1) and _in_range(x, lo2, hi2):
                found.add(MoultonPoint(x, m1 * x + b1))
    if len(found) > 1:
        raise AssertionError(f"two Moulton lines met twice: {sorted(found)}")
    return found.pop() if found else None


def m_collinear(p: MoultonPoint, q: MoultonPoint, r: MoultonPoint) -> bool:
    if p == q or p == r:
        return True
    return m_incident(r, m_line_through(p, q))


@dataclass(frozen=True)
class FailureWitness:
    triangle1: tuple
    triangle2: tuple
    center: MoultonPoint
    side_meets: tuple
    side_lines: tuple
    collinearity_defect: Fraction

    @property
    def points(self) -> tuple:
        return self.triangle1 + self.triangle2


def _euclid(p: MoultonPoint) -> p2.PointP2:
    return p2.point(p.x, p.y)


def _signed_area2(a, b, c) -> Fraction:
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def _flat(tri) -> bool:
    return _signed_area2(*tri) == 0


def euclidean_defect(points) -> Fraction:
    """|det| of the points' (x, y, 1) rows: zero iff Euclidean-collinear."""
    return abs(_signed_area2(*points))


def evaluate_configuration(center, tri1, tri2):
    """Moulton side lines and side meets of two triangles, or None if some pair is parallel.

    Raises ValueError when the configuration is not in perspective from
    ``center`` in the Moulton plane.
    """
    for X, X1 in zip(tri1, tri2):
        if X == X1 or X == center or X1 == center:
            raise ValueError("degenerate perspective configuration")
        if not m_incident(X1, m_line_through(center, X)):
            raise ValueError("vertices are not in perspective from the center")
    lines = []
    meets = []
    for i, j in ((0, 1), (1, 2), (2, 0)):
        s = m_line_through(tri1[i], tri1[j])
        s1 = m_line_through(tri2[i], tri2[j])
        if s == s1:
            return None
        x = m_meet(s, s1)
        if x is None:
            return None
        lines.append((s, s1))
        meets.append(x)
    return tuple(lines), tuple(meets)


def verify_witness(w: FailureWitness) -> bool:
    """Perspective hypothesis exactly true and Moulton collinearity exactly false."""
    result = evaluate_configuration(w.center, w.triangle1, w.triangle2)
    if result is None:
        return False
    _, meets = result
    return meets == w.side_meets and not m_collinear(*meets)


def _grid(lo, hi, step):
    out = []
    x = Fraction(lo)
    while x <= hi:
        out.append(x)
        x += step
    return out


RATIOS = (Fraction(2), Fraction(1, 2), Fraction(3), Fraction(-1), Fraction(3, 2))


def _configurations(box, step):
    """Deterministic stream of Euclidean-perspective configurations in the box.

    The three lines through the center have nonnegative slope (or are
    vertical), so they are at once Euclidean and Moulton lines; primed
    vertices sit at fixed rational ratios along them.
    """
    xmin, ymin, xmax, ymax = (Fraction(v) for v in box)
    xs, ys = _grid(xmin, xmax, step), _grid(ymin, ymax, step)
    grid = [MoultonPoint(x, y) for x in xs for y in ys]
    # Centers nearest the refraction axis first: their pencils cross it soonest.
    for center in sorted(grid, key=lambda p: (abs(p.x), abs(p.y), p.x, p.y)):
        ups = [
            p for p in grid
            if p != center and (p.x == center.x or (p.y - center.y) / (p.x - center.x) >= 0)
        ]
        for A, B, C in itertools.combinations(ups, 3):
            for ra, rb, rc in itertools.product(RATIOS, repeat=3):
                if ra == rb == rc:
                    continue  # homothetic triangles have every side meet at infinity
                tri2 = tuple(
                    MoultonPoint(center.x + r * (X.x - center.x), center.y + r * (X.y - center.y))
                    for X, r in ((A, ra), (B, rb), (C, rc))
                )
                if all(xmin <= X.x <= xmax and ymin <= X.y <= ymax for X in tri2):
                    yield center, (A, B, C), tri2


def find_desargues_failure(search_box=(-4, -4, 4, 4), budget: int = 100_000, step=Fraction(1)) -> FailureWitness:
    """First configuration, in a fixed enumeration, where Desargues fails in the Moulton plane."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    for n, (center, tri1, tri2) in enumerate(_configurations(search_box, step)):
        if n >= budget:
            break
        if _flat(tri1) or _flat(tri2):
            continue
        try:
            result = evaluate_configuration(center, tri1, tri2)
        except ValueError:
            continue
        if result is None:
            continue
        lines, meets = result
        if len(set(meets)) < 3 or m_collinear(*meets):
            continue
        return FailureWitness(tri1, tri2, center, meets, lines, euclidean_defect(meets))
    raise BudgetExhausted(f"no Desargues failure within {budget} configurations")


def euclidean_verdict(w: FailureWitness) -> theorems.DesarguesVerdict:
    """The same six points read with ordinary straight lines."""
    return theorems.check_desargues(*(_euclid(p) for p in w.triangle1 + w.triangle2))


def uses_refracted_side(w: FailureWitness) -> bool:
    return any(isinstance(l, Bent) and l.bends for pair in w.side_lines for l in pair)


def moulton_polyline(l: MoultonLine, xmin, xmax):
    """Vertices (as Fractions) of a Moulton line over [xmin, xmax], for drawing."""
    xmin, xmax = Fraction(xmin), Fraction(xmax)
    if isinstance(l, Vertical):
        return None
    xs = [xmin]
    if l.bends and xmin < 0 < xmax:
        xs.append(Fraction(0))
    xs.append(xmax)
    return [(x, l.y_at(x)) for x in xs]
