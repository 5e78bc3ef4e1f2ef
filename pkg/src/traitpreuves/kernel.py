"""Scalar arithmetic shared by the geometric modules.

Two backends exist. *Exact* values are Python ``int`` or
:class:`fractions.Fraction`; *approximate* values are ``float``. The
Python type is the tag, and a single configuration never mixes the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import MixedBackend, ZeroDenominator

Rational = Fraction

EXACT = "exact"
APPROX = "approx"


def normalize(n: int, d: int) -> Fraction:
    """Canonical rational ``n/d``: reduced, sign on the numerator."""
    if d == 0:
        raise ZeroDenominator(f"zero denominator in {n}/{d}")
    return Fraction(n, d)


@dataclass(frozen=True)
class Tolerance:
    eps_abs: float = 1e-12
    eps_rel: float = 1e-9

    def __post_init__(self):
        for v in (self.eps_abs, self.eps_rel):
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"tolerance must be finite and nonnegative, got {v}")
        if self.eps_abs == 0 and self.eps_rel == 0:
            raise ValueError("eps_abs and eps_rel cannot both be zero")


DEFAULT_TOL = Tolerance()


def is_exact(x) -> bool:
    return isinstance(x, _RationalABC) and not isinstance(x, bool)


def backend_of(*values) -> str:
    """Return the backend of a flat collection of scalars, rejecting mixtures."""
    kinds = {EXACT if is_exact(v) else APPROX for v in values}
    if len(kinds) > 1:
        raise MixedBackend("exact and approximate scalars mixed in one computation")
    return kinds.pop() if kinds else EXACT


def to_backend(x, backend: str):
    if backend == EXACT:
        if isinstance(x, float):
            raise MixedBackend("cannot convert a float into the exact backend")
        return Fraction(x)
    return float(x)


def scalar_is_zero(x, tol: Tolerance = DEFAULT_TOL, scale: float = 1.0) -> bool:
    if is_exact(x):
        return x == 0
    return abs(x) <= max(tol.eps_abs, tol.eps_rel * scale)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def det2(a, b, c, d):
    return a * d - b * c


def det3(r0, r1, r2):
    return dot(r0, cross(r1, r2))


def det3_scale(r0, r1, r2) -> float:
    """Largest absolute term of the Leibniz expansion; the natural scale of det3."""
    terms = []
    for (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)):
        terms.append(abs(float(r0[i]) * float(r1[j]) * float(r2[k])))
    return max(terms)


def matmul(m, v):
    return tuple(dot(row, v) for row in m)


def transpose(m):
    return tuple(zip(*m))


def det(m):
    """Determinant of a small square matrix by fraction-safe elimination."""
    n = len(m)
    a = [list(row) for row in m]
    sign = 1
    result = 1
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[pivot][col] == 0:
            return a[pivot][col] * 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        p = a[col][col]
        result = result * p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return sign * result


def adjugate3(m):
    """Adjugate of a 3x3 matrix; equals det(m) * inverse(m)."""
    c0, c1, c2 = transpose(m)
    rows = (cross(c1, c2), cross(c2, c0), cross(c0, c1))
    return rows


def nullspace(rows, tol: Tolerance = DEFAULT_TOL):
    """Basis of the right null space of ``rows``.

    Gaussian elimination with largest-pivot selection; exact for Fractions,
    tolerance-gated for floats.
    """
    if not rows:
        raise ValueError("empty matrix")
    n = len(rows[0])
    exact = backend_of(*(x for r in rows for x in r)) == EXACT
    a = [[Fraction(x) if exact else float(x) for x in r] for r in rows]
    scale = max((abs(float(x)) for r in a for x in r), default=1.0) or 1.0
    pivots = []
    row = 0
    for col in range(n):
        if row >= len(a):
            break
        best = max(range(row, len(a)), key=lambda r: abs(a[r][col]))
        if scalar_is_zero(a[best][col], tol, scale):
            continue
        a[row], a[best] = a[best], a[row]
        p = a[row][col]
        a[row] = [x / p for x in a[row]]
        for r in range(len(a)):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    for f in free:
        v = [zero] * n
        v[f] = one
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][f]
        basis.append(tuple(v))
    return basis


def rank(rows, tol: Tolerance = DEFAULT_TOL) -> int:
    return len(rows[0]) - len(nullspace(rows, tol))


def canonical(coords):
    """Canonical representative of a homogeneous tuple modulo nonzero scale.

    Exact tuples become coprime integers whose first nonzero entry is
    positive. Approximate tuples are scaled to unit max-norm with the first
    significant entry positive. Returns None for the zero tuple.
    """
    if all(type(c) is int for c in coords):
        g = 0
        for c in coords:
            g = math.gcd(g, c)
        if g == 0:
            return None
        lead = next(c for c in coords if c != 0)
        if lead < 0:
            g = -g
        return tuple(c // g for c in coords)
    if backend_of(*coords) == EXACT:
        fr = [Fraction(c) for c in coords]
        if all(c == 0 for c in fr):
            return None
        lcm = 1
        for c in fr:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in fr]
        g = 0
        for i in ints:
            g = math.gcd(g, i)
        ints = [i // g for i in ints]
        lead = next(i for i in ints if i != 0)
        if lead < 0:
            ints = [-i for i in ints]
        return tuple(ints)
    fl = [float(c) for c in coords]
    big = max(abs(c) for c in fl)
    if big == 0 or not math.isfinite(big):
        return None
    fl = [c / big for c in fl]
    lead = next(c for c in fl if abs(c) > 1e-9)
    if lead < 0:
        fl = [-c for c in fl]
    return tuple(c + 0.0 for c in fl)


def is_zero_vector(v, tol: Tolerance = DEFAULT_TOL, scale: float = 1.0) -> bool:
    return all(scalar_is_zero(x, tol, scale) for x in v)


def norm(v) -> float:
    return math.sqrt(sum(float(x) * float(x) for x in v))


def is_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def exact_sqrt(q: Fraction) -> Fraction:
    if not is_square(q):
        raise ValueError(f"{q} is not the square of a rational")
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, an integer, or a decimal literal as an exact rational."""
    text = text.strip()
    if "/" in text:
        n, d = text.split("/", 1)
        return normalize(int(n), int(d))
    return Fraction(text)
