import random
from fractions import Fraction

import pytest

from traitpreuves import generators, p2
from traitpreuves.errors import CoincidentLines, CoincidentPoints, DegenerateQuadruple, MixedBackend, NotCollinear, NotOnLine
from traitpreuves.p2 import LINE_AT_INFINITY, Homography, LineP2, PointP2, point


def test_canonical_equality():
    assert PointP2(2, 4, 2) == PointP2(1, 2, 1)
    assert PointP2(-1, -2, -1) == point(1, 2)
    assert PointP2(Fraction(1, 2), 1, 1) == PointP2(1, 2, 2)


def test_join_and_meet():
    assert p2.join(point(0, 0), point(1, 1)) == LineP2(1, -1, 0)
    assert p2.meet(LineP2(1, 0, 0), LineP2(0, 1, 0)) == PointP2(0, 0, 1)
    # Parallel lines meet at infinity without special handling.
    m = p2.meet(LineP2(0, 1, 0), LineP2(0, 1, -1))
    assert m == PointP2(1, 0, 0)
    assert m.at_infinity
    assert p2.join(PointP2(1, 0, 0), PointP2(0, 1, 0)) == LINE_AT_INFINITY


def test_join_meet_errors():
    with pytest.raises(CoincidentPoints):
        p2.join(point(1, 2), PointP2(2, 4, 2))
    with pytest.raises(CoincidentLines):
        p2.meet(LineP2(1, 1, 1), LineP2(3, 3, 3))


def test_mixed_backends_rejected():
    with pytest.raises(MixedBackend):
        p2.join(point(0, 0), point(1.0, 1.0))


def test_incidence_predicates():
    assert p2.incident(point(1, 1), LineP2(1, -1, 0))
    assert not p2.incident(point(1, 2), LineP2(1, -1, 0))
    assert p2.collinear(point(0, 0), point(1, 1), point(5, 5))
    assert not p2.collinear(point(0, 0), point(1, 0), point(0, 1))
    assert p2.concurrent(LineP2(1, 0, 0), LineP2(0, 1, 0), LineP2(1, 1, 0))
    assert not p2.concurrent(LineP2(1, 0, 0), LineP2(0, 1, 0), LineP2(0, 0, 1))
    assert p2.concurrent(LineP2(1, 0, -1), LineP2(1, 0, -2), LineP2(1, 0, 5))


def test_approx_tolerance():
    a, b = point(0.0, 0.0), point(1.0, 1.0)
    assert p2.collinear(a, b, point(2.0, 2.0 + 1e-14))
    assert not p2.collinear(a, b, point(2.0, 2.1))


def test_duality_random():
    rng = random.Random(7)
    for _ in range(200):
        l, m = generators.random_line(rng), generators.random_line(rng)
        if l == m:
            continue
        x = p2.meet(l, m)
        assert p2.incident(x, l) and p2.incident(x, m)


def test_homographies():
    assert p2.apply_homography(Homography.identity(), PointP2(2, 3, 5)) == PointP2(2, 3, 5)
    h = Homography(((2, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert p2.apply_homography(h, PointP2(1, 1, 1)) == PointP2(2, 1, 1)
    rng = random.Random(3)
    for _ in range(50):
        h = generators.homography(rng)
        p = generators.projective_point(rng)
        assert p2.apply_homography(h.inverse(), p2.apply_homography(h, p)) == p


def test_homography_maps_lines():
    rng = random.Random(11)
    h = generators.homography(rng)
    a, b = point(1, 2), point(-3, 5)
    image = p2.apply_homography_line(h, p2.join(a, b))
    assert image == p2.join(p2.apply_homography(h, a), p2.apply_homography(h, b))


def test_cross_ratio_values():
    pts = [point(t, 0) for t in (0, 1, 2, 3)]
    assert p2.cross_ratio(*pts) == Fraction(4, 3)
    harmonic = (PointP2(0, 0, 1), PointP2(1, 0, 0), PointP2(1, 0, 1), PointP2(-1, 0, 1))
    assert p2.cross_ratio(*harmonic) == -1


def test_cross_ratio_errors():
    with pytest.raises(NotCollinear):
        p2.cross_ratio(point(0, 0), point(1, 0), point(2, 0), point(0, 1))
    with pytest.raises(DegenerateQuadruple):
        p2.cross_ratio(point(0, 0), point(1, 0), point(1, 0), point(3, 0))


def test_cross_ratio_invariance_and_permutation():
    rng = random.Random(5)
    for _ in range(100):
        l = generators.random_line(rng)
        ts = rng.sample(range(-20, 20), 4)
        a = p2.meet(l, LineP2(1, 0, 0)) if not p2.same(l, LineP2(1, 0, 0)) else PointP2(0, 1, 0)
        b = p2.meet(l, LINE_AT_INFINITY) if not p2.same(l, LINE_AT_INFINITY) else PointP2(1, 0, 0)
        if a == b:
            continue
        pts = [p2.from_parameters((a, b), 1, t) for t in ts]
        h = generators.homography(rng)
        value = p2.cross_ratio(*pts)
        assert p2.cross_ratio(*(p2.apply_homography(h, x) for x in pts)) == value
        pa, pb, pc, pd = pts
        assert value * p2.cross_ratio(pa, pb, pd, pc) == 1


def test_involution_swapping_unit_pair_and_zero_infinity():
    # Exchanging -1 with 1 and 0 with infinity gives t -> -1/t:
    # it is the map that fixes +-i.
    inv = p2.involution_from_pairs((point(-1, 0), point(1, 0)), (point(0, 0), PointP2(1, 0, 0)))
    assert p2.apply_involution(inv, point(-1, 0)) == point(1, 0)
    assert p2.apply_involution(inv, PointP2(1, 0, 0)) == point(0, 0)
    assert p2.apply_involution(inv, point(0, 0)) == PointP2(1, 0, 0)
    assert p2.apply_involution(inv, point(5, 0)) == point(Fraction(-1, 5), 0)


def test_involution_with_fixed_point():
    inv = p2.involution_from_pairs((point(0, 0), point(0, 0)), (point(1, 0), point(-1, 0)))
    assert p2.apply_involution(inv, point(5, 0)) == point(-5, 0)
    assert p2.apply_involution(inv, point(0, 0)) == point(0, 0)
    assert p2.apply_involution(inv, PointP2(1, 0, 0)) == PointP2(1, 0, 0)


def test_involution_is_involutory():
    rng = random.Random(9)
    inv = p2.involution_from_pairs((point(-1, 0), point(2, 0)), (point(0, 0), point(7, 0)))
    (a, b), (c, d) = p2.involution_square(inv)
    assert b == c == 0 and a == d != 0
    for _ in range(100):
        x = point(generators.rational(rng), 0)
        assert p2.apply_involution(inv, p2.apply_involution(inv, x)) == x


def test_involution_errors():
    with pytest.raises(NotCollinear):
        p2.involution_from_pairs((point(0, 0), point(1, 0)), (point(0, 1), point(1, 1)))
    inv = p2.involution_from_pairs((point(-1, 0), point(1, 0)), (point(0, 0), PointP2(1, 0, 0)))
    with pytest.raises(NotOnLine):
        p2.apply_involution(inv, point(0, 1))
