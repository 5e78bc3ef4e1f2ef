import random
from fractions import Fraction

import pytest

from traitpreuves import conics, generators, p2, theorems
from traitpreuves.errors import (
    CarrierIncidenceViolated,
    CoincidentSides,
    DegenerateAxis,
    DegenerateBase,
    InadmissibleQuadruplet,
    LineThroughBasePoint,
    SecantNotThroughApex,
)
from traitpreuves.p2 import LINE_AT_INFINITY, LineP2, PointP2, point
from traitpreuves.theorems import PairingSelector, SectionQuadruplet

F = Fraction
WORKED = (point(1, 0), point(0, 1), point(1, 1), point(2, 0), point(0, 3), point(4, 4))
C1 = conics.conic_from_circle((0, 0), 1)
C2 = conics.conic_from_circle((4, 0), 2)
APEX = point(-4, 0)
CARRIERS = tuple(LineP2(1, 0, -k) for k in range(4))
ABCD = (point(0, 0), point(1, 1), point(2, 1), point(3, 0))


def _secant(x, y):
    return p2.join(APEX, point(x, y))


def test_worked_desargues():
    v = theorems.check_desargues(*WORKED)
    assert v.hypothesis_holds and v.conclusion_holds
    assert v.perspective_center == point(0, 0)
    assert v.side_meets == (point(4, -3), point(-8, 1), point(1, -2))
    assert v.axis == p2.join(point(4, -3), point(-8, 1))


def test_non_perspective_triangles():
    A, B, C, A1, B1, C1 = WORKED
    shift = [point(x + 1, y + F(1, 3)) for x, y in (p.xy() for p in (A1, B1, C1))]
    v = theorems.check_desargues(A, B, C, *shift)
    assert not v.hypothesis_holds
    assert v.perspective_center is None


def test_coincident_sides():
    A, B, C = WORKED[:3]
    with pytest.raises(CoincidentSides):
        theorems.check_desargues(A, B, C, point(2, -1), B, point(4, 4))


def test_converse_worked_instance():
    v = theorems.check_desargues_converse(*WORKED)
    assert v.hypothesis_holds and v.conclusion_holds
    assert v.perspective_center == point(0, 0)
    assert v.direction == "converse"


def test_duality_of_the_two_statements():
    # The dual of the worked configuration (sides read as points) is again
    # a Desarguesian pair, with center and axis exchanged.
    A, B, C, A1, B1, C1 = WORKED
    dual = theorems.dualize_triangle(A, B, C) + theorems.dualize_triangle(A1, B1, C1)
    v = theorems.check_desargues_converse(*dual)
    assert v.hypothesis_holds and v.conclusion_holds
    axis = theorems.check_desargues(*WORKED).axis
    assert v.perspective_center == PointP2(*axis.coords)


def test_random_forward_and_converse():
    rng = random.Random(12)
    for _ in range(50):
        inst = generators.perspective_configuration(rng)
        assert theorems.check_desargues(*inst.points).conclusion_holds
        pts = generators.axial_configuration(rng)
        assert theorems.check_desargues_converse(*pts).conclusion_holds


def test_square_involution():
    base = (point(1, 1), point(-1, 1), point(-1, -1), point(1, -1))
    x_axis = LineP2(0, 1, 0)
    pairs = theorems.pencil_pairs(base, x_axis)
    assert {frozenset(p) for p in pairs} == {
        frozenset((point(1, 0), point(-1, 0))),
        frozenset((PointP2(1, 0, 0),)),
        frozenset((point(0, 0),)),
    }
    assert theorems.check_desargues_involution(base, x_axis)
    inv = theorems.pencil_involution(base, x_axis)
    for t in (2, F(-3, 7), 11):
        assert p2.apply_involution(inv, point(t, 0)) == point(-t, 0)


def test_random_involutions():
    rng = random.Random(8)
    for _ in range(40):
        base, line = generators.pencil_instance(rng)
        assert theorems.check_desargues_involution(base, line)


def test_pencil_second_point_matches_involution():
    base = (point(0, 0), point(3, 1), point(1, 4), point(-2, 2))
    l = LineP2(1, 2, -20)
    inv = theorems.pencil_involution(base, l)
    x = p2.meet(l, LineP2(1, 0, -2))
    assert theorems.pencil_second_point(base, l, x) == p2.apply_involution(inv, x)


def test_pencil_errors():
    base = (point(1, 1), point(-1, 1), point(-1, -1), point(1, -1))
    with pytest.raises(LineThroughBasePoint):
        theorems.pencil_pairs(base, LineP2(0, 1, -1))
    with pytest.raises(DegenerateBase):
        theorems.pencil_pairs((point(0, 0), point(1, 1), point(2, 2), point(5, 0)), LineP2(0, 1, 7))


def test_example1_same_pairing_meets_at_infinity():
    secants = [_secant(F(3, 5), F(4, 5)), _secant(F(4, 5), F(3, 5)), _secant(F(5, 13), F(12, 13))]
    report = theorems.check_example1(C1, C2, APEX, secants, PairingSelector.NEAR_NEAR)
    assert report.all_collinear
    assert all(m.at_infinity for m in report.meets)
    assert report.fitted_line == LINE_AT_INFINITY
    both = theorems.check_example1(C1, C2, APEX, secants, theorems.SAME_PAIRINGS)
    assert both.all_collinear and both.fitted_line == LINE_AT_INFINITY


def test_example1_crossed_pairing_on_radical_axis():
    s = _secant(F(3, 5), F(4, 5))
    (far_near,) = theorems.tangent_meets(C1, C2, APEX, s, PairingSelector.FAR_NEAR)
    assert far_near == point(F(13, 8), F(1, 32))
    (near_far,) = theorems.tangent_meets(C1, C2, APEX, s, PairingSelector.NEAR_FAR)
    assert near_far.xy()[0] == F(13, 8)
    assert near_far == p2.meet(LineP2(3, 4, -22), LineP2(-91, 60, -109))
    secants = [s, _secant(F(4, 5), F(3, 5)), _secant(F(5, 13), F(12, 13)), _secant(F(12, 13), F(5, 13)), _secant(F(8, 17), F(15, 17))]
    report = theorems.check_example1(C1, C2, APEX, secants, theorems.CROSSED_PAIRINGS)
    assert report.all_collinear
    assert report.fitted_line == LineP2(8, 0, -13)


def test_example1_secant_must_pass_through_apex():
    with pytest.raises(SecantNotThroughApex):
        theorems.tangent_meets(C1, C2, APEX, LineP2(1, 0, 0), PairingSelector.NEAR_NEAR)


def test_example2_worked_completion():
    first = SectionQuadruplet(ABCD, CARRIERS, admissible=True)
    a1, b1, c1 = point(0, 2), point(1, 2), point(2, 3)
    axis = theorems.section_axis(first, a1, b1, c1)
    assert axis == p2.join(point(2, 2), point(0, 1))
    assert p2.meet(p2.join(ABCD[2], ABCD[3]), axis) == point(F(4, 3), F(5, 3))
    d1 = theorems.complete_section(CARRIERS, first, a1, b1, c1)
    assert d1 == point(3, 5)
    second = SectionQuadruplet((a1, b1, c1, d1), CARRIERS)
    assert theorems.check_section_alignment(CARRIERS, first, second)
    moved = SectionQuadruplet((a1, b1, c1, point(3, 5 + F(1, 7))), CARRIERS)
    assert not theorems.check_section_alignment(CARRIERS, first, moved)


def test_example2_perspective_image():
    # Scaling y about the axis y = -1 maps every vertical carrier to itself,
    # so the completed fourth vertex must be the image of D.
    k = F(3, 2)
    images = [point(x, -1 + k * (y + 1)) for x, y in (p.xy() for p in ABCD)]
    first = SectionQuadruplet(ABCD, CARRIERS, admissible=True)
    assert theorems.complete_section(CARRIERS, first, *images[:3]) == images[3]
    assert theorems.section_axis(first, *images[:3]) == LineP2(0, 1, 1)


def test_example2_errors():
    first = SectionQuadruplet(ABCD, CARRIERS, admissible=True)
    with pytest.raises(DegenerateAxis):
        theorems.complete_section(CARRIERS, first, ABCD[0], point(1, 2), point(2, 3))
    with pytest.raises(CarrierIncidenceViolated):
        SectionQuadruplet((point(0, 0), point(1, 1), point(2, 1), point(4, 0)), CARRIERS)
    with pytest.raises(InadmissibleQuadruplet):
        theorems.complete_section(CARRIERS, SectionQuadruplet(ABCD, CARRIERS), point(0, 2), point(1, 2), point(2, 3))


def test_section_alignment_identical_quadruplets():
    q = SectionQuadruplet(ABCD, CARRIERS)
    result = theorems.section_alignment(CARRIERS, q, q)
    assert result.aligned
    assert "DegenerateComparison" in result.note


def test_section_against_lift():
    rng = random.Random(21)
    for _ in range(10):
        inst = generators.sheet_instance(rng)
        assert theorems.verify_section_against_lift(inst.sheet, inst.projection, inst.first)
        d1 = theorems.complete_section(inst.carriers, inst.first, *inst.second.points[:3])
        assert d1 == inst.second.points[3]
        # Another point of the fourth carrier is not a section.
        other = p2.meet(inst.carriers[3], p2.join(inst.first.points[0], inst.second.points[3]))
        if not p2.same(other, inst.first.points[3]):
            bad = inst.first.points[:3] + (other,)
            assert not theorems.verify_section_against_lift(inst.sheet, inst.projection, bad)
