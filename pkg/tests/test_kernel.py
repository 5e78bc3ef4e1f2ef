from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from traitpreuves import kernel
from traitpreuves.errors import MixedBackend, ZeroDenominator
from traitpreuves.kernel import Tolerance

rationals = st.fractions(max_denominator=10**6).filter(lambda q: abs(q.numerator) < 10**12)


def test_normalize_examples():
    assert kernel.normalize(2, 4) == Fraction(1, 2)
    q = kernel.normalize(3, -6)
    assert (q.numerator, q.denominator) == (-1, 2)
    z = kernel.normalize(0, 7)
    assert (z.numerator, z.denominator) == (0, 1)


def test_normalize_zero_denominator():
    with pytest.raises(ZeroDenominator):
        kernel.normalize(1, 0)


@given(st.integers(-10**9, 10**9), st.integers(1, 10**9))
def test_normalize_idempotent(n, d):
    q = kernel.normalize(n, d)
    assert kernel.normalize(q.numerator, q.denominator) == q
    assert q.denominator > 0


def test_scalar_is_zero():
    assert kernel.scalar_is_zero(Fraction(0))
    assert not kernel.scalar_is_zero(Fraction(1, 10**9))
    assert kernel.scalar_is_zero(1e-15, Tolerance(eps_abs=1e-12))
    assert not kernel.scalar_is_zero(1e-3)
    # The relative term scales with the caller's hint.
    assert kernel.scalar_is_zero(1e-3, Tolerance(), scale=1e7)


@pytest.mark.parametrize("args", [(0.0, 0.0), (-1e-3, 1e-9), (float("inf"), 1e-9), (1e-12, float("nan"))])
def test_tolerance_rejects_bad_values(args):
    with pytest.raises(ValueError):
        Tolerance(*args)


def test_mixed_backend():
    with pytest.raises(MixedBackend):
        kernel.backend_of(Fraction(1, 2), 0.5)
    assert kernel.backend_of(1, Fraction(1, 3)) == kernel.EXACT
    assert kernel.backend_of(1.0, 2.0) == kernel.APPROX


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    if a != 0:
        assert a * (1 / a) == 1


def test_canonical_forms():
    assert kernel.canonical((2, -4, 6)) == (1, -2, 3)
    assert kernel.canonical((-2, 4, 0)) == (1, -2, 0)
    assert kernel.canonical((Fraction(1, 2), Fraction(1, 3), 0)) == (3, 2, 0)
    assert kernel.canonical((0, 0, 0)) is None
    assert kernel.canonical((0.0, -2.0, 1.0)) == (0.0, 1.0, -0.5)


def test_parse_rational():
    assert kernel.parse_rational("3/6") == Fraction(1, 2)
    assert kernel.parse_rational("-7") == -7
    assert kernel.parse_rational("0.1") == Fraction(1, 10)
    with pytest.raises(ZeroDenominator):
        kernel.parse_rational("1/0")


def test_exact_sqrt():
    assert kernel.exact_sqrt(Fraction(9, 49)) == Fraction(3, 7)
    assert not kernel.is_square(Fraction(2))
    with pytest.raises(ValueError):
        kernel.exact_sqrt(Fraction(-1))


def test_nullspace_exact():
    basis = kernel.nullspace([(1, 2, 3), (2, 4, 6)])
    assert len(basis) == 2
    for v in basis:
        assert kernel.dot((1, 2, 3), v) == 0
    assert kernel.rank([(1, 0, 0), (0, 1, 0), (1, 1, 0)]) == 2
