from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from parryseq.algebraic import (AlgebraicReal, FieldElement, count_roots, evaluate_at_conjugate,
                                isolate_real_roots, poly_divmod, poly_gcd, poly_mul,
                                squarefree_part, sturm_sequence)
from parryseq.beta import QUARTIC, quartic_roots
from parryseq.errors import FieldMismatch, InvalidInput

BETA, GAMMA = quartic_roots()
SQRT2 = isolate_real_roots([-2, 0, 1])[1]

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=50)
coords = st.lists(rationals, min_size=4, max_size=4)


def elem(cs, root=BETA):
    return FieldElement(cs, root)


def test_root_isolation():
    roots = isolate_real_roots(QUARTIC)
    assert len(roots) == 2
    assert abs(float(roots[1]) - 3.6164545432517521) < 1e-14
    assert abs(float(roots[0]) + 1.0968469199646) < 1e-12
    assert [float(r) for r in isolate_real_roots([-6, 11, -6, 1])] == [1.0, 2.0, 3.0]
    assert isolate_real_roots([1, 0, 1]) == []
    with pytest.raises(InvalidInput):
        isolate_real_roots([0])


def test_rational_roots_are_exact():
    r = isolate_real_roots([-3, 1])[0]
    assert r.exact == 3
    half = isolate_real_roots([-1, 2])[0]
    assert half.exact == Fraction(1, 2)


def test_constructor_checks():
    with pytest.raises(InvalidInput):
        AlgebraicReal([1, -2, 1], 0, 2)          # (x-1)^2 not squarefree
    with pytest.raises(InvalidInput):
        AlgebraicReal([-2, 0, 1], -2, 2)         # two roots inside
    with pytest.raises(InvalidInput):
        AlgebraicReal([-2, 0, 1], 2, 3)          # no sign change


def test_poly_helpers():
    p = poly_mul((-1, 1), (-2, 1))
    assert p == (2, -3, 1)
    q, r = poly_divmod(p, (-1, 1))
    assert q == (-2, 1) and not any(r)
    assert squarefree_part(poly_mul(p, (-1, 1))) == (2, -3, 1)
    assert len(poly_gcd(p, (-1, 1))) == 2
    assert count_roots(sturm_sequence(p), 0, 3) == 2


def test_enclosures_nest():
    prev = None
    for bits in (4, 16, 64, 256, 1024):
        lo, hi = BETA.refine_to(Fraction(1, 2 ** bits))
        assert hi - lo <= Fraction(1, 2 ** bits)
        if prev:
            assert prev[0] <= lo and hi <= prev[1]
        prev = (lo, hi)


def test_exact_comparisons():
    b = FieldElement.generator(BETA)
    assert (b - 3).sign() == 1
    assert (b ** 2 - 14).sign() == -1
    assert b ** 4 == 3 * b ** 3 + 2 * b ** 2 + 3
    assert b.floor() == 3
    assert (b ** 2).floor() == 13
    s = FieldElement.generator(SQRT2)
    assert s * s == 2
    assert (s - Fraction(99, 70)).sign() == -1     # convergents alternate around sqrt 2
    assert (s - Fraction(1393, 985)).sign() == 1


def test_decimal_rounding():
    s = FieldElement.generator(SQRT2)
    assert s.to_decimal(10) == "1.4142135624"
    assert (-s).to_decimal(3) == "-1.414"
    assert FieldElement.rational(SQRT2, Fraction(1, 8)).to_decimal(2) == "0.13"


@settings(max_examples=60, deadline=None)
@given(coords, coords, coords)
def test_field_axioms(a, b, c):
    x, y, z = elem(a), elem(b), elem(c)
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    if not x.is_zero():
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@settings(max_examples=60, deadline=None)
@given(coords, coords)
def test_sign_is_multiplicative(a, b):
    x, y = elem(a), elem(b)
    assert (x * y).sign() == x.sign() * y.sign()
    assert (-x).sign() == -x.sign()


@settings(max_examples=40, deadline=None)
@given(coords)
def test_sign_agrees_with_enclosure(a):
    x = elem(a)
    lo, hi = x.enclose(Fraction(1, 10 ** 20))
    assert lo <= hi
    if x.sign() > 0:
        assert hi > 0
    elif x.sign() < 0:
        assert lo < 0
    assert x.floor() <= hi and x.floor() + 1 > lo


def test_conjugate_evaluation():
    b = FieldElement.generator(BETA)
    g = evaluate_at_conjugate(b ** 2 + 1, GAMMA)
    assert g == FieldElement.generator(GAMMA) ** 2 + 1
    with pytest.raises(FieldMismatch):
        evaluate_at_conjugate(b, SQRT2)
