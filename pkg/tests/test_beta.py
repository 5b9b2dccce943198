from fractions import Fraction

import pytest

from parryseq import numsys
from parryseq.algebraic import FieldElement, isolate_real_roots
from parryseq.automata import equivalent, numeration_automaton
from parryseq.beta import (beta_expand, bertrand_language_check, canonical_system,
                           certified_tail_sum, conjugate_tail_sum, dominant_root, golden_mean,
                           integer_base, is_parry, parry_admissible, quartic_roots, quasi_greedy)
from parryseq.errors import InvalidInput, NotParry, OutOfRange

BETA, GAMMA = quartic_roots()


def test_integer_base_digits():
    ten = integer_base(10)
    assert beta_expand(ten, Fraction(1, 8)).digits(4) == [1, 2, 5, 0]
    e = beta_expand(ten, Fraction(1, 3))
    assert e.find_period(20) == (0, 1)
    assert e.format() == "(3)"


def test_golden_mean():
    phi = golden_mean()
    e = beta_expand(phi, 1)
    e.find_period(10)
    assert e.format() == "11(0)"
    qg = quasi_greedy(phi)
    assert qg.format() == "(10)"
    assert canonical_system(qg).terms(8) == numsys.fibonacci().terms(8)


def test_quartic_expansions():
    e = beta_expand(BETA, 1)
    e.find_period(20)
    assert e.format() == "3203(0)"
    third = beta_expand(BETA, Fraction(1, 3))
    third.find_period(20)
    assert third.format() == "10(2212)"
    assert third.digit(1) == 1 and third.digit(3) == 2


def test_expansion_sums_back_to_x():
    b = FieldElement.generator(BETA)
    for x in (Fraction(1, 2), Fraction(2, 7), 4 / b ** 2):
        x = x if isinstance(x, FieldElement) else FieldElement.rational(BETA, x)
        d = beta_expand(BETA, x).digits(30)
        partial = sum((di * b ** -i for i, di in enumerate(d, start=1)), FieldElement.rational(BETA, 0))
        rest = x - partial
        assert rest.sign() >= 0
        assert (rest - b ** -30).sign() < 0


def test_expansion_is_admissible():
    qg = quasi_greedy(BETA)
    d = beta_expand(BETA, Fraction(1, 2)).digits(200)
    assert parry_admissible(tuple(d), qg)


def test_out_of_range():
    with pytest.raises(OutOfRange):
        beta_expand(BETA, Fraction(3, 2))
    with pytest.raises(OutOfRange):
        beta_expand(BETA, -1)


def test_quasi_greedy_and_canonical_system():
    qg = quasi_greedy(BETA)
    assert qg.preperiod_word == () and qg.period_word == (3, 2, 0, 2)
    U = canonical_system(qg)
    assert U.terms(8) == numsys.quartic().terms(8)
    assert U.coefficients == (3, 2, 0, 3)
    assert str(is_parry(BETA)) == "parry(0,4)"
    base3 = canonical_system(quasi_greedy(integer_base(3)))
    assert base3.terms(4) == [1, 3, 9, 27]


def test_non_parry_like_input():
    with pytest.raises(InvalidInput):
        quasi_greedy(isolate_real_roots([-1, 2])[0])   # 1/2 < 1
    from parryseq.beta import QuasiGreedy
    qg = QuasiGreedy(BETA, None, None, False, stream=beta_expand(BETA, 1))
    with pytest.raises(NotParry):
        canonical_system(qg)


def test_dominant_root_tribonacci():
    t = dominant_root([1, 1, 1])
    assert abs(float(t) - 1.839286755214161) < 1e-12
    assert is_parry(t).parry


def test_parry_admissible_words():
    qg = quasi_greedy(golden_mean())
    assert not parry_admissible((1, 1), qg)
    assert parry_admissible((1, 0, 1, 0), qg)


def test_bertrand_language_check():
    assert bertrand_language_check(golden_mean(), numsys.fibonacci(), 10).equal
    bad = bertrand_language_check(golden_mean(), numsys.modified_fibonacci(), 4)
    assert not bad.equal and bad.counterexample == (2,)
    assert bertrand_language_check(BETA, numsys.quartic(), 8).equal


def test_canonical_language_matches_inferred():
    U = canonical_system(quasi_greedy(BETA))
    assert equivalent(U.language, numeration_automaton(numsys.quartic())).equal


def test_conjugate_sums():
    d = beta_expand(BETA, Fraction(1, 2)).digits(21)
    s = conjugate_tail_sum(d, GAMMA, 1, 21)
    assert s.exact and abs(float(s.value) + 2.2038) < 1e-4
    with pytest.raises(ValueError):
        conjugate_tail_sum(d, GAMMA, 22, None).value
    with pytest.raises(InvalidInput):
        conjugate_tail_sum(d, GAMMA, 1, 30)


def test_tail_conventions():
    z = [0]
    shifted = conjugate_tail_sum(z, GAMMA, 4, None, r=3)
    unshifted = conjugate_tail_sum(z, GAMMA, 4, None, r=3, convention="unshifted")
    assert abs(float(shifted.upper) - 14.773) < 1e-3
    assert abs(float(unshifted.upper) - 12.2794) < 1e-3
    with pytest.raises(InvalidInput):
        conjugate_tail_sum(z, GAMMA, 4, None, convention="bogus")


def test_shifted_bound_holds_for_actual_digits():
    b = FieldElement.generator(BETA)
    for r, ts in ((2, range(4, 14)), (3, range(14, 48))):
        for t in ts:
            e = beta_expand(BETA, t / b ** r)
            bound = conjugate_tail_sum(e, GAMMA, r + 1, None, r=r)
            cert = certified_tail_sum(e, GAMMA, r + 1, 80, r=r)
            assert (cert.upper - bound.upper).sign() <= 0
            assert (cert.lower - bound.lower).sign() >= 0
