"""Values cross-checked against computations that share no code with the package:
high-precision floats from mpmath, sympy root finding, plain integer greedy digits."""

from fractions import Fraction

import mpmath as mp
import pytest
import sympy

from parryseq import experiments, numsys
from parryseq.algebraic import FieldElement
from parryseq.beta import beta_expand, conjugate_tail_sum, quartic_roots
from parryseq.numsys import format_word

mp.mp.dps = 300
BETA = mp.findroot(lambda x: x ** 4 - 3 * x ** 3 - 2 * x ** 2 - 3, 3.6)
GAMMA = mp.findroot(lambda x: x ** 4 - 3 * x ** 3 - 2 * x ** 2 - 3, -1.1)
GOLD = experiments.golden()


def float_digits(x, k):
    out = []
    for _ in range(k):
        x *= BETA
        d = int(mp.floor(x))
        out.append(d)
        x -= d
    return out


def plain_terms(count):
    U = [1, 4, 15, 54]
    while len(U) < count:
        U.append(3 * U[-1] + 2 * U[-2] + 3 * U[-4])
    return U


def plain_rep(n, U):
    L = 0
    while L < len(U) and U[L] <= n:
        L += 1
    out = []
    for i in range(L - 1, -1, -1):
        d, n = divmod(n, U[i])
        out.append(d)
    return out


@pytest.fixture(scope="module")
def roots():
    return quartic_roots()


def test_sympy_agrees_on_real_roots(roots):
    X = sympy.Symbol("X")
    real = sorted(sympy.Poly(X ** 4 - 3 * X ** 3 - 2 * X ** 2 - 3).real_roots())
    assert len(real) == 2
    beta, gamma = roots
    for ours, theirs in ((beta, real[1]), (gamma, real[0])):
        lo, hi = FieldElement.generator(ours).enclose(Fraction(1, 10 ** 40))
        val = sympy.Rational(sympy.N(theirs, 60))
        assert lo - Fraction(1, 10 ** 50) <= Fraction(int(val.p), int(val.q)) <= hi + Fraction(1, 10 ** 50)


@pytest.mark.parametrize("x, k", [(Fraction(1, 2), 60), (Fraction(1, 3), 40), (Fraction(7, 10), 50)])
def test_digits_match_float_oracle(roots, x, k):
    beta, _ = roots
    want = float_digits(mp.mpf(x.numerator) / x.denominator, k)
    assert beta_expand(beta, x).digits(k) == want


def test_digits_of_t_over_beta_powers(roots):
    beta, _ = roots
    B = FieldElement.generator(beta)
    for r, ts in ((2, range(4, 14)), (3, range(14, 48))):
        for t in ts:
            assert beta_expand(beta, t / B ** r).digits(12) == float_digits(t / BETA ** r, 12)


def test_gap_values_match_float_oracle(roots):
    beta, gamma = roots
    B = FieldElement.generator(beta)
    for t in range(14, 48):
        d = float_digits(t / BETA ** 3, 3)
        oracle = t - sum(di * GAMMA ** (3 - i) for i, di in enumerate(d, start=1))
        ours = t - conjugate_tail_sum(beta_expand(beta, t / B ** 3).digits(3), gamma, 1, 3, r=3).value
        assert abs(float(ours) - float(oracle)) < 1e-12
        assert ours.to_decimal(3) == mp.nstr(oracle, 5, min_fixed=-1, max_fixed=10)[: len(ours.to_decimal(3))]


def test_head_sum_for_half(roots):
    _, gamma = roots
    d = float_digits(mp.mpf(1) / 2, 21)
    oracle = sum(di * GAMMA ** (-i) for i, di in enumerate(d, start=1))
    ours = conjugate_tail_sum(d, gamma, 1, 21).value
    assert abs(float(ours) - float(oracle)) < 1e-12
    assert oracle < mp.mpf("-2.20")


def test_tail_constants_float_oracle(roots):
    _, gamma = roots
    assert 3 * GAMMA ** -2 / (1 - GAMMA ** -2) < 15
    assert 3 * GAMMA ** -4 / (1 - GAMMA ** -2) < mp.mpf("12.28")
    assert 3 * GAMMA ** -22 / (1 - GAMMA ** -2) < mp.mpf("2.33")
    zeros = [0] * 3
    ours = conjugate_tail_sum(zeros, gamma, 4, None, r=3, convention="unshifted").upper
    assert abs(float(ours) - float(3 * GAMMA ** -4 / (1 - GAMMA ** -2))) < 1e-12


def test_prefix_convergence_oracle(roots):
    U = plain_terms(80)
    target = float_digits(4 / BETA ** 2, 10)
    half = float_digits(mp.mpf(1) / 2, 10)

    def n0(words, tgt):
        res = []
        for k in range(1, 11):
            first = None
            for n in range(len(words) - 1, -1, -1):
                if words[n][:k] == tgt[:k]:
                    first = n
                else:
                    break
            res.append(first)
        return res

    assert n0([plain_rep(4 * U[n], U) for n in range(61)], target) == GOLD["prefix-convergence"]["n0"]
    assert n0([plain_rep(U[n] // 2, U) for n in range(61)], half) == GOLD["half-prefix-convergence"]["n0"]


def test_greedy_reps_match_plain_oracle():
    U = plain_terms(40)
    system = numsys.quartic()
    for n in list(range(2000)) + [4 * U[k] for k in range(30)] + [U[k] // 3 for k in range(2, 30)]:
        assert list(system.rep(n)) == plain_rep(n, U)


def test_table_rows_against_plain_oracle():
    """Printed rows split into rep(4U_n) and rep(4U_n - 1)."""
    U = plain_terms(12)
    rows = GOLD["table1"]["rows"]
    exact = [n for n in range(10) if "".join(map(str, plain_rep(4 * U[n], U))) == rows[n]]
    off_by_one = [n for n in range(10) if "".join(map(str, plain_rep(4 * U[n] - 1, U))) == rows[n]]
    assert exact == [0, 1, 5, 7, 9]
    assert off_by_one == [2, 3, 4, 6, 8]
    assert format_word(numsys.quartic().rep(4 * U[2])) == "1012"
