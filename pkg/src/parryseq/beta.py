"""Beta-expansions with exact digits, quasi-greedy expansions of 1, Parry
numbers and their canonical numeration systems, and conjugate digit sums.

Every digit is ``floor(beta * r)`` for an exact remainder ``r`` in Q(beta);
periodicity is detected by exact equality of remainders.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebraic import AlgebraicReal, FieldElement, isolate_real_roots
from .errors import InvalidInput, NotParry, OutOfRange
from .numsys import NumerationSystem, genealogical_key

DEFAULT_MAX_STEPS = 10 ** 4


def _as_element(root: AlgebraicReal, x) -> FieldElement:
    if isinstance(x, FieldElement):
        if x.root is not root and x.root.min_poly != root.min_poly:
            raise InvalidInput("x does not live in Q(beta)")
        return x if x.root is root else FieldElement(x.coeffs, root)
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, (int, Fraction)):
        return FieldElement.rational(root, x)
    return FieldElement(x, root)


def _format_digits(digits: Sequence[int]) -> str:
    if all(0 <= d < 10 for d in digits):
        return "".join(map(str, digits))
    return ".".join(map(str, digits))


class BetaExpansion:
    """The digit stream d_beta(x), computed lazily.

    Iteration is single-consumer: the stream keeps one remainder and a
    digit buffer.  :meth:`clone` snapshots the current state.
    """

    def __init__(self, beta: AlgebraicReal, x: FieldElement):
        self.beta = beta
        self.x = x
        self._b = FieldElement.generator(beta)
        self._state = x
        self._digits: list[int] = []
        self._seen = {x.coeffs: 0}
        self.periodicity = None  # (preperiod, period) once a remainder repeats

    def clone(self) -> "BetaExpansion":
        c = BetaExpansion.__new__(BetaExpansion)
        c.beta, c.x, c._b = self.beta, self.x, self._b
        c._state = self._state
        c._digits = list(self._digits)
        c._seen = dict(self._seen)
        c.periodicity = self.periodicity
        return c

    @property
    def remainder(self) -> FieldElement:
        """Remainder after the digits computed so far."""
        return self._state

    def _step(self) -> int:
        if self.periodicity is not None:
            pre, per = self.periodicity
            k = len(self._digits)
            d = self._digits[pre + (k - pre) % per]
            self._digits.append(d)
            return d
        y = self._b * self._state
        d = y.floor()
        self._state = y - d
        self._digits.append(d)
        key = self._state.coeffs
        first = self._seen.get(key)
        if first is None:
            self._seen[key] = len(self._digits)
        else:
            self.periodicity = (first, len(self._digits) - first)
            self._seen = {}
        return d

    def digits(self, k: int) -> list[int]:
        """The first k digits d_1..d_k."""
        while len(self._digits) < k:
            self._step()
        return self._digits[:k]

    def digit(self, i: int) -> int:
        """d_i, counting from 1."""
        return self.digits(i)[i - 1]

    def __iter__(self):
        i = 0
        while True:
            if i >= len(self._digits):
                self._step()
            yield self._digits[i]
            i += 1

    def find_period(self, max_steps: int = DEFAULT_MAX_STEPS):
        """Run until a remainder repeats or max_steps digits exist; returns periodicity or None."""
        while self.periodicity is None and len(self._digits) < max_steps:
            self._step()
        return self.periodicity

    @property
    def preperiod_word(self):
        if self.periodicity is None:
            return None
        return tuple(self._digits[:self.periodicity[0]])

    @property
    def period_word(self):
        if self.periodicity is None:
            return None
        pre, per = self.periodicity
        return tuple(self.digits(pre + per)[pre:])

    def is_finite(self) -> bool:
        return self.periodicity is not None and self.period_word == (0,)

    def format(self, k: int | None = None) -> str:
        """"10(2212)" when periodic, otherwise the first k digits."""
        if self.periodicity is not None:
            return _format_digits(self.preperiod_word) + "(" + _format_digits(self.period_word) + ")"
        if k is None:
            k = len(self._digits)
        return _format_digits(self.digits(k))

    def __repr__(self):
        return f"<BetaExpansion {self.format()}>"


def beta_expand(beta: AlgebraicReal, x) -> BetaExpansion:
    """The beta-expansion of x in [0, 1] (x a FieldElement, rational, or coordinate list)."""
    x = _as_element(beta, x)
    if x.sign() < 0 or (x - 1).sign() > 0:
        raise OutOfRange("x must lie in [0, 1]")
    return BetaExpansion(beta, x)


def _primitive_root(word: tuple) -> tuple:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


@dataclass
class QuasiGreedy:
    """d*_beta(1) = t_1..t_i (t_{i+1}..t_{i+p})^omega, or an unperiodized stream."""

    beta: AlgebraicReal
    preperiod_word: tuple | None
    period_word: tuple | None
    finite_d_beta_1: bool
    d_beta_1: tuple | None = None
    stream: BetaExpansion | None = None

    @property
    def is_periodic(self) -> bool:
        return self.period_word is not None

    @property
    def preperiod(self):
        return len(self.preperiod_word) if self.is_periodic else None

    @property
    def period(self):
        return len(self.period_word) if self.is_periodic else None

    def digit(self, i: int) -> int:
        """t_i, counting from 1."""
        if not self.is_periodic:
            return self.stream.digit(i)
        pre = self.preperiod_word
        if i <= len(pre):
            return pre[i - 1]
        j = (i - 1 - len(pre)) % len(self.period_word)
        return self.period_word[j]

    def prefix(self, n: int) -> tuple:
        if not self.is_periodic:
            return tuple(self.stream.digits(n))
        return tuple(self.digit(i) for i in range(1, n + 1))

    def format(self, k: int = 20) -> str:
        if self.is_periodic:
            return _format_digits(self.preperiod_word) + "(" + _format_digits(self.period_word) + ")"
        return _format_digits(self.prefix(k)) + "..."


def quasi_greedy(beta: AlgebraicReal, max_steps: int = DEFAULT_MAX_STEPS) -> QuasiGreedy:
    if (FieldElement.generator(beta) - 1).sign() <= 0:
        raise InvalidInput("beta must exceed 1")
    exp = beta_expand(beta, 1)
    per = exp.find_period(max_steps)
    if per is None:
        return QuasiGreedy(beta, None, None, False, stream=exp)
    if exp.is_finite():
        d1 = list(exp.preperiod_word)
        while d1 and d1[-1] == 0:
            d1.pop()
        word = tuple(d1[:-1]) + (d1[-1] - 1,)
        return QuasiGreedy(beta, (), _primitive_root(word), True, d_beta_1=tuple(d1))
    return QuasiGreedy(beta, exp.preperiod_word, exp.period_word, False)


@dataclass(frozen=True)
class ParryVerdict:
    parry: bool
    preperiod: int | None = None
    period: int | None = None

    def __str__(self):
        return f"parry({self.preperiod},{self.period})" if self.parry else "unknown"


def is_parry(beta: AlgebraicReal, max_steps: int = DEFAULT_MAX_STEPS) -> ParryVerdict:
    qg = quasi_greedy(beta, max_steps)
    if qg.is_periodic:
        return ParryVerdict(True, qg.preperiod, qg.period)
    return ParryVerdict(False)


def canonical_system(qg: QuasiGreedy, name: str | None = None) -> NumerationSystem:
    """The system U_n = t_1 U_{n-1} + ... + t_n U_0 + 1 as a linear recurrence.

    With T(z) = sum t_k z^k, U(z) = 1 / ((1 - z)(1 - T(z))).  For a periodic
    t the denominator becomes D(z) / (1 - z^p) with
    D = (1 - z^p)(1 - P) - z^i Q, so U = (1 + z + ... + z^(p-1)) / D and the
    terms obey the recurrence with characteristic polynomial D.
    """
    from .automata import canonical_parry_automaton

    if not qg.is_periodic:
        raise NotParry("no period found for d*_beta(1)")
    pre, per = qg.preperiod_word, qg.period_word
    i, p = len(pre), len(per)
    P = [0] + list(pre)                      # sum_{k=1}^{i} t_k z^k
    Q = [0] + list(per)                      # sum_{k=1}^{p} t_{i+k} z^k
    one_minus_P = [1 - P[0]] + [-c for c in P[1:]]
    D = [0] * (i + p + 1)
    for k, c in enumerate(one_minus_P):
        D[k] += c
        D[k + p] -= c
    for k, c in enumerate(Q):
        D[k + i] -= c
    while len(D) > 1 and D[-1] == 0:
        D.pop()
    order = len(D) - 1
    coefficients = [-c for c in D[1:]]
    terms = [1]
    for n in range(1, max(order, 1)):
        terms.append(sum(qg.digit(k) * terms[n - k] for k in range(1, n + 1)) + 1)
    return NumerationSystem.from_recurrence(coefficients, terms, name=name,
                                            language=canonical_parry_automaton(qg))


def parry_admissible(word, qg: QuasiGreedy, depth: int | None = None) -> bool:
    """Every shift of the word is lexicographically below d*_beta(1).

    A finite word w stands for w 0^omega, which makes the test exact: every
    suffix must be <= the prefix of d*_beta(1) of the same length.  For a
    stream (any non-sequence iterable) the first ``depth`` shifts are
    inspected on windows of length ``depth``.
    """
    if isinstance(word, (tuple, list, str)):
        w = tuple(int(c) for c in word)
        bound = qg.prefix(len(w))
        n = len(w)
        return all(w[k:] <= bound[:n - k] for k in range(n))
    if depth is None:
        raise InvalidInput("depth is required for digit streams")
    w = tuple(itertools.islice(iter(word), 2 * depth))
    bound = qg.prefix(depth)
    for k in range(depth):
        window = w[k:k + depth]
        if window > bound[:len(window)]:
            return False
    return True


@dataclass(frozen=True)
class LanguageCheck:
    equal: bool
    counterexample: tuple | None = None


def _ceil_root(beta: AlgebraicReal) -> int:
    b = FieldElement.generator(beta)
    f = b.floor()
    return f if (b - f).sign() == 0 else f + 1


def bertrand_language_check(beta: AlgebraicReal, system: NumerationSystem, max_len: int,
                            qg: QuasiGreedy | None = None) -> LanguageCheck:
    """Compare 0*rep_U(N) with the beta-admissible words, all words of length <= max_len."""
    if qg is None:
        qg = quasi_greedy(beta)
    size = max(_ceil_root(beta), system.digit_bound)
    best = None
    for length in range(max_len + 1):
        for w in itertools.product(range(size), repeat=length):
            in_rep = all(d < system.digit_bound for d in w) and system.is_greedy(w)
            if in_rep != parry_admissible(w, qg):
                if best is None or genealogical_key(w) < genealogical_key(best):
                    best = w
        if best is not None:
            return LanguageCheck(False, best)
    return LanguageCheck(True)


# ---------------------------------------------------------------------------
# sums over the conjugate


@dataclass(frozen=True)
class TailSum:
    """Bounds lower <= S <= upper in Q(gamma); exact when lower is upper."""

    lower: FieldElement
    upper: FieldElement

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> FieldElement:
        if not self.exact:
            raise ValueError("only bounds are known for this sum")
        return self.lower

    def interval(self, width=Fraction(1, 10 ** 12)) -> tuple[Fraction, Fraction]:
        lo = self.lower.enclose(width)[0]
        hi = self.upper.enclose(width)[1]
        return lo, hi

    def certainly_below(self, c) -> bool:
        return (self.upper - Fraction(c)).sign() < 0

    def certainly_above(self, c) -> bool:
        return (self.lower - Fraction(c)).sign() > 0


def _digit_source(digits):
    if isinstance(digits, (BetaExpansion, QuasiGreedy)):
        return lambda n: list(digits.prefix(n)) if isinstance(digits, QuasiGreedy) else digits.digits(n)
    seq = [int(d) for d in digits]

    def get(n):
        if n > len(seq):
            raise InvalidInput(f"only {len(seq)} digits supplied, index {n} needed")
        return seq[:n]
    return get


def _geometric_even_tail(gamma: AlgebraicReal, exponent: int, max_digit: int) -> FieldElement:
    """max_digit * sum_{j>=0} gamma^(-exponent-2j) = max_digit * gamma^-exponent / (1 - gamma^-2)."""
    g = FieldElement.generator(gamma)
    return max_digit * g ** (-exponent) / (1 - g ** -2)


def conjugate_tail_sum(digits, gamma: AlgebraicReal, m: int, n: int | None = None, r: int = 0,
                       convention: str = "shifted", max_digit: int = 3) -> TailSum:
    """S_{m,n} = sum_{i=m}^{n} d_i gamma^(r-i).

    Finite n gives the exact value.  For n = None (infinity) the tail is
    bounded by keeping only terms of one sign and taking d_i <= max_digit.
    With gamma < 0 the term for index i is positive iff i - r is even:
    ``convention="shifted"`` uses exactly that, which is a valid bound.
    ``convention="unshifted"`` picks the even *indices* i and drops r from
    the exponent, the cruder estimate giving 3 gamma^-4 / (1 - gamma^-2)
    for m = 4; it is kept to regenerate those printed constants and is not
    a certified bound when r is odd or nonzero.
    """
    g = FieldElement.generator(gamma)
    if n is not None:
        ds = _digit_source(digits)(n)
        total = FieldElement.rational(gamma, 0)
        for i in range(m, n + 1):
            d = ds[i - 1]
            if d:
                total = total + d * g ** (r - i)
        return TailSum(total, total)
    if (g.sign() >= 0):
        raise InvalidInput("tail bounds assume a negative conjugate")
    if convention == "shifted":
        e_pos = m if (m - r) % 2 == 0 else m + 1     # least i >= m with i - r even
        e_neg = m if (m - r) % 2 == 1 else m + 1
        upper = _geometric_even_tail(gamma, e_pos - r, max_digit)
        lower = _geometric_even_tail(gamma, e_neg - r, max_digit)
    elif convention == "unshifted":
        e_pos = m if m % 2 == 0 else m + 1
        e_neg = m if m % 2 == 1 else m + 1
        upper = _geometric_even_tail(gamma, e_pos, max_digit)
        lower = _geometric_even_tail(gamma, e_neg, max_digit)
    else:
        raise InvalidInput(f"unknown convention {convention!r}")
    return TailSum(lower, upper)


def certified_tail_sum(digits, gamma: AlgebraicReal, m: int, depth: int, r: int = 0,
                       max_digit: int = 3) -> TailSum:
    """Bounds on S_{m,infinity} using the actual digits up to index ``depth``."""
    if depth < m:
        return conjugate_tail_sum(digits, gamma, m, None, r, "shifted", max_digit)
    head = conjugate_tail_sum(digits, gamma, m, depth, r).value
    tail = conjugate_tail_sum(digits, gamma, depth + 1, None, r, "shifted", max_digit)
    return TailSum(head + tail.lower, head + tail.upper)


# ---------------------------------------------------------------------------
# named numbers


def golden_mean() -> AlgebraicReal:
    return isolate_real_roots([-1, -1, 1])[-1]


def integer_base(k: int) -> AlgebraicReal:
    return isolate_real_roots([-k, 1])[0]


QUARTIC = (-3, 0, -2, -3, 1)  # X^4 - 3X^3 - 2X^2 - 3


def quartic_roots() -> tuple[AlgebraicReal, AlgebraicReal]:
    """(beta, gamma): the two real roots of X^4 - 3X^3 - 2X^2 - 3."""
    gamma, beta = isolate_real_roots(QUARTIC)
    return beta, gamma


def dominant_root(coefficients: Iterable[int]) -> AlgebraicReal:
    """Largest real root of X^k - c_1 X^(k-1) - ... - c_k."""
    c = list(coefficients)
    poly = [-x for x in reversed(c)] + [1]
    return isolate_real_roots(poly)[-1]
