"""Positional numeration systems: greedy representations and valuations.

A :class:`NumerationSystem` is an increasing integer sequence ``U_0 = 1 <
U_1 < ...`` given either by a linear recurrence (optionally with an affine
constant) or by a finite list of explicit terms.  Digit words are tuples of
ints, most significant digit first; the empty tuple is the representation
of 0.

Thread safety: the term cache only ever grows.  Extension happens under an
internal lock and readers only look at indices that are already
materialized, so one system may be shared between threads.
"""

from __future__ import annotations

import bisect
import threading
from typing import Iterable, Sequence

from .errors import InvalidSystem, UnboundedRatio

PROBE_MIN = 64


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


class NumerationSystem:
    """An increasing sequence of integers used as place values.

    Build instances with :meth:`from_recurrence` or :meth:`from_terms`.
    """

    def __init__(self, *, coefficients=None, affine_constant=0, initial_terms=(1,),
                 digit_bound=None, name=None, language=None, finite=False):
        initial = [int(t) for t in initial_terms]
        if not initial:
            raise InvalidSystem("at least one initial term is required")
        if initial[0] != 1:
            raise InvalidSystem("U_0 must be 1")
        for a, b in zip(initial, initial[1:]):
            if b <= a:
                raise InvalidSystem(f"terms must increase strictly: {a} then {b}")
        self.coefficients = tuple(int(c) for c in coefficients) if coefficients is not None else None
        self.affine_constant = int(affine_constant)
        self.initial_terms = tuple(initial)
        self.name = name
        # optional Dfa for 0*rep_U(N), attached by constructors that know it exactly
        self.language = language
        self._finite = finite or self.coefficients is None
        self._terms = list(initial)
        self._lock = threading.Lock()
        if self.coefficients is not None and len(self.coefficients) > len(initial):
            raise InvalidSystem(
                f"recurrence of order {len(self.coefficients)} needs that many initial terms")
        if self._finite:
            computed = self._ratio_bound(len(self._terms) - 1)
        else:
            window = max(PROBE_MIN, 4 * len(self.coefficients))
            computed = self._ratio_bound(window)
            later = self._ratio_bound(2 * window)
            if later > computed:
                raise UnboundedRatio(
                    f"ceil(U_(n+1)/U_n) still growing: {computed} over {window} terms, {later} over {2 * window}")
        if digit_bound is None:
            self.digit_bound = computed
        else:
            if int(digit_bound) < computed:
                raise InvalidSystem(f"digit_bound {digit_bound} below observed ratio bound {computed}")
            self.digit_bound = int(digit_bound)

    # -- construction -------------------------------------------------

    @classmethod
    def from_recurrence(cls, coefficients: Sequence[int], initial_terms: Sequence[int],
                        affine_constant: int = 0, **kw) -> "NumerationSystem":
        """``U_n = c_1 U_{n-1} + ... + c_k U_{n-k} + affine_constant`` past the initial terms."""
        if not coefficients:
            raise InvalidSystem("empty recurrence")
        return cls(coefficients=coefficients, initial_terms=initial_terms,
                   affine_constant=affine_constant, **kw)

    @classmethod
    def from_terms(cls, terms: Sequence[int], digit_bound=None, **kw) -> "NumerationSystem":
        """A system with finitely many explicit terms; rep() fails past the last one."""
        return cls(initial_terms=terms, digit_bound=digit_bound, finite=True, **kw)

    # -- terms ----------------------------------------------------------

    def _extend_to(self, n: int) -> None:
        if n < len(self._terms):
            return
        if self._finite:
            raise IndexError(f"system only has {len(self._terms)} explicit terms")
        with self._lock:
            terms = self._terms
            coeffs = self.coefficients
            while len(terms) <= n:
                nxt = self.affine_constant
                for i, c in enumerate(coeffs, start=1):
                    nxt += c * terms[-i]
                if nxt <= terms[-1]:
                    raise InvalidSystem(f"recurrence stops increasing at index {len(terms)}")
                terms.append(nxt)

    def term(self, n: int) -> int:
        self._extend_to(n)
        return self._terms[n]

    def terms(self, count: int) -> list[int]:
        """The first ``count`` terms."""
        if count > 0:
            self._extend_to(count - 1)
        return self._terms[:count]

    def _ratio_bound(self, upto: int) -> int:
        if upto <= 0:
            return 1
        self._extend_to(upto)
        t = self._terms
        return max(_ceil_div(t[i + 1], t[i]) for i in range(upto))

    @property
    def alphabet(self) -> tuple[int, ...]:
        return tuple(range(self.digit_bound))

    @property
    def order(self) -> int:
        return len(self.coefficients) if self.coefficients else 0

    def _length_for(self, n: int) -> int:
        """Number of digits of rep(n): the least l with n < U_l."""
        if n <= 0:
            return 0
        while self._terms[-1] <= n:
            self._extend_to(len(self._terms) + 8)
        return bisect.bisect_right(self._terms, n)

    # -- representations ------------------------------------------------

    def rep(self, n: int) -> tuple[int, ...]:
        """Greedy representation of ``n``, most significant digit first."""
        if n < 0:
            raise ValueError("only non-negative integers have representations")
        length = self._length_for(n)
        digits = []
        terms = self._terms
        for i in range(length - 1, -1, -1):
            d, n = divmod(n, terms[i])
            digits.append(d)
        return tuple(digits)

    def val(self, word: Iterable[int]) -> int:
        word = tuple(word)
        if not word:
            return 0
        self._extend_to(len(word) - 1)
        terms = self._terms
        ell = len(word)
        return sum(d * terms[ell - 1 - i] for i, d in enumerate(word))

    def is_greedy(self, word: Sequence[int]) -> bool:
        """True iff ``word`` (leading zeroes allowed) is a zero-padded greedy representation."""
        word = tuple(word)
        i = 0
        while i < len(word) and word[i] == 0:
            i += 1
        stripped = word[i:]
        return self.rep(self.val(stripped)) == stripped

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        if self._finite:
            return {"terms": list(self._terms), "digit_bound": self.digit_bound}
        return {
            "coefficients": list(self.coefficients),
            "affine_constant": self.affine_constant,
            "initial_terms": list(self.initial_terms),
            "digit_bound": self.digit_bound,
        }

    @classmethod
    def from_json(cls, data: dict) -> "NumerationSystem":
        if "terms" in data:
            return cls.from_terms(data["terms"], digit_bound=data.get("digit_bound"))
        try:
            coeffs = data["coefficients"]
            initial = data["initial_terms"]
        except KeyError as exc:
            raise InvalidSystem(f"missing field {exc}") from None
        return cls.from_recurrence(coeffs, initial, data.get("affine_constant", 0),
                                   digit_bound=data.get("digit_bound"))

    def __repr__(self):
        label = self.name or "U"
        head = ", ".join(str(t) for t in self._terms[:6])
        return f"<NumerationSystem {label}: {head}, ...; C_U={self.digit_bound}>"


def genealogical_cmp(a: Sequence[int], b: Sequence[int]) -> int:
    """-1, 0 or 1: shorter words first, then lexicographic on digits."""
    ka = (len(a), tuple(a))
    kb = (len(b), tuple(b))
    return (ka > kb) - (ka < kb)


def genealogical_key(word: Sequence[int]):
    return (len(word), tuple(word))


def format_word(word: Sequence[int]) -> str:
    """Render a digit word; the empty word prints as ``eps``."""
    if not word:
        return "eps"
    if all(0 <= d < 10 for d in word):
        return "".join(str(d) for d in word)
    return ".".join(str(d) for d in word)


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "eps", "ε"):
        return ()
    if "." in text or "," in text:
        return tuple(int(p) for p in text.replace(",", ".").split("."))
    if not text.isdigit():
        raise ValueError(f"not a digit word: {text!r}")
    return tuple(int(c) for c in text)


def fibonacci() -> NumerationSystem:
    return NumerationSystem.from_recurrence([1, 1], [1, 2], name="fibonacci")


def modified_fibonacci() -> NumerationSystem:
    return NumerationSystem.from_recurrence([1, 1], [1, 3], name="modified-fibonacci")


def base(k: int) -> NumerationSystem:
    if k < 2:
        raise InvalidSystem("base must be at least 2")
    return NumerationSystem.from_recurrence([k], [1], name=f"base-{k}")


def affine_three() -> NumerationSystem:
    """``B_n = 3 B_{n-1} + 1``: Bertrand but not Parry."""
    return NumerationSystem.from_recurrence([3], [1], affine_constant=1, name="example-2.3")


def quartic() -> NumerationSystem:
    """``U_n = 3U_{n-1} + 2U_{n-2} + 3U_{n-4}`` from 1, 4, 15, 54: Parry, not Pisot."""
    return NumerationSystem.from_recurrence([3, 2, 0, 3], [1, 4, 15, 54], name="eq-4.1")
