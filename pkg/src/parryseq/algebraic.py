"""Exact arithmetic in Q(beta) for a real algebraic number beta.

A real root is held as an :class:`AlgebraicReal`: a squarefree integer
polynomial plus a rational isolating interval.  Elements of Q(beta) are
:class:`FieldElement` objects, polynomials in beta of degree below the
degree of the defining polynomial with rational coefficients.

Signs are exact.  Interval evaluation over a dyadic enclosure of beta
decides every nonzero element once the enclosure is tight enough; zero is
certified separately through a polynomial gcd, never by intervals.

Polynomials are tuples of coefficients, constant term first.

Thread safety: elements are immutable.  The enclosure cache of an
:class:`AlgebraicReal` is extended under a lock, so roots can be shared.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Sequence

from .errors import FieldMismatch, InvalidInput

# ---------------------------------------------------------------------------
# polynomials over Q


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_add(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n))


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_divmod(a, b):
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(x) for x in _trim(a)]
    lead = Fraction(b[-1])
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        a = list(_trim(a))
    return _trim(q), _trim(a)


def poly_rem(a, b):
    return poly_divmod(a, b)[1]


def poly_monic(p):
    p = _trim(p)
    if not p:
        return p
    lead = Fraction(p[-1])
    return tuple(Fraction(x) / lead for x in p)


def poly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_rem(a, b)
    return poly_monic(a)


def poly_xgcd(a, b):
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    if not r0:
        return (), s0, t0
    lead = Fraction(r0[-1])
    return (tuple(x / lead for x in r0), tuple(x / lead for x in s0), tuple(x / lead for x in t0))


def poly_derivative(p):
    return _trim(i * c for i, c in enumerate(p) if i > 0)


def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_degree(p) -> int:
    return len(_trim(p)) - 1


def primitive_integer(p) -> tuple[int, ...]:
    """Scale a rational polynomial to coprime integer coefficients, positive leading term."""
    p = _trim(Fraction(x) for x in p)
    if not p:
        return ()
    den = 1
    for c in p:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = _gcd(g, abs(c))
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def squarefree_part(p) -> tuple[int, ...]:
    p = primitive_integer(p)
    if len(p) <= 2:
        return p
    g = poly_gcd(p, poly_derivative(p))
    if len(g) <= 1:
        return p
    return primitive_integer(poly_divmod(p, g)[0])


def sturm_sequence(p):
    p = _trim(Fraction(x) for x in p)
    seq = [p, poly_derivative(p)]
    while seq[-1] and len(seq[-1]) > 1:
        r = poly_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(tuple(-x for x in r))
    return [s for s in seq if s]


def _variations(seq, x) -> int:
    signs = []
    for s in seq:
        v = poly_eval(s, x)
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(sturm, a, b) -> int:
    """Number of distinct real roots in the half-open interval (a, b]."""
    return _variations(sturm, a) - _variations(sturm, b)


def _cauchy_bound(p) -> Fraction:
    lead = abs(Fraction(p[-1]))
    m = max(abs(Fraction(c)) for c in p[:-1]) if len(p) > 1 else Fraction(0)
    bound = 1 + m / lead
    k = 1
    while k < bound:
        k *= 2
    return Fraction(k)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# real algebraic numbers


class AlgebraicReal:
    """A real root of a squarefree integer polynomial, fixed by an isolating interval.

    The interval is either open, ``min_poly(lo)`` and ``min_poly(hi)`` of
    opposite signs with exactly one root between them, or degenerate
    (``lo == hi``) for an exact rational root.
    """

    def __init__(self, poly: Sequence[int], lo, hi):
        p = primitive_integer(poly)
        if len(p) < 2:
            raise InvalidInput("polynomial must have positive degree")
        if squarefree_part(p) != p:
            raise InvalidInput("defining polynomial must be squarefree")
        lo, hi = Fraction(lo), Fraction(hi)
        if len(p) == 2:
            lo = hi = Fraction(-p[0], p[1])
        self.min_poly = p
        self._sturm = sturm_sequence(p)
        if lo == hi:
            if poly_eval(p, lo) != 0:
                raise InvalidInput(f"{lo} is not a root")
        else:
            if lo > hi:
                raise InvalidInput("empty interval")
            flo, fhi = poly_eval(p, lo), poly_eval(p, hi)
            if flo == 0 or fhi == 0 or _sgn(flo) == _sgn(fhi):
                raise InvalidInput("interval endpoints must have opposite signs")
            if count_roots(self._sturm, lo, hi) != 1:
                raise InvalidInput("interval does not isolate a single root")
        self.lo, self.hi = lo, hi
        self._lock = threading.Lock()
        self._enc = None  # (L, P): the root lies in [L, L+1] / 2**P

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    @property
    def exact(self):
        return self.lo if self.lo == self.hi else None

    def __repr__(self):
        return f"AlgebraicReal(poly={list(self.min_poly)}, ~{float(self):.12g})"

    def __float__(self):
        if self.exact is not None:
            return float(self.exact)
        L = self.enclosure(64)
        return (L + 0.5) / 2.0 ** 64

    def same_polynomial(self, other: "AlgebraicReal") -> bool:
        return self.min_poly == other.min_poly

    # -- dyadic enclosures ---------------------------------------------

    def _certify(self, L: int, P: int) -> bool:
        a = max(self.lo, Fraction(L, 1 << P))
        b = min(self.hi, Fraction(L + 1, 1 << P))
        if a >= b:
            return False
        fa, fb = poly_eval(self.min_poly, a), poly_eval(self.min_poly, b)
        return fa != 0 and fb != 0 and _sgn(fa) != _sgn(fb)

    def _bisect_from(self, L: int, P: int, target: int) -> int:
        while P < target:
            L, P = 2 * L, P + 1
            if not self._certify(L, P):
                L += 1
        return L

    def _initial_enclosure(self, P: int = 64) -> int:
        a, b = self.lo, self.hi
        p = self.min_poly
        sa = _sgn(poly_eval(p, a))
        eps = Fraction(1, 1 << P)
        while b - a > eps:
            m = (a + b) / 2
            sm = _sgn(poly_eval(p, m))
            if sm == 0:
                # the root is rational after all: collapse to it
                self.lo = self.hi = m
                return (m.numerator << P) // m.denominator
            if sm == sa:
                a = m
            else:
                b = m
        L = (a.numerator << P) // a.denominator
        for cand in (L, L + 1, L - 1):
            if self._certify(cand, P):
                return cand
        raise AssertionError("initial enclosure failed")  # pragma: no cover

    def _newton(self, L: int, P: int, target: int) -> int:
        p = self.min_poly
        d = len(p) - 1
        dp = [i * c for i, c in enumerate(p)]
        X, prec = 2 * L + 1, P + 1
        while prec < target:
            new = min(2 * prec, target)
            X <<= new - prec
            prec = new
            for _ in range(2):
                ps = sum(c * X ** i << (prec * (d - i)) for i, c in enumerate(p))
                dps = sum(dp[i] * X ** (i - 1) << (prec * (d - i)) for i in range(1, d + 1))
                if dps == 0:
                    break
                X -= (2 * ps + dps) // (2 * dps) if dps > 0 else -((-2 * ps - dps) // (2 * dps))
        X >>= prec - target if prec > target else 0
        for cand in (X, X - 1, X + 1, X - 2, X + 2):
            if self._certify(cand, target):
                return cand
        return self._bisect_from(L, P, target)

    def enclosure(self, P: int) -> int:
        """L such that the root lies in [L, L+1] / 2**P."""
        if self.exact is not None:
            r = self.exact
            return (r.numerator << P) // r.denominator
        enc = self._enc
        if enc is not None and enc[1] >= P:
            return enc[0] >> (enc[1] - P)
        with self._lock:
            enc = self._enc
            if enc is None:
                base_P = 64
                enc = (self._initial_enclosure(base_P), base_P)
                self._enc = enc
            if enc[1] >= P:
                return enc[0] >> (enc[1] - P)
            L = self._newton(enc[0], enc[1], P)
            self._enc = (L, P)
            return L

    def refine_to(self, width) -> tuple[Fraction, Fraction]:
        """Rational interval of width <= ``width`` containing the root, nested in earlier ones."""
        width = Fraction(width)
        if width <= 0:
            raise InvalidInput("width must be positive")
        if self.exact is not None:
            return self.exact, self.exact
        P = 1
        while Fraction(1, 1 << P) > width:
            P += 1
        L = self.enclosure(P)
        return max(self.lo, Fraction(L, 1 << P)), min(self.hi, Fraction(L + 1, 1 << P))

    def interval(self) -> tuple[Fraction, Fraction]:
        if self.exact is not None:
            return self.exact, self.exact
        enc = self._enc
        if enc is None:
            return self.lo, self.hi
        L, P = enc
        return max(self.lo, Fraction(L, 1 << P)), min(self.hi, Fraction(L + 1, 1 << P))

    # -- exact evaluation of integer polynomials at the root ----------------

    def _bounds(self, nums: Sequence[int], P: int):
        """Integer bounds [low, high] on sum nums[i] * root**i, scaled by 2**(P*D)."""
        D = len(nums) - 1
        L = self.enclosure(P)
        if L >= 0:
            a, b, neg = L, L + 1, False
        elif L + 1 <= 0:
            a, b, neg = -(L + 1), -L, True
        else:
            return None
        low = high = 0
        pa = pb = 1
        for i, n in enumerate(nums):
            if i:
                pa *= a
                pb *= b
            if n:
                scale = P * (D - i)
                lo_i, hi_i = pa << scale, pb << scale
                if neg and i % 2:
                    lo_i, hi_i = -hi_i, -lo_i
                if n > 0:
                    low += n * lo_i
                    high += n * hi_i
                else:
                    low += n * hi_i
                    high += n * lo_i
        return low, high, P * D

    def _is_root_of(self, nums: Sequence[int]) -> bool:
        g = poly_gcd(nums, self.min_poly)
        if len(g) < 2:
            return False
        return count_roots(sturm_sequence(g), self.lo, self.hi) >= 1

    def _start_precision(self, nums: Sequence[int]) -> int:
        bits = max((abs(n).bit_length() for n in nums), default=0)
        enc = self._enc
        cached = enc[1] if enc else 0
        return max(64, bits + 32, min(cached, bits + 64))

    def sign_int(self, nums: Sequence[int]) -> int:
        """Exact sign of sum nums[i] * root**i for integers nums."""
        nums = list(nums)
        while nums and nums[-1] == 0:
            nums.pop()
        if not nums:
            return 0
        if self.exact is not None:
            return _sgn(poly_eval(nums, self.exact))
        P = self._start_precision(nums)
        checked_zero = False
        while True:
            bounds = self._bounds(nums, P)
            if bounds is not None:
                low, high, _ = bounds
                if low > 0:
                    return 1
                if high < 0:
                    return -1
            if not checked_zero:
                if self._is_root_of(nums):
                    return 0
                checked_zero = True
            P *= 2

    def floor_int(self, nums: Sequence[int], den: int = 1) -> int:
        """Exact floor of (sum nums[i] * root**i) / den, with den > 0."""
        nums = list(nums) or [0]
        if self.exact is not None:
            v = poly_eval(nums, self.exact) / den
            return v.numerator // v.denominator
        P = self._start_precision(nums)
        while True:
            bounds = self._bounds(nums, P)
            if bounds is not None:
                low, high, shift = bounds
                scale = den << shift
                fl, fh = low // scale, high // scale
                if fl == fh:
                    return fl
                if fh - fl == 1:
                    shifted = list(nums)
                    shifted[0] -= fh * den
                    return fh if self.sign_int(shifted) >= 0 else fh - 1
            P *= 2


def isolate_real_roots(poly: Sequence[int]) -> list[AlgebraicReal]:
    """All real roots of ``poly`` in increasing order, each with an isolating interval."""
    p = _trim(poly)
    if not p:
        raise InvalidInput("zero polynomial")
    p = squarefree_part(p)
    if len(p) < 2:
        return []
    sturm = sturm_sequence(p)
    B = _cauchy_bound(p)
    found = []
    stack = [(-B, B)]
    while stack:
        a, b = stack.pop()
        n = count_roots(sturm, a, b)
        if n == 0:
            continue
        if n == 1 and poly_eval(p, a) != 0:
            if poly_eval(p, b) == 0:
                found.append((b, b))
            else:
                found.append((a, b))
            continue
        m = (a + b) / 2
        stack.append((a, m))
        stack.append((m, b))
    roots = []
    for a, b in sorted(found):
        if a != b:
            # shrink away from a neighbouring root sitting on the left endpoint
            while poly_eval(p, a) == 0:
                m = (a + b) / 2
                if poly_eval(p, m) == 0:
                    a = b = m
                    break
                if count_roots(sturm, m, b) == 1:
                    a = m
                else:
                    b = m
        roots.append(AlgebraicReal(p, a, b))
    return roots


def refine_to(x: AlgebraicReal, width) -> tuple[Fraction, Fraction]:
    return x.refine_to(width)


def largest_real_root(poly: Sequence[int]) -> AlgebraicReal:
    roots = isolate_real_roots(poly)
    if not roots:
        raise InvalidInput("polynomial has no real root")
    return roots[-1]


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_interval(lo, hi) -> str:
    return f"[{format_fraction(lo)}, {format_fraction(hi)}]"


# ---------------------------------------------------------------------------
# the field Q(root)


class FieldElement:
    """An element sum coeffs[i] * root**i of Q(root), reduced modulo the minimal polynomial."""

    __slots__ = ("coeffs", "root")

    def __init__(self, coeffs, root: AlgebraicReal):
        c = _trim(Fraction(x) for x in coeffs)
        if len(c) > root.degree:
            c = poly_rem(c, root.min_poly)
        c = tuple(c) + (Fraction(0),) * (root.degree - len(c))
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "root", root)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @classmethod
    def rational(cls, root: AlgebraicReal, q) -> "FieldElement":
        return cls((Fraction(q),), root)

    @classmethod
    def generator(cls, root: AlgebraicReal) -> "FieldElement":
        return cls((0, 1), root)

    # -- coercion --------------------------------------------------------

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.root is not self.root and not self.root.same_polynomial(other.root):
                raise FieldMismatch("elements of different fields")
            if other.root is not self.root and (self.root.lo, self.root.hi) != (other.root.lo, other.root.hi):
                if not _same_root(self.root, other.root):
                    raise FieldMismatch("elements over different conjugates")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement.rational(self.root, other)
        return NotImplemented

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement([a + b for a, b in zip(self.coeffs, o.coeffs)], self.root)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement([-a for a in self.coeffs], self.root)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement([a - b for a, b in zip(self.coeffs, o.coeffs)], self.root)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(poly_mul(_trim(self.coeffs), _trim(o.coeffs)), self.root)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = poly_xgcd(_trim(self.coeffs), self.root.min_poly)
        if len(g) != 1:
            raise InvalidInput("defining polynomial is reducible over this element")
        return FieldElement(s, self.root)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = FieldElement.rational(self.root, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparisons -----------------------------------------------------

    def integer_vector(self) -> tuple[tuple[int, ...], int]:
        """(nums, den) with den > 0 and self = sum nums[i] root**i / den."""
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        return tuple(int(c * den) for c in self.coeffs), den

    def is_zero(self) -> bool:
        return self.sign() == 0

    def sign(self) -> int:
        if not any(self.coeffs):
            return 0
        nums, _ = self.integer_vector()
        return self.root.sign_int(nums)

    def floor(self) -> int:
        nums, den = self.integer_vector()
        return self.root.floor_int(nums, den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FieldElement.rational(self.root, other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.root.min_poly == other.root.min_poly and self.coeffs == other.coeffs and (
            self.root is other.root or _same_root(self.root, other.root))

    def __hash__(self):
        return hash((self.root.min_poly, self.coeffs))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    # -- display ---------------------------------------------------------

    def enclose(self, width) -> tuple[Fraction, Fraction]:
        """Dyadic interval of width <= ``width`` containing the value."""
        width = Fraction(width)
        k = 1
        while Fraction(1, 1 << k) > width / 4:
            k += 1
        nums, den = self.integer_vector()
        root = self.root
        if root.exact is not None:
            v = poly_eval(nums, root.exact) / den
            return v, v
        P = root._start_precision(nums)
        while True:
            b = root._bounds(nums, P)
            if b is not None:
                low, high, shift = b
                scale = den << shift
                lo = Fraction((low << k) // scale, 1 << k)
                hi = Fraction(-((-high << k) // scale), 1 << k)
                if hi - lo <= width:
                    return lo, hi
            P *= 2

    def __float__(self):
        lo, hi = self.enclose(Fraction(1, 1 << 60))
        return float((lo + hi) / 2)

    def to_decimal(self, places: int) -> str:
        """Correctly rounded (half away from zero) decimal string."""
        s = self.sign()
        mag = self if s >= 0 else -self
        scaled = mag * (10 ** places) + Fraction(1, 2)
        n = scaled.floor()
        digits = str(n).rjust(places + 1, "0")
        text = digits[:-places] + "." + digits[-places:] if places else digits
        return ("-" if s < 0 and n else "") + text

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(format_fraction(c) + ("" if i == 0 else "*r" if i == 1 else f"*r^{i}"))
        return "(" + (" + ".join(terms) or "0") + f") ~ {float(self):.6g}"


def _same_root(a: AlgebraicReal, b: AlgebraicReal) -> bool:
    if a is b:
        return True
    if a.min_poly != b.min_poly:
        return False
    return not (a.hi < b.lo or b.hi < a.lo) and count_roots(
        a._sturm, max(a.lo, b.lo), min(a.hi, b.hi)) >= (0 if a.exact is not None else 1)


def sign(x: FieldElement) -> int:
    return x.sign()


def evaluate_at_conjugate(x: FieldElement, target: AlgebraicReal) -> FieldElement:
    """The element with the same rational coordinates, read in Q(target)."""
    if x.root.min_poly != target.min_poly:
        raise FieldMismatch("target is not a root of the same minimal polynomial")
    return FieldElement(x.coeffs, target)
