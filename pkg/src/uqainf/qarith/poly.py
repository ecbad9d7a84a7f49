"""Laurent polynomials in ``v = q^(1/2)`` with exact rational coefficients.

The dense representation stores the lowest exponent and a tuple of
coefficients running upward from it.  Coefficients are Python ints whenever
possible and :class:`fractions.Fraction` otherwise.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Sequence

def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _strip(coeffs: Sequence, low: int) -> tuple[tuple, int]:
    lo, hi = 0, len(coeffs)
    while lo < hi and coeffs[lo] == 0:
        lo += 1
    while hi > lo and coeffs[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        return (), 0
    return tuple(_norm(c) for c in coeffs[lo:hi]), low + lo


# -- dense helpers on plain coefficient lists (ascending order) -------------

_KRON_MIN = 24


def _conv(a: Sequence, b: Sequence) -> list:
    if len(a) > len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _kron_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # Kronecker substitution through CPython's big-integer multiply.
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    pa = 0
    for c in reversed(a):
        pa = (pa << bits) + c
    pb = 0
    for c in reversed(b):
        pb = (pb << bits) + c
    prod = pa * pb
    n = len(a) + len(b) - 1
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    out = []
    neg = prod < 0
    if neg:
        prod = -prod
    for _ in range(n):
        c = prod & mask
        prod >>= bits
        if c >= half:
            c -= 1 << bits
            prod += 1
        out.append(-c if neg else c)
    return out


def _mul_lists(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    if (
        len(a) >= _KRON_MIN
        and len(b) >= _KRON_MIN
        and all(type(c) is int for c in a)
        and all(type(c) is int for c in b)
    ):
        return _kron_mul(a, b)
    return _conv(a, b)


def _divmod_lists(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Polynomial long division of ascending coefficient lists over Q."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    lead = b[-1]
    unit = lead == 1 or lead == -1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        if unit:
            t = c * lead
        elif type(c) is int and type(lead) is int and c % lead == 0:
            t = c // lead
        else:
            t = _norm(Fraction(c) / lead)
        q[i - db] = t
        off = i - db
        for j, bj in enumerate(b):
            if bj:
                a[off + j] -= t * bj
    r = a[:db]
    while r and r[-1] == 0:
        r.pop()
    return q, r


def _exact_quo_int(a: Sequence[int], b: Sequence[int]) -> list[int] | None:
    """Quotient ``a / b`` over Z, or None when ``b`` does not divide ``a``.

    For a primitive ``b`` a non-integral step already rules out divisibility
    over Q (Gauss's lemma), so no rational arithmetic is needed.
    """
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return None if any(a) else []
    lead = b[-1]
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        t, r = divmod(c, lead)
        if r:
            return None
        q[i - db] = t
        off = i - db
        for j, bj in enumerate(b):
            if bj:
                a[off + j] -= t * bj
    if any(a[:db]):
        return None
    return q


def _all_int(a: Sequence) -> bool:
    return all(type(c) is int for c in a)


def _eval_list(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _content_int(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _primitive_int(a: Sequence) -> list[int]:
    """Scale a rational coefficient list to a primitive integer list with
    positive leading coefficient."""
    den = 1
    for c in a:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = _content_int(ints)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _heu_gcd(f: list[int], g: list[int]) -> list[int] | None:
    """Heuristic gcd of primitive integer polynomials (evaluate, integer gcd,
    interpolate).  Returns None when the heuristic gives up."""
    nf = max(map(abs, f))
    ng = max(map(abs, g))
    b = 2 * min(nf, ng) + 29
    x = max(min(b, 99 * isqrt(b)), 2 * min(nf // abs(f[-1]), ng // abs(g[-1])) + 2)
    for _ in range(6):
        ff = _eval_list(f, x)
        gg = _eval_list(g, x)
        if ff and gg:
            h = gcd(ff, gg)
            cand = []
            while h:
                r = h % x
                if r > x // 2:
                    r -= x
                cand.append(r)
                h = (h - r) // x
            if cand:
                cand = _primitive_int(cand)
                if _exact_quo_int(f, cand) is not None and _exact_quo_int(g, cand) is not None:
                    return cand
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return None


def _euclid_gcd(f: list, g: list) -> list:
    a, b = list(f), list(g)
    while b:
        _, r = _divmod_lists(a, b)
        a, b = b, r
    return _primitive_int(a)


def _gcd_lists(f: Sequence, g: Sequence) -> list[int]:
    """Primitive integer gcd of two nonzero coefficient lists (ascending)."""
    pf = _primitive_int(f)
    pg = _primitive_int(g)
    if len(pf) == 1 or len(pg) == 1:
        return [1]
    h = _heu_gcd(pf, pg)
    if h is None:
        h = _euclid_gcd(pf, pg)
    return h


class LaurentPoly:
    """Immutable Laurent polynomial ``sum c_k v^k`` with rational ``c_k``."""

    __slots__ = ("coeffs", "low", "_hash")

    def __init__(self, coeffs: Iterable = (), low: int = 0):
        c, lo = _strip(tuple(coeffs), low)
        self.coeffs = c
        self.low = lo
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(cls, coeffs: tuple, low: int) -> "LaurentPoly":
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        obj.low = low
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls((c,), 0)

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls((c,), k)

    @classmethod
    def from_dict(cls, terms: dict[int, object]) -> "LaurentPoly":
        terms = {k: c for k, c in terms.items() if c != 0}
        if not terms:
            return ZERO
        lo, hi = min(terms), max(terms)
        return cls([terms.get(k, 0) for k in range(lo, hi + 1)], lo)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def high(self) -> int:
        """Highest exponent; -1 + low for the zero polynomial."""
        return self.low + len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def to_dict(self) -> dict[int, object]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c != 0}

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.low == other.low and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.coeffs
            return self.low == 0 and self.coeffs == (_norm(other),)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.low, self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_str()})"

    def to_str(self, var: str = "v") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.high, self.low - 1, -1):
            c = self.coeffs[k - self.low]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                if a == 1:
                    body = mono
                elif isinstance(a, Fraction):
                    body = f"({a})*{mono}"
                else:
                    body = f"{a}*{mono}"
            parts.append((sign, body))
        s0, b0 = parts[0]
        out = ("-" if s0 == "-" else "") + b0
        for s, b in parts[1:]:
            out += s + b
        return out

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(tuple(-c for c in self.coeffs), self.low)

    def __add__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.low - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.low - lo + i] += c
        return LaurentPoly(out, lo)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return LaurentPoly._raw(tuple(_norm(c * other) for c in self.coeffs), self.low)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZERO
        if len(other.coeffs) == 1:
            c = other.coeffs[0]
            return LaurentPoly._raw(
                tuple(_norm(x * c) for x in self.coeffs), self.low + other.low
            )
        if len(self.coeffs) == 1:
            return other * self
        prod = _mul_lists(self.coeffs, other.coeffs)
        return LaurentPoly(prod, self.low + other.low)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LaurentPoly":
        if e < 0:
            if len(self.coeffs) == 1:
                return LaurentPoly.monomial(self.low * e, Fraction(1) / self.coeffs[0] ** (-e))
            raise ValueError("negative power of a non-monomial Laurent polynomial")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v^k``."""
        if not self.coeffs:
            return self
        return LaurentPoly._raw(self.coeffs, self.low + k)

    def scale(self, c) -> "LaurentPoly":
        return self * c

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly(
            [c * (self.low + i) for i, c in enumerate(self.coeffs)], self.low - 1
        )

    def __call__(self, x):
        """Evaluate at ``x`` (exact for Fraction/int arguments)."""
        if not self.coeffs:
            return 0
        acc = _eval_list(self.coeffs, x)
        if self.low >= 0:
            return acc * x ** self.low
        return acc / x ** (-self.low) if not isinstance(x, int) else Fraction(acc, x ** (-self.low))

    # -- polynomial-part operations -------------------------------------------

    def unit_split(self) -> tuple[int, "LaurentPoly"]:
        """Return ``(k, P)`` with ``self = v^k * P`` and ``P(0) != 0``."""
        if not self.coeffs:
            return 0, self
        return self.low, LaurentPoly._raw(self.coeffs, 0)

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Division of the polynomial parts; both operands must have ``low >= 0``."""
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        if self.low < 0 or other.low < 0:
            raise ValueError("divmod requires ordinary polynomials")
        a = [0] * self.low + list(self.coeffs)
        b = [0] * other.low + list(other.coeffs)
        q, r = _divmod_lists(a, b)
        return LaurentPoly(q, 0), LaurentPoly(r, 0)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in the Laurent ring; raises if ``other`` does not divide."""
        if not other.coeffs:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if _all_int(self.coeffs) and _all_int(other.coeffs) and _content_int(other.coeffs) == 1:
            q = _exact_quo_int(self.coeffs, other.coeffs)
            if q is None:
                raise ValueError("inexact Laurent polynomial division")
            return LaurentPoly(q, self.low - other.low)
        q, r = _divmod_lists(list(self.coeffs), list(other.coeffs))
        if r:
            raise ValueError("inexact Laurent polynomial division")
        return LaurentPoly(q, self.low - other.low)

    def divides(self, other: "LaurentPoly") -> bool:
        """True when ``self`` divides ``other`` in the Laurent ring Q[v, 1/v]."""
        if _all_int(self.coeffs) and _all_int(other.coeffs) and _content_int(self.coeffs) == 1:
            return _exact_quo_int(other.coeffs, self.coeffs) is not None
        _, r = _divmod_lists(list(other.coeffs), list(self.coeffs))
        return not r

    def primitive(self) -> tuple[Fraction, "LaurentPoly"]:
        """Split into ``content * P`` with ``P`` integral, primitive, positive lc,
        and the same exponent range."""
        if not self.coeffs:
            return Fraction(0), self
        p = _primitive_int(self.coeffs)
        content = Fraction(self.coeffs[-1]) / p[-1]
        return content, LaurentPoly._raw(tuple(p), self.low)

    def monic(self) -> "LaurentPoly":
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return LaurentPoly._raw(tuple(_norm(Fraction(c) / lc) for c in self.coeffs), self.low)

    def gcd(self, other: "LaurentPoly") -> "LaurentPoly":
        """Monic gcd in Q[v, 1/v], normalised to a polynomial with nonzero
        constant term (units ``v^k`` are ignored)."""
        if not self.coeffs:
            return other.unit_split()[1].monic() if other.coeffs else ZERO
        if not other.coeffs:
            return self.unit_split()[1].monic()
        g = _gcd_lists(self.coeffs, other.coeffs)
        return LaurentPoly(g, 0).monic()

    def gcd_primitive(self, other: "LaurentPoly") -> "LaurentPoly":
        """Like :meth:`gcd` but primitive over Z with positive leading coefficient."""
        if not self.coeffs or not other.coeffs:
            nz = self if self.coeffs else other
            return LaurentPoly(_primitive_int(nz.coeffs), 0) if nz.coeffs else ZERO
        return LaurentPoly(_gcd_lists(self.coeffs, other.coeffs), 0)

    def content(self) -> Fraction:
        """Positive rational content: ``self / content`` is primitive over Z."""
        if not self.coeffs:
            return Fraction(0)
        c, _ = self.primitive()
        return abs(c)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
V = LaurentPoly.monomial(1)


def squarefree_int(n: int) -> tuple[int, int]:
    """Return ``(s, t)`` with ``n = s^2 * t`` and ``t`` square-free (``n > 0``)."""
    if n <= 0:
        raise ValueError("squarefree_int expects a positive integer")
    s, t = 1, 1
    d = 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            s *= d
        if n % d == 0:
            n //= d
            t *= d
        d += 1 if d == 2 else 2
    return s, t * n


def yun(p: LaurentPoly) -> list[LaurentPoly]:
    """Square-free factorisation of the polynomial part of ``p``.

    Returns monic ``[a1, a2, ...]`` with ``P = lc * prod a_i^i`` where ``P`` is
    ``p`` with its monomial unit removed.  The ``a_i`` are pairwise coprime and
    square-free.
    """
    _, f = p.unit_split()
    f = f.monic()
    if f.high <= 0:
        return []
    fp = f.derivative()
    a0 = f.gcd(fp)
    out: list[LaurentPoly] = []
    b = f.exact_div(a0)
    c = fp.exact_div(a0)
    d = c - b.derivative()
    while b.high > 0:
        a = b.gcd(d)
        out.append(a)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
    while out and out[-1] == ONE:
        out.pop()
    return out


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> LaurentPoly:
    """The cyclotomic polynomial Phi_d(v)."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    p = LaurentPoly.monomial(d) - ONE
    for e in range(1, d):
        if d % e == 0:
            p = p.exact_div(cyclotomic(e))
    return p
