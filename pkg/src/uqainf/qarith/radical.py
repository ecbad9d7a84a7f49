"""Exact scalars of the form ``sum_k c_k * sqrt(F_k)``.

Each ``F_k`` is a square-free Laurent polynomial in canonical form

    F = t * v^eps * P(v)

with ``t`` a positive square-free integer, ``eps`` in ``{0, 1}`` and ``P`` a
primitive integer polynomial with positive leading coefficient and
``P(0) != 0``.  Coefficients ``c_k`` are :class:`RatFun` values.  The key
``1`` carries the rational part.
"""
from __future__ import annotations

import cmath
import re
import warnings
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cyclo import bracket_factors, cyclo_product
from .poly import ONE, LaurentPoly, squarefree_int, yun
from .ratfun import RatFun


class NegativeRadicandWarning(RuntimeWarning):
    """A radicand evaluated to a negative real number; principal branch used."""


class PoleError(ZeroDivisionError):
    """A numeric sample point hit a pole of some denominator."""


def qbracket(n: int) -> LaurentPoly:
    """``[n]`` as a Laurent polynomial in ``v`` (only even exponents occur)."""
    if n == 0:
        return LaurentPoly()
    a = abs(n)
    s = 1 if n > 0 else -1
    coeffs = [0] * (4 * (a - 1) + 1)
    for t in range(a):
        coeffs[4 * t] = s
    return LaurentPoly(coeffs, -2 * (a - 1))


def _primitive_part(p: LaurentPoly) -> tuple[Fraction, LaurentPoly]:
    """``p = c * P`` with ``P`` primitive over Z and positive leading coefficient."""
    c, prim = p.primitive()
    if prim.lc < 0:
        c, prim = -c, -prim
    return c, prim


def squarefree_split(p: LaurentPoly) -> tuple[int, LaurentPoly, LaurentPoly]:
    """Return ``(sign, S, F)`` with ``p = sign * S^2 * F`` and ``F`` canonical square-free."""
    if p.is_zero():
        raise ValueError("squarefree_split of the zero polynomial")
    k, poly = p.unit_split()
    c, prim = _primitive_part(poly)
    sign = 1 if c > 0 else -1
    c = abs(Fraction(c))
    s_int, t_int = squarefree_int(c.numerator * c.denominator)
    S = LaurentPoly.const(Fraction(s_int, c.denominator)).shift(k // 2)
    F = LaurentPoly.const(t_int).shift(k % 2)
    for i, a in enumerate(yun(prim), start=1):
        if a == ONE:
            continue
        _, a = _primitive_part(a)
        if i // 2:
            S = S * a ** (i // 2)
        if i % 2:
            F = F * a
    return sign, S, F


@lru_cache(maxsize=65536)
def _key_parts(key: LaurentPoly) -> tuple[int, int, LaurentPoly]:
    t = key.lc if key.is_monomial() else _primitive_part(key)[0]
    t = int(t)
    eps = key.low
    return t, eps, (key * Fraction(1, t)).shift(-eps)


@lru_cache(maxsize=65536)
def _key_product(k1: LaurentPoly, k2: LaurentPoly) -> tuple[RatFun, LaurentPoly]:
    """``sqrt(k1) * sqrt(k2) = coef * sqrt(key)``."""
    t1, e1, p1 = _key_parts(k1)
    t2, e2, p2 = _key_parts(k2)
    g_int = gcd(t1, t2)
    t3 = (t1 // g_int) * (t2 // g_int)
    if p1 == ONE or p2 == ONE:
        g = ONE
        p3 = p1 * p2
    else:
        g = p1.gcd(p2)
        if g != ONE:
            _, g = _primitive_part(g)
            p3 = p1.exact_div(g) * p2.exact_div(g)
        else:
            p3 = p1 * p2
    coef_poly = (g * g_int).shift(1 if (e1 and e2) else 0)
    key = (p3 * t3).shift((e1 + e2) % 2)
    if coef_poly.is_monomial():
        coef = RatFun.monomial(coef_poly.low, coef_poly.coeffs[0])
    else:
        coef = RatFun(coef_poly)
    return coef, key


class RadicalScalar:
    """Immutable exact radical scalar; ``terms`` maps keys to coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict | None = None):
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}
        self._hash = None

    @classmethod
    def _trusted(cls, terms: dict) -> "RadicalScalar":
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def from_ratfun(cls, r) -> "RadicalScalar":
        if not isinstance(r, RatFun):
            r = RatFun.const(r) if not isinstance(r, LaurentPoly) else RatFun(r)
        return cls._trusted({} if r.is_zero() else {ONE: r})

    @classmethod
    def zero(cls) -> "RadicalScalar":
        return cls._trusted({})

    @classmethod
    def one(cls) -> "RadicalScalar":
        return cls._trusted({ONE: RatFun.const(1)})

    @classmethod
    def sqrt_of(cls, key: LaurentPoly, coef=1) -> "RadicalScalar":
        """``coef * sqrt(key)`` for an arbitrary nonzero polynomial ``key``."""
        return sqrt_poly(key) * RadicalScalar.from_ratfun(coef)

    # -- predicates ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_rational(self) -> bool:
        return all(k == ONE for k in self.terms)

    def rational_part(self) -> RatFun:
        return self.terms.get(ONE, RatFun.const(0))

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset((k, c) for k, c in self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"RadicalScalar({to_text(self)})"

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self) -> "RadicalScalar":
        return RadicalScalar._trusted({k: -c for k, c in self.terms.items()})

    def __add__(self, other) -> "RadicalScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                s = out[k] + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = c
        return RadicalScalar._trusted(out)

    __radd__ = __add__

    def __sub__(self, other) -> "RadicalScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RadicalScalar":
        return (-self) + other

    def __mul__(self, other) -> "RadicalScalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return RadicalScalar.zero()
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                if k1 == ONE:
                    coef, key = c1 * c2, k2
                elif k2 == ONE:
                    coef, key = c1 * c2, k1
                else:
                    extra, key = _key_product(k1, k2)
                    coef = c1 * c2 * extra
                if key in out:
                    s = out[key] + coef
                    if s.is_zero():
                        del out[key]
                    else:
                        out[key] = s
                else:
                    out[key] = coef
        return RadicalScalar._trusted(out)

    __rmul__ = __mul__

    def scale(self, r: RatFun) -> "RadicalScalar":
        if r.is_zero():
            return RadicalScalar.zero()
        return RadicalScalar._trusted({k: c * r for k, c in self.terms.items()})

    def __truediv__(self, other) -> "RadicalScalar":
        """Division by a rational scalar (radical denominators are not needed)."""
        if isinstance(other, RadicalScalar):
            if not other.is_rational():
                raise TypeError("division by an irrational radical scalar")
            other = other.rational_part()
        if not isinstance(other, RatFun):
            other = RatFun.const(other)
        return self.scale(other.inverse())

    # -- evaluation ------------------------------------------------------------

    def square_at(self, v0):
        """Exact ``value(v0)^2`` for a single-term scalar (``0`` for zero)."""
        if not self.terms:
            return 0
        if len(self.terms) != 1:
            raise ValueError("square_at needs a single-term scalar")
        (k, c), = self.terms.items()
        cv = c(v0)
        return cv * cv * k(v0)


def _coerce(x):
    if isinstance(x, RadicalScalar):
        return x
    if isinstance(x, (RatFun, int, Fraction, LaurentPoly)):
        return RadicalScalar.from_ratfun(x)
    return NotImplemented


def rad_make(radicand, sign: int = 1) -> RadicalScalar:
    """``sign * sqrt(|radicand|)`` where ``|.|`` flips by the sign near ``v = 1``."""
    if not isinstance(radicand, RatFun):
        radicand = RatFun(radicand) if isinstance(radicand, LaurentPoly) else RatFun.const(radicand)
    if radicand.is_zero():
        return RadicalScalar.zero()
    if radicand.sign_near_one() < 0:
        radicand = -radicand
    num, den = radicand.num, radicand.den
    s, S, F = squarefree_split(num * den)
    if s < 0:
        raise ValueError("radicand is negative after the sign normalisation")
    coef = RatFun(S, den) * sign
    return RadicalScalar._trusted({F: coef})


def sqrt_poly(p: LaurentPoly) -> RadicalScalar:
    """``sqrt(p)`` without any sign normalisation; ``p`` must split with sign +1."""
    if p.is_zero():
        return RadicalScalar.zero()
    s, S, F = squarefree_split(p)
    if s < 0:
        raise ValueError("sqrt_poly of a polynomial with negative canonical sign")
    return RadicalScalar._trusted({F: RatFun(S)})


def rad_from_brackets(num_args, den_args, sign: int = 1) -> RadicalScalar:
    """``sign * sqrt(|prod [a] / prod [b]|)`` for integer bracket arguments."""
    exps: dict[int, int] = {}
    vexp = 0
    for a in num_args:
        if a == 0:
            return RadicalScalar.zero()
        _, k, ds = bracket_factors(a)
        vexp += k
        for d in ds:
            exps[d] = exps.get(d, 0) + 1
    for b in den_args:
        if b == 0:
            raise ZeroDivisionError("[0] in the denominator of a radicand")
        _, k, ds = bracket_factors(b)
        vexp -= k
        for d in ds:
            exps[d] = exps.get(d, 0) - 1
    half = {}
    odd = []
    for d, e in exps.items():
        # sqrt(Phi^e) with e = 2h + r (r in {0, 1}); r = 1 goes under the root
        h, r = divmod(e, 2)
        if h:
            half[d] = h
        if r:
            odd.append((d, 1))
    key = cyclo_product(tuple(sorted(odd)))
    return RadicalScalar._trusted({key: RatFun.from_cyclotomic(sign, vexp // 2, half)})


# -- numeric evaluation -------------------------------------------------------


def _eval_point(x, v0):
    try:
        return x(v0)
    except ZeroDivisionError as exc:
        raise PoleError(f"pole at v = {v0}") from exc


def eval_numeric(x, v0) -> complex:
    """Numeric value at ``v = v0``; radicands use the principal square root."""
    if isinstance(x, (int, Fraction)):
        return complex(x)
    if isinstance(x, (LaurentPoly, RatFun)):
        return complex(_eval_point(x, v0))
    total = 0j
    for k, c in x.terms.items():
        fv = complex(_eval_point(k, v0))
        if fv.imag == 0 and fv.real < 0:
            warnings.warn(f"negative radicand {fv.real} at v = {v0}", NegativeRadicandWarning)
        total += complex(_eval_point(c, v0)) * cmath.sqrt(fv)
    return total


# -- text grammar -------------------------------------------------------------


def _poly_text(p: LaurentPoly) -> str:
    parts = []
    for e in range(p.high, p.low - 1, -1):
        c = p.coeffs[e - p.low]
        if c == 0:
            continue
        sgn = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = "v" if e == 1 else f"v^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sgn, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sgn, body in parts[1:]:
        out += sgn + body
    return out


def _key_order(k: LaurentPoly):
    return (k.high, k.low, tuple(k.coeffs))


def to_text(x) -> str:
    """Render ``(c)*(N)/(D)*sqrt{F}`` terms joined by ``" + "``."""
    if isinstance(x, (RatFun, LaurentPoly, int, Fraction)):
        x = RadicalScalar.from_ratfun(x)
    if not x.terms:
        return "0"
    out = []
    for key in sorted(x.terms, key=_key_order):
        c = x.terms[key]
        cn, n = _primitive_part(c.num)
        cd, d = _primitive_part(c.den)
        const = Fraction(cn) / cd
        term = f"({const})"
        if n != ONE:
            term += f"*({_poly_text(n)})"
        if d != ONE:
            term += f"/({_poly_text(d)})"
        term += "*sqrt{" + _poly_text(key) + "}"
        out.append(term)
    return " + ".join(out)


_MONO = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)\*?)?(v(?:\^(-?\d+))?)?")


def parse_poly(s: str) -> LaurentPoly:
    s = s.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    terms: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _MONO.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse polynomial {s!r} at {pos}")
        sgn = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            e = int(m.group(4)) if m.group(4) is not None else 1
        else:
            e = 0
        terms[e] = terms.get(e, 0) + sgn * coef
        pos = m.end()
    return LaurentPoly.from_dict(terms)


_TERM = re.compile(
    r"\((?P<c>-?\d+(?:/\d+)?)\)"
    r"(?:\*\((?P<n>[^()]*)\))?"
    r"(?:/\((?P<d>[^()]*)\))?"
    r"\*sqrt\{(?P<f>[^{}]*)\}"
)


def parse_text(s: str) -> RadicalScalar:
    """Inverse of :func:`to_text`."""
    s = s.strip()
    if s == "0":
        return RadicalScalar.zero()
    total = RadicalScalar.zero()
    for chunk in s.split(" + "):
        m = _TERM.fullmatch(chunk.strip())
        if not m:
            raise ValueError(f"malformed scalar term {chunk!r}")
        num = parse_poly(m.group("n")) if m.group("n") else ONE
        den = parse_poly(m.group("d")) if m.group("d") else ONE
        key = parse_poly(m.group("f"))
        coef = RatFun(num * Fraction(m.group("c")), den)
        total = total + sqrt_poly(key) * coef
    return total
