"""Rational functions of ``v`` with exact rational coefficients.

A value is kept in one of three internal shapes:

* a *cyclotomic monomial* ``c * v^k * prod Phi_d^e`` (products and ratios of
  integer q-brackets, closed under ``*`` and ``/``);
* ``num / den`` with ``den`` a known product of cyclotomic polynomials, so that
  sums only need least common multiples and trial division;
* a general ``num / den`` reduced with a polynomial gcd.

All three expose the same canonical pair ``(num, den)``: both have integer
coefficients, ``den`` has minimal exponent 0 and positive leading coefficient,
``gcd(num, den) = 1`` as polynomials and the integer contents of ``num`` and
``den`` are coprime.  Equal values have identical canonical pairs.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .cyclo import bracket_factors, cyclo_product, maybe_divisible
from .poly import ONE, ZERO, LaurentPoly, cyclotomic

Exps = tuple  # sorted tuple of (d, e) pairs


def _merge(a: dict, b: Exps, sign: int = 1) -> dict:
    for d, e in b:
        a[d] = a.get(d, 0) + sign * e
    return a


def _pack(exps: dict) -> Exps:
    return tuple(sorted((d, e) for d, e in exps.items() if e))


def _int_coef(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _denominator_lcm(p: LaurentPoly) -> int:
    out = 1
    for c in p.coeffs:
        if isinstance(c, Fraction):
            d = c.denominator
            out = out * d // gcd(out, d)
    return out


def _content(p: LaurentPoly) -> int:
    g = 0
    for c in p.coeffs:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _div_int(p: LaurentPoly, c: int) -> LaurentPoly:
    if c == 1:
        return p
    return LaurentPoly._raw(tuple(x // c for x in p.coeffs), p.low)


def _normalise(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Canonical integer pair for ``num / den`` (``den`` nonzero)."""
    if num.is_zero():
        return ZERO, ONE
    lcm = _denominator_lcm(num)
    dl = _denominator_lcm(den)
    lcm = lcm * dl // gcd(lcm, dl)
    if lcm != 1:
        num, den = num * lcm, den * lcm
    k, den = den.unit_split()
    if k:
        num = num.shift(-k)
    if den.high > 0 and not num.is_monomial():
        g = num.gcd_primitive(den)
        if g.high > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
    c = gcd(_content(num), _content(den))
    if den.lc < 0:
        c = -c
    return _div_int(num, c), _div_int(den, c)


class RatFun:
    """Immutable element of Q(v)."""

    __slots__ = ("_mono", "_num", "_den", "_dexp", "_cp", "_hash")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = ONE if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self._mono = None
        self._hash = None
        self._num, self._den = _normalise(num, den)
        self._dexp = () if self._den == ONE else None
        self._cp = (self._num, self._den)

    # -- internal constructors -----------------------------------------------

    @classmethod
    def _general(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFun":
        obj = object.__new__(cls)
        obj._mono = None
        obj._hash = None
        obj._num, obj._den = _normalise(num, den)
        obj._dexp = () if obj._den == ONE else None
        obj._cp = (obj._num, obj._den)
        return obj

    @classmethod
    def _canonical(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFun":
        # trusted: (num, den) is already canonical
        obj = object.__new__(cls)
        obj._mono = None
        obj._hash = None
        obj._num, obj._den = num, den
        obj._dexp = () if den == ONE else None
        obj._cp = (num, den)
        return obj

    @classmethod
    def _from_mono(cls, coef, vexp: int, exps: Exps) -> "RatFun":
        obj = object.__new__(cls)
        obj._mono = (_int_coef(coef), vexp, exps)
        obj._num = obj._den = obj._dexp = obj._cp = None
        obj._hash = None
        return obj

    @classmethod
    def _from_cyc(cls, num: LaurentPoly, dexp: Exps) -> "RatFun":
        obj = object.__new__(cls)
        obj._mono = None
        obj._hash = None
        obj._cp = None
        if num.is_zero():
            obj._num, obj._den, obj._dexp = ZERO, ONE, ()
            obj._cp = (ZERO, ONE)
            return obj
        obj._num = num
        obj._dexp = dexp
        obj._den = None
        return obj

    @classmethod
    def const(cls, c) -> "RatFun":
        c = Fraction(c)
        if c == 0:
            return cls._canonical(ZERO, ONE)
        if c.denominator == 1:
            return cls._from_mono(c.numerator, 0, ())
        return cls._canonical(LaurentPoly.const(c.numerator), LaurentPoly.const(c.denominator))

    @classmethod
    def monomial(cls, k: int, c=1) -> "RatFun":
        c = Fraction(c)
        if c == 0:
            return cls.const(0)
        if c.denominator == 1:
            return cls._from_mono(c.numerator, k, ())
        return cls._canonical(LaurentPoly.monomial(k, c.numerator), LaurentPoly.const(c.denominator))

    @classmethod
    def bracket(cls, n: int) -> "RatFun":
        """The q-bracket ``[n]`` as a cyclotomic monomial."""
        if n == 0:
            return cls.const(0)
        s, k, ds = bracket_factors(n)
        return cls._from_mono(s, k, tuple((d, 1) for d in ds))

    @classmethod
    def from_cyclotomic(cls, coef, vexp: int, exps: dict[int, int]) -> "RatFun":
        """``coef * v^vexp * prod Phi_d^exps[d]`` (exponents may be negative)."""
        if coef == 0:
            return cls.const(0)
        for d in exps:
            if d < 1:
                raise ValueError("cyclotomic index must be positive")
        return cls._from_mono(coef, vexp, _pack(dict(exps)))

    # -- raw views -----------------------------------------------------------

    def _raw(self) -> tuple[LaurentPoly, Exps | None]:
        """(numerator, den-exponents) possibly unreduced; exps None if unknown."""
        if self._mono is not None:
            c, k, exps = self._mono
            pos = tuple((d, e) for d, e in exps if e > 0)
            neg = tuple((d, -e) for d, e in exps if e < 0)
            return cyclo_product(pos).shift(k) * c, neg
        return self._num, self._dexp

    def _pair(self) -> tuple[LaurentPoly, LaurentPoly]:
        if self._cp is not None:
            return self._cp
        if self._mono is not None:
            c, k, exps = self._mono
            pos = tuple((d, e) for d, e in exps if e > 0)
            neg = tuple((d, -e) for d, e in exps if e < 0)
            c = Fraction(c)
            num = cyclo_product(pos).shift(k) * c.numerator
            den = cyclo_product(neg) * c.denominator if c.denominator != 1 else cyclo_product(neg)
            self._cp = (num, den)
            return self._cp
        # cyclotomic-denominator form: trial division, then clear fractions
        num = self._num
        lcm = _denominator_lcm(num)
        if lcm != 1:
            num = num * lcm
        left = []
        for d, e in self._dexp:
            phi = cyclotomic(d)
            while e and maybe_divisible(num, d) and phi.divides(num):
                num = num.exact_div(phi)
                e -= 1
            if e:
                left.append((d, e))
        den = cyclo_product(tuple(left))
        c = gcd(_content(num), lcm)
        if lcm != 1:
            den = den * (lcm // c)
        self._cp = (_div_int(num, c), den)
        return self._cp

    @property
    def num(self) -> LaurentPoly:
        return self._pair()[0]

    @property
    def den(self) -> LaurentPoly:
        return self._pair()[1]

    @property
    def cyclotomic_form(self):
        """``(coef, vexp, exps)`` when the value is a cyclotomic monomial."""
        return self._mono

    # -- predicates ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self._mono is None and self._num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._mono is not None and other._mono is not None:
            return self._mono == other._mono
        if self._cp is None or other._cp is None:
            if self._raw()[1] is not None and other._raw()[1] is not None:
                return (self - other).is_zero()
        return self._pair() == other._pair()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._pair())
        return self._hash

    def __repr__(self) -> str:
        n, d = self._pair()
        if d == ONE:
            return f"RatFun({n.to_str()})"
        return f"RatFun(({n.to_str()})/({d.to_str()}))"

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self) -> "RatFun":
        if self._mono is not None:
            c, k, e = self._mono
            return RatFun._from_mono(-c, k, e)
        if self._cp is not None and self._cp[0] is self._num:
            return RatFun._canonical(-self._num, self._cp[1])
        return RatFun._from_cyc(-self._num, self._dexp)

    def __add__(self, other) -> "RatFun":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        na, da = self._raw()
        nb, db = other._raw()
        if da is not None and db is not None:
            if da == db:
                return RatFun._from_cyc(na + nb, da)
            ea, eb = dict(da), dict(db)
            lcm = {d: max(ea.get(d, 0), eb.get(d, 0)) for d in set(ea) | set(eb)}
            ca = _pack({d: lcm[d] - ea.get(d, 0) for d in lcm})
            cb = _pack({d: lcm[d] - eb.get(d, 0) for d in lcm})
            num = na * cyclo_product(ca) + nb * cyclo_product(cb)
            return RatFun._from_cyc(num, _pack(lcm))
        n1, d1 = self._pair()
        n2, d2 = other._pair()
        if d1 == d2:
            return RatFun._general(n1 + n2, d1)
        return RatFun._general(n1 * d2 + n2 * d1, d1 * d2)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFun":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RatFun":
        return (-self) + other

    def __mul__(self, other) -> "RatFun":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RatFun.const(0)
        if self._mono is not None and other._mono is not None:
            c1, k1, e1 = self._mono
            c2, k2, e2 = other._mono
            return RatFun._from_mono(c1 * c2, k1 + k2, _pack(_merge(dict(e1), e2)))
        na, da = self._raw()
        nb, db = other._raw()
        if da is not None and db is not None:
            return RatFun._from_cyc(na * nb, _pack(_merge(dict(da), db)))
        n1, d1 = self._pair()
        n2, d2 = other._pair()
        return RatFun._general(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        if self._mono is not None:
            c, k, e = self._mono
            return RatFun._from_mono(Fraction(1) / c, -k, tuple((d, -x) for d, x in e))
        n, d = self._pair()
        return RatFun._general(d, n)

    def __truediv__(self, other) -> "RatFun":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        if other._mono is not None:
            return self * other.inverse()
        if self.is_zero():
            return self
        n1, d1 = self._pair()
        n2, d2 = other._pair()
        return RatFun._general(n1 * d2, d1 * n2)

    def __rtruediv__(self, other) -> "RatFun":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, e: int) -> "RatFun":
        if e < 0:
            return self.inverse() ** (-e)
        out = RatFun.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    # -- evaluation ------------------------------------------------------------

    def __call__(self, x):
        """Exact (Fraction/int) or floating evaluation; raises at a pole."""
        if self._mono is not None:
            c, k, exps = self._mono
            val = c * (Fraction(x) ** k if isinstance(x, int) else x ** k)
            for d, e in exps:
                f = cyclotomic(d)(x)
                if f == 0:
                    if e < 0:
                        raise ZeroDivisionError("pole of rational function")
                    return 0 * val
                val = val * (Fraction(f) ** e if isinstance(f, int) else f ** e)
            return val
        num, den = self._pair()
        dv = den(x)
        if dv == 0:
            raise ZeroDivisionError("pole of rational function")
        nv = num(x)
        if isinstance(nv, (int, Fraction)) and isinstance(dv, (int, Fraction)):
            return Fraction(nv) / dv
        return nv / dv

    def sign_near_one(self) -> int:
        """Sign of the value for ``v`` at (or just above) 1."""
        if self.is_zero():
            return 0
        if self._mono is not None:
            # Phi_d(1) > 0 for d >= 2 and Phi_1(v) = v - 1 > 0 just above 1
            return 1 if self._mono[0] > 0 else -1
        num, den = self._pair()
        return _sign_near_one(num) * _sign_near_one(den)


_VM1 = LaurentPoly((-1, 1))


def _sign_near_one(p: LaurentPoly) -> int:
    while True:
        val = p(1)
        if val != 0:
            return 1 if val > 0 else -1
        p = p.exact_div(_VM1)


def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a Laurent polynomial")


def _coerce(x):
    if isinstance(x, RatFun):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFun.const(x)
    if isinstance(x, LaurentPoly):
        if x.is_monomial():
            return RatFun.monomial(x.low, x.coeffs[0])
        return RatFun._from_cyc(x, ())
    return NotImplemented
