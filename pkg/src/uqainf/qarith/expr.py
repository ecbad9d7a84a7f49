"""Expression trees over commuting symbols, evaluated in several domains.

An expression is built from constants, the variable ``q``, (indexed) symbols,
field operations, integer powers, q-brackets of integer-valued arguments and
big sums/products over integer index ranges.  The same tree can be evaluated

* symbolically in ``Q(v)`` with ``q = v^2`` (:class:`RatFunDomain`),
* exactly at a rational ``q`` (:class:`FractionDomain`),
* in a prime field (:class:`PrimeDomain`),
* numerically at a complex ``q`` (:class:`ComplexDomain`).

:func:`pit_equal` compares two trees at random points.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .ratfun import RatFun

PRIME = (1 << 61) - 1


class DegenerateError(ZeroDivisionError):
    """A denominator vanished at the evaluation point."""


class SamplingError(RuntimeError):
    """No non-degenerate sample point was found within the retry budget."""


# -- domains ------------------------------------------------------------------


class RatFunDomain:
    name = "exact"

    def const(self, c):
        return RatFun.const(c)

    def lift(self, x):
        return x if isinstance(x, RatFun) else RatFun.const(x)

    def q(self):
        return RatFun.monomial(2)

    def bracket(self, n: int):
        return RatFun.bracket(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if b.is_zero():
            raise DegenerateError("zero denominator")
        return a / b

    def neg(self, a):
        return -a

    def pow(self, a, e: int):
        if e < 0 and a.is_zero():
            raise DegenerateError("zero to a negative power")
        return a ** e

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return a.is_zero()


class FractionDomain(RatFunDomain):
    name = "rational"

    def __init__(self, q):
        self.qv = Fraction(q)
        if self.qv == 0:
            raise DegenerateError("q must be nonzero")

    def const(self, c):
        return Fraction(c)

    def lift(self, x):
        return Fraction(x)

    def q(self):
        return self.qv

    def bracket(self, n: int):
        q = self.qv
        if q in (1, -1):
            # limit value at q = +-1
            return q ** (n - 1) * n
        return (q ** n - q ** -n) / (q - 1 / q)

    def div(self, a, b):
        if b == 0:
            raise DegenerateError("zero denominator")
        return a / b

    def pow(self, a, e: int):
        if e < 0 and a == 0:
            raise DegenerateError("zero to a negative power")
        return a ** e

    def is_zero(self, a) -> bool:
        return a == 0


class PrimeDomain(RatFunDomain):
    name = "prime"

    def __init__(self, q: int, p: int = PRIME):
        self.p = p
        self.qv = q % p
        if self.qv == 0 or (self.qv * self.qv - 1) % p == 0:
            raise DegenerateError("q must avoid 0 and +-1 mod p")
        self._qinv = pow(self.qv, p - 2, p)
        self._den = pow((self.qv - self._qinv) % p, p - 2, p)

    def const(self, c):
        c = Fraction(c)
        return c.numerator * pow(c.denominator, self.p - 2, self.p) % self.p

    lift = const

    def q(self):
        return self.qv

    def bracket(self, n: int):
        p = self.p
        return (pow(self.qv, n, p) - pow(self._qinv, n, p)) * self._den % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise DegenerateError("zero denominator")
        return a * pow(b, self.p - 2, self.p) % self.p

    def neg(self, a):
        return -a % self.p

    def pow(self, a, e: int):
        if e < 0:
            if a % self.p == 0:
                raise DegenerateError("zero to a negative power")
            a, e = pow(a, self.p - 2, self.p), -e
        return pow(a, e, self.p)

    def eq(self, a, b) -> bool:
        return (a - b) % self.p == 0

    def is_zero(self, a) -> bool:
        return a % self.p == 0


class ComplexDomain(RatFunDomain):
    """Floating evaluation carrying a running magnitude next to each value.

    Values are pairs ``(x, m)``: ``m`` bounds the size of the terms that were
    combined to produce ``x``, so ``eq`` can use a tolerance relative to the
    cancellation that actually happened rather than to the (possibly tiny)
    result.
    """

    name = "numeric"

    def __init__(self, q, rtol: float = 1e-9):
        self.qv = complex(q)
        self.rtol = rtol

    def const(self, c):
        c = complex(c)
        return (c, abs(c))

    lift = const

    def q(self):
        return (self.qv, abs(self.qv))

    def bracket(self, n: int):
        q = self.qv
        b = (q ** n - q ** -n) / (q - 1 / q)
        return (b, abs(b))

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] + b[1])

    def mul(self, a, b):
        return (a[0] * b[0], a[1] * b[1])

    def div(self, a, b):
        if b[0] == 0 or abs(b[0]) <= 1e-14 * b[1]:
            raise DegenerateError("zero denominator")
        x = a[0] / b[0]
        return (x, (a[1] + abs(x) * b[1]) / abs(b[0]))

    def neg(self, a):
        return (-a[0], a[1])

    def pow(self, a, e: int):
        if e >= 0:
            return (a[0] ** e, a[1] ** e)
        return self.div(self.const(1), self.pow(a, -e))

    def eq(self, a, b) -> bool:
        scale = max(a[1], b[1], 1.0)
        return abs(a[0] - b[0]) <= self.rtol * scale

    def is_zero(self, a) -> bool:
        return abs(a[0]) <= self.rtol * max(a[1], 1.0)


class _IntDomain(FractionDomain):
    """Exact arithmetic without ``q``; used for bracket arguments."""

    def __init__(self):
        pass

    def q(self):
        raise TypeError("q may not appear inside a bracket argument")

    def bracket(self, n: int):
        raise TypeError("nested brackets are not integer valued")


_INT = _IntDomain()


# -- environments ---------------------------------------------------------------


class Env:
    """Symbol values; missing symbols are drawn from ``sampler`` on demand."""

    def __init__(self, values: dict | None = None, sampler: Callable | None = None):
        self.values = dict(values or {})
        self.sampler = sampler

    def get(self, key, integer: bool):
        try:
            return self.values[key]
        except KeyError:
            if self.sampler is None:
                raise KeyError(f"unbound symbol {key!r}") from None
            val = self.sampler(key, integer)
            self.values[key] = val
            return val


def _as_env(env) -> Env:
    if isinstance(env, Env):
        return env
    return Env(env or {})


# -- nodes ------------------------------------------------------------------------


def _wrap(x) -> "Expr":
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction)):
        return Const(x)
    raise TypeError(f"cannot use {type(x).__name__} in an expression")


class Expr:
    """Base node.  ``ev(env, dom, scope)`` evaluates in the given domain."""

    children: tuple = ()

    def __add__(self, o):
        return Add(self, _wrap(o))

    def __radd__(self, o):
        return Add(_wrap(o), self)

    def __sub__(self, o):
        return Sub(self, _wrap(o))

    def __rsub__(self, o):
        return Sub(_wrap(o), self)

    def __mul__(self, o):
        return Mul(self, _wrap(o))

    def __rmul__(self, o):
        return Mul(_wrap(o), self)

    def __truediv__(self, o):
        return Div(self, _wrap(o))

    def __rtruediv__(self, o):
        return Div(_wrap(o), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, e: int):
        return Pow(self, e)

    def evaluate(self, env=None, dom=None):
        return self.ev(_as_env(env), dom or RatFunDomain(), {})

    def ev(self, env: Env, dom, scope: dict):
        raise NotImplementedError

    def rebuild(self, children: tuple) -> "Expr":
        return self

    def walk(self) -> Iterator["Expr"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def degree(self) -> int:
        """Crude upper bound on the total degree of numerator plus denominator."""
        return sum(c.degree() for c in self.children)


@dataclass(frozen=True, eq=False)
class Const(Expr):
    value: object

    def ev(self, env, dom, scope):
        return dom.const(self.value)

    def degree(self):
        return 0


@dataclass(frozen=True, eq=False)
class QVar(Expr):
    def ev(self, env, dom, scope):
        return dom.q()

    def degree(self):
        return 1


Q = QVar()


@dataclass(frozen=True, eq=False)
class Sym(Expr):
    """Symbol ``name`` with optional indices (ints or bound index names)."""

    name: str
    idx: tuple = ()

    def key(self, scope: dict):
        if not self.idx:
            return self.name
        out = []
        for i in self.idx:
            if isinstance(i, str):
                out.append(scope[i])
            elif isinstance(i, tuple):
                out.append(scope[i[0]] + i[1])
            else:
                out.append(i)
        return (self.name, *out)

    def ev(self, env, dom, scope):
        if not self.idx and self.name in scope:
            return dom.const(scope[self.name])
        return dom.lift(env.get(self.key(scope), integer=dom is _INT))

    def degree(self):
        return 1


def sym(name: str, *idx) -> Sym:
    return Sym(name, tuple(idx))


@dataclass(frozen=True, eq=False)
class _Bin(Expr):
    a: Expr
    b: Expr

    @property
    def children(self):
        return (self.a, self.b)

    def rebuild(self, children):
        return type(self)(*children)


class Add(_Bin):
    def ev(self, env, dom, scope):
        return dom.add(self.a.ev(env, dom, scope), self.b.ev(env, dom, scope))

    def degree(self):
        return 2 * (self.a.degree() + self.b.degree())


class Sub(Add):
    def ev(self, env, dom, scope):
        return dom.sub(self.a.ev(env, dom, scope), self.b.ev(env, dom, scope))


class Mul(_Bin):
    def ev(self, env, dom, scope):
        return dom.mul(self.a.ev(env, dom, scope), self.b.ev(env, dom, scope))


class Div(_Bin):
    def ev(self, env, dom, scope):
        return dom.div(self.a.ev(env, dom, scope), self.b.ev(env, dom, scope))


@dataclass(frozen=True, eq=False)
class Neg(Expr):
    a: Expr

    @property
    def children(self):
        return (self.a,)

    def rebuild(self, children):
        return Neg(*children)

    def ev(self, env, dom, scope):
        return dom.neg(self.a.ev(env, dom, scope))


@dataclass(frozen=True, eq=False)
class Pow(Expr):
    a: Expr
    e: int

    @property
    def children(self):
        return (self.a,)

    def rebuild(self, children):
        return Pow(children[0], self.e)

    def ev(self, env, dom, scope):
        return dom.pow(self.a.ev(env, dom, scope), self.e)

    def degree(self):
        return abs(self.e) * self.a.degree()


@dataclass(frozen=True, eq=False)
class Bracket(Expr):
    """``[arg]`` where ``arg`` must evaluate to an integer."""

    arg: Expr

    @property
    def children(self):
        return (self.arg,)

    def rebuild(self, children):
        return Bracket(children[0])

    def ev(self, env, dom, scope):
        n = self.arg.ev(env, _INT, scope)
        if n.denominator != 1:
            raise ValueError(f"bracket argument {n} is not an integer")
        return dom.bracket(int(n))

    def degree(self):
        # [n] has numerator degree 2|n| - 2 in q; the argument range is
        # unknown here, so a generous default is used by callers
        return 64


def bracket(x) -> Bracket:
    return Bracket(_wrap(x))


@dataclass(frozen=True, eq=False)
class BigOp(Expr):
    """``sum``/``prod`` of ``body`` for ``var`` in ``lo..hi`` (inclusive).

    ``skip`` lists index names or ints whose values are excluded.
    """

    kind: str
    var: str
    lo: int
    hi: int
    body: Expr
    skip: tuple = ()

    @property
    def children(self):
        return (self.body,)

    def rebuild(self, children):
        return BigOp(self.kind, self.var, self.lo, self.hi, children[0], self.skip)

    def _values(self, scope):
        banned = {scope[s] if isinstance(s, str) else s for s in self.skip}
        return [i for i in range(self.lo, self.hi + 1) if i not in banned]

    def ev(self, env, dom, scope):
        acc = dom.const(0 if self.kind == "sum" else 1)
        inner = dict(scope)
        for i in self._values(scope):
            inner[self.var] = i
            val = self.body.ev(env, dom, inner)
            acc = dom.add(acc, val) if self.kind == "sum" else dom.mul(acc, val)
        return acc

    def degree(self):
        n = max(self.hi - self.lo + 1, 0)
        return n * self.body.degree() * (2 if self.kind == "sum" else 1)


def Sum(var, lo, hi, body, skip=()) -> BigOp:
    return BigOp("sum", var, lo, hi, _wrap(body), tuple(skip))


def Prod(var, lo, hi, body, skip=()) -> BigOp:
    return BigOp("prod", var, lo, hi, _wrap(body), tuple(skip))


# -- mutation -------------------------------------------------------------------


def bracket_mutations(e: Expr) -> Iterator[tuple[int, int, Expr]]:
    """Yield ``(position, delta, tree)`` with one bracket argument shifted by +-1."""
    positions = [n for n in e.walk() if isinstance(n, Bracket)]
    for pos, target in enumerate(positions):
        for delta in (1, -1):
            yield pos, delta, _replace(e, target, Bracket(Add(target.arg, Const(delta))))


def reached_brackets(e: Expr) -> set[int]:
    """Positions (as in :func:`bracket_mutations`) of brackets that are ever evaluated.

    A bracket inside an empty index range is never evaluated, so shifting its
    argument yields an equivalent tree; callers treat those shifts as vacuous.
    """
    order = {id(n): k for k, n in enumerate(x for x in e.walk() if isinstance(x, Bracket))}
    hit: set[int] = set()

    def visit(node, scope):
        if isinstance(node, Bracket):
            hit.add(order[id(node)])
        if isinstance(node, BigOp):
            inner = dict(scope)
            for i in node._values(scope):
                inner[node.var] = i
                visit(node.body, inner)
            return
        for c in node.children:
            visit(c, scope)

    visit(e, {})
    return hit


def _q_exponent(node: Expr) -> int | None:
    if isinstance(node, QVar):
        return 1
    if isinstance(node, Pow) and isinstance(node.a, QVar):
        return node.e
    return None


def _qpower_paths(e: Expr, path=()) -> Iterator[tuple]:
    # q and its powers are shared objects, so positions are addressed by tree path
    if _q_exponent(e) is not None:
        yield path
        return
    for k, c in enumerate(e.children):
        yield from _qpower_paths(c, path + (k,))


def _replace_at(e: Expr, path: tuple, new: Expr) -> Expr:
    if not path:
        return new
    kids = list(e.children)
    kids[path[0]] = _replace_at(kids[path[0]], path[1:], new)
    return e.rebuild(tuple(kids))


def _node_at(e: Expr, path: tuple) -> Expr:
    for k in path:
        e = e.children[k]
    return e


def qpower_mutations(e: Expr) -> Iterator[tuple[int, int, Expr]]:
    """Yield ``(position, delta, tree)`` with one power of ``q`` changed to ``q^(k+delta)``.

    This is the corruption used for identities that contain no brackets.
    """
    for pos, path in enumerate(_qpower_paths(e)):
        k = _q_exponent(_node_at(e, path))
        for delta in (1, -1):
            yield pos, delta, _replace_at(e, path, Pow(Q, k + delta))


def reached_qpowers(e: Expr) -> set[int]:
    """Positions (as in :func:`qpower_mutations`) of powers of ``q`` that are ever evaluated."""
    order = {p: k for k, p in enumerate(_qpower_paths(e))}
    hit: set[int] = set()

    def visit(node, path, scope):
        if path in order:
            hit.add(order[path])
            return
        if isinstance(node, BigOp):
            inner = dict(scope)
            for i in node._values(scope):
                inner[node.var] = i
                visit(node.body, path + (0,), inner)
            return
        for k, c in enumerate(node.children):
            visit(c, path + (k,), scope)

    visit(e, (), {})
    return hit


def _replace(e: Expr, target: Expr, new: Expr) -> Expr:
    if e is target:
        return new
    if not e.children:
        return e
    kids = tuple(_replace(c, target, new) for c in e.children)
    if all(a is b for a, b in zip(kids, e.children)):
        return e
    return e.rebuild(kids)


# -- randomized identity testing --------------------------------------------------


@dataclass
class Verdict:
    equal: bool
    trials: int
    mode: str
    counterexample: dict | None = None
    confidence: str = ""
    resamples: int = 0
    extra: dict = field(default_factory=dict)


def _rand_rational(rng: random.Random, bound: int = 64) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def make_domain(mode: str, rng: random.Random, rtol: float = 1e-9):
    """A domain at a random non-root-of-unity ``q`` for the given mode."""
    if mode == "exact":
        return RatFunDomain()
    if mode == "rational":
        while True:
            qv = _rand_rational(rng)
            if qv not in (0, 1, -1):
                return FractionDomain(qv)
    if mode == "prime":
        while True:
            try:
                return PrimeDomain(rng.randrange(2, PRIME - 1))
            except DegenerateError:
                continue
    if mode == "numeric":
        import cmath

        r = rng.uniform(0.8, 1.25)
        return ComplexDomain(r * cmath.exp(1j * rng.uniform(-0.3, 0.3)), rtol)
    raise ValueError(f"unknown mode {mode!r}")


def default_sampler(rng: random.Random, mode: str, int_range: int = 12):
    def sample(key, integer):
        if integer:
            return rng.randint(-int_range, int_range)
        if mode == "prime":
            return rng.randrange(1, PRIME)
        return _rand_rational(rng)

    return sample


def pit_equal(lhs, rhs, trials: int = 20, seed=0, mode: str = "rational",
              int_range: int = 12, max_resample: int = 1000, env=None) -> Verdict:
    """Compare ``lhs`` and ``rhs`` at ``trials`` random non-degenerate points.

    Integer-valued symbols (those inside bracket arguments) are drawn from
    ``[-int_range, int_range]``; all other symbols and ``q`` from the field of
    the mode.  On the first mismatch the sampled point is returned.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    lhs, rhs = _wrap(lhs), _wrap(rhs)
    rng = random.Random(seed)
    resamples = 0
    for t in range(trials):
        for _ in range(max_resample):
            dom = make_domain(mode, rng)
            point = Env(env, default_sampler(rng, mode, int_range))
            try:
                lv = lhs.ev(point, dom, {})
                rv = rhs.ev(point, dom, {})
            except DegenerateError:
                resamples += 1
                continue
            break
        else:
            raise SamplingError(f"no non-degenerate point after {max_resample} attempts")
        if not dom.eq(lv, rv):
            ce = dict(point.values)
            if mode != "exact":
                ce["q"] = dom.qv
            return Verdict(False, t + 1, mode, counterexample=ce, resamples=resamples)
    deg = max(lhs.degree(), rhs.degree(), 1)
    if mode == "prime":
        conf = f"error probability <= ({deg}/{PRIME})^{trials} (degree bound over field size)"
    elif mode == "exact":
        conf = "exact symbolic equality in q at every sampled integer point"
    else:
        conf = f"agreement at {trials} random points; degree bound {deg}"
    return Verdict(True, trials, mode, confidence=conf, resamples=resamples)
