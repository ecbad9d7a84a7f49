"""The q-number identity corpus behind the Cartan and Serre relations.

Each identity is built once per instance size as a pair of expression trees
``(lhs, rhs)`` and then evaluated at concrete configurations in one of four
modes:

``exact``     symbolic ``q`` (rational functions of ``v = q^(1/2)``)
``rational``  exact arithmetic at a fixed rational ``q``
``prime``     arithmetic modulo ``2^61 - 1`` at a fixed residue ``q``
``numeric``   complex floating point at ``q = v0^2``, relative tolerance

The two-sum partial-fraction identity ``eq28`` is implemented in the form that
matches the residue computation (``q^-4 B`` and ``q^4 A`` in the last
denominator products); ``eq28_printed`` keeps the other form, which fails at
generic points and serves as a known-false control.
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .qarith.expr import (
    Q, ComplexDomain, DegenerateError, Env, Expr, FractionDomain, PrimeDomain,
    Prod, RatFunDomain, Sum, bracket, bracket_mutations, qpower_mutations, reached_brackets,
    reached_qpowers, sym,
)
from .patterns import row_range


class DegenerateConfig(ValueError):
    """The configuration violates the admissibility conditions of an identity."""


class SamplingExhausted(RuntimeError):
    pass


# -- configurations --------------------------------------------------------------


@dataclass(frozen=True)
class LConfig:
    """L-values on four consecutive rows, ``rows[r]`` ordered by index."""

    k: int
    rows: dict

    def env(self) -> dict:
        out = {}
        for r, vals in self.rows.items():
            lo, _ = row_range(r)
            for off, x in enumerate(vals):
                out[("L", r, lo + off)] = x
        return out

    def to_json(self):
        return {"k": self.k, "rows": {str(r): list(v) for r, v in sorted(self.rows.items())}}


@dataclass(frozen=True)
class PointConfig:
    """Values of the symbol families; ``values[name]`` is a tuple (1-based)."""

    values: dict

    def env(self) -> dict:
        out = {}
        for name, vals in self.values.items():
            if isinstance(vals, tuple):
                for i, x in enumerate(vals, start=1):
                    out[(name, i)] = x
            else:
                out[name] = vals
        return out

    def to_json(self):
        def enc(x):
            return str(x) if isinstance(x, Fraction) else x

        return {name: ([enc(x) for x in v] if isinstance(v, tuple) else enc(v))
                for name, v in sorted(self.values.items())}


# -- tree builders -----------------------------------------------------------------


def _L(i, r):
    return sym("L", r, i)


@lru_cache(maxsize=None)
def build_eq22(k: int) -> tuple[Expr, Expr]:
    lhs = 0
    for s in (0, 1):
        a_num = (Prod("i", -k, k - 1, bracket(_L("i", 2 * k) - _L("j", 2 * k - 1) + s - 1), skip=("l",))
                 * Prod("i", 1 - k, k - 2, bracket(_L("i", 2 * k - 2) - _L("j", 2 * k - 1) + s - 1)))
        a_den = Prod("i", 1 - k, k - 1,
                     bracket(_L("i", 2 * k - 1) - _L("j", 2 * k - 1) + s)
                     * bracket(_L("i", 2 * k - 1) - _L("j", 2 * k - 1) + s - 1), skip=("j",))
        b_num = (Prod("i", -k, k, bracket(_L("i", 2 * k + 1) - _L("l", 2 * k) + s))
                 * Prod("i", 1 - k, k - 1, bracket(_L("i", 2 * k - 1) - _L("l", 2 * k) + s), skip=("j",)))
        b_den = Prod("i", -k, k - 1,
                     bracket(_L("i", 2 * k) - _L("l", 2 * k) + s)
                     * bracket(_L("i", 2 * k) - _L("l", 2 * k) + s - 1), skip=("l",))
        term = Sum("j", 1 - k, k - 1, Sum("l", -k, k - 1, (a_num / a_den) * (b_num / b_den)))
        lhs = term if s == 0 else lhs - term
    arg = (Sum("j", 1 - k, k - 1, _L("j", 2 * k - 1)) - Sum("j", 1 - k, k - 2, _L("j", 2 * k - 2))
           - Sum("j", -k, k, _L("j", 2 * k + 1)) + Sum("j", -k, k - 1, _L("j", 2 * k)) - 1)
    return lhs, bracket(arg)


@lru_cache(maxsize=None)
def build_eq23(k: int) -> tuple[Expr, Expr]:
    lhs = 0
    for s in (0, 1):
        a_num = (Prod("i", -k, k, bracket(_L("i", 2 * k + 1) - _L("j", 2 * k) - s + 1), skip=("l",))
                 * Prod("i", 1 - k, k - 1, bracket(_L("i", 2 * k - 1) - _L("j", 2 * k) - s + 1)))
        a_den = Prod("i", -k, k - 1,
                     bracket(_L("i", 2 * k) - _L("j", 2 * k) - s)
                     * bracket(_L("i", 2 * k) - _L("j", 2 * k) - s + 1), skip=("j",))
        b_num = (Prod("i", -k - 1, k, bracket(_L("i", 2 * k + 2) - _L("l", 2 * k + 1) - s))
                 * Prod("i", -k, k - 1, bracket(_L("i", 2 * k) - _L("l", 2 * k + 1) - s), skip=("j",)))
        b_den = Prod("i", -k, k,
                     bracket(_L("i", 2 * k + 1) - _L("l", 2 * k + 1) - s)
                     * bracket(_L("i", 2 * k + 1) - _L("l", 2 * k + 1) - s + 1), skip=("l",))
        term = Sum("j", -k, k - 1, Sum("l", -k, k, (a_num / a_den) * (b_num / b_den)))
        lhs = term if s == 0 else lhs - term
    arg = (Sum("j", -k - 1, k, _L("j", 2 * k + 2)) - Sum("j", -k, k, _L("j", 2 * k + 1))
           - Sum("j", -k, k - 1, _L("j", 2 * k)) + Sum("j", 1 - k, k - 1, _L("j", 2 * k - 1)) - 1)
    return lhs, bracket(arg)


def _A(i):
    return sym("A", i)


def _B(i):
    return sym("B", i)


def _C(i):
    return sym("C", i)


def _D(i):
    return sym("D", i)


def _rhs24(n: int, with_prefactor: bool) -> Expr:
    ratio = (Prod("i", 1, n - 2, _D("i")) * Prod("i", 1, n + 1, _C("i"))
             / (Prod("i", 1, n - 1, _A("i")) * Prod("i", 1, n, _B("i"))))
    core = 1 - Q ** 2 * ratio
    return (Q - Q ** -1) * core if with_prefactor else core


@lru_cache(maxsize=None)
def build_eq24(n: int) -> tuple[Expr, Expr]:
    qm2, q2 = Q ** -2, Q ** 2
    t1 = (Q * Prod("i", 1, n, _A("j") - qm2 * _B("i"), skip=("l",))
          * Prod("i", 1, n - 2, _A("j") - qm2 * _D("i"))
          * Prod("i", 1, n + 1, _B("l") - _C("i"))
          * Prod("i", 1, n - 1, _B("l") - _A("i"), skip=("j",))
          / (_A("j") * _B("l")
             * Prod("i", 1, n - 1, (_A("j") - _A("i")) * (_A("j") - qm2 * _A("i")), skip=("j",))
             * Prod("i", 1, n, (_B("l") - _B("i")) * (_B("l") - qm2 * _B("i")), skip=("l",))))
    t2 = (Q ** -1 * Prod("i", 1, n, _A("j") - _B("i"), skip=("l",))
          * Prod("i", 1, n - 2, _A("j") - _D("i"))
          * Prod("i", 1, n + 1, _B("l") - q2 * _C("i"))
          * Prod("i", 1, n - 1, _B("l") - q2 * _A("i"), skip=("j",))
          / (_A("j") * _B("l")
             * Prod("i", 1, n - 1, (_A("j") - _A("i")) * (_A("j") - q2 * _A("i")), skip=("j",))
             * Prod("i", 1, n, (_B("l") - _B("i")) * (_B("l") - q2 * _B("i")), skip=("l",))))
    lhs = Sum("j", 1, n - 1, Sum("l", 1, n, t1)) - Sum("j", 1, n - 1, Sum("l", 1, n, t2))
    return lhs, _rhs24(n, True)


@lru_cache(maxsize=None)
def build_eq25(n: int) -> tuple[Expr, Expr]:
    qm2, q2 = Q ** -2, Q ** 2
    outer1 = (Q * Prod("i", 1, n, _A("j") - qm2 * _B("i"))
              * Prod("i", 1, n - 2, _A("j") - qm2 * _D("i"))
              / (_A("j") * Prod("i", 1, n - 1, (_A("j") - _A("i")) * (_A("j") - qm2 * _A("i")), skip=("j",))))
    inner1 = Sum("l", 1, n,
                 Prod("i", 1, n + 1, _B("l") - _C("i"))
                 * Prod("i", 1, n - 1, _B("l") - _A("i"), skip=("j",))
                 / ((_A("j") - qm2 * _B("l")) * _B("l")
                    * Prod("i", 1, n, (_B("l") - _B("i")) * (_B("l") - qm2 * _B("i")), skip=("l",))))
    outer2 = (Q ** -1 * Prod("i", 1, n + 1, _B("l") - q2 * _C("i"))
              * Prod("i", 1, n - 1, _B("l") - q2 * _A("i"))
              / (_B("l") * Prod("i", 1, n, (_B("l") - _B("i")) * (_B("l") - q2 * _B("i")), skip=("l",))))
    inner2 = Sum("j", 1, n - 1,
                 Prod("i", 1, n, _A("j") - _B("i"), skip=("l",))
                 * Prod("i", 1, n - 2, _A("j") - _D("i"))
                 / (_A("j") * (_B("l") - q2 * _A("j"))
                    * Prod("i", 1, n - 1, (_A("j") - _A("i")) * (_A("j") - q2 * _A("i")), skip=("j",))))
    lhs = Sum("j", 1, n - 1, outer1 * inner1) - Sum("l", 1, n, outer2 * inner2)
    return lhs, _rhs24(n, True)


def _build_eq28(n: int, w: int) -> tuple[Expr, Expr]:
    qm2, q2 = Q ** -2, Q ** 2
    t1 = Sum("j", 1, n - 1,
             Prod("i", 1, n - 2, _A("j") - qm2 * _D("i"))
             * Prod("i", 1, n + 1, _A("j") - qm2 * _C("i"))
             / (_A("j") * Prod("i", 1, n - 1, _A("j") - _A("i"), skip=("j",))
                * Prod("i", 1, n, _A("j") - Q ** -w * _B("i"))))
    t2 = Sum("l", 1, n,
             Prod("i", 1, n + 1, _B("l") - q2 * _C("i"))
             * Prod("i", 1, n - 2, _B("l") - q2 * _D("i"))
             / (_B("l") * Prod("i", 1, n, _B("l") - _B("i"), skip=("l",))
                * Prod("i", 1, n - 1, _B("l") - Q ** w * _A("i"))))
    return t1 + t2, _rhs24(n, False)


@lru_cache(maxsize=None)
def build_eq28(n: int) -> tuple[Expr, Expr]:
    return _build_eq28(n, 4)


@lru_cache(maxsize=None)
def build_eq28_printed(n: int) -> tuple[Expr, Expr]:
    return _build_eq28(n, 2)


@lru_cache(maxsize=None)
def build_eq30(n: int) -> tuple[Expr, Expr]:
    a, b, c = (lambda i: sym("a", i)), (lambda i: sym("b", i)), (lambda i: sym("c", i))
    first = (Prod("j", 1, n - 1, bracket(a("i") - b("j") - 1)) * Prod("j", 1, n - 1, bracket(a("i") - c("j") - 1))
             / Prod("j", 1, n, bracket(a("i") - a("j")) * bracket(a("i") - a("j") - 1), skip=("i",)))
    second = (Prod("j", 1, n - 1, bracket(a("i") - b("j"))) * Prod("j", 1, n - 1, bracket(a("i") - c("j")))
              / Prod("j", 1, n, bracket(a("i") - a("j")) * bracket(a("i") - a("j") + 1), skip=("i",)))
    return Sum("i", 1, n, first - second), 0


def _serre_kernels(a, b, c):
    x = (bracket(a - b - 1) * bracket(c - b - 1) - bracket(2) * bracket(a - b) * bracket(c - b - 1)
         + bracket(a - b) * bracket(c - b))
    y = (bracket(a - b - 1) * bracket(c - b - 1) - bracket(2) * bracket(a - b - 1) * bracket(c - b)
         + bracket(a - b) * bracket(c - b))
    return x, y


@lru_cache(maxsize=None)
def build_eq31(n: int = 0) -> tuple[Expr, Expr]:
    a, b, c, d, e = (sym(s) for s in "abcde")
    x, y = _serre_kernels(a, b, c)
    lhs = (x * (bracket(a - d) * bracket(c - e - 1) / (bracket(d - e - 1) * bracket(c - a - 1))
                + bracket(c - d - 1) * bracket(a - e) / (bracket(d - e + 1) * bracket(c - a - 1)))
           + y * (bracket(a - e - 1) * bracket(c - d) / (bracket(d - e - 1) * bracket(c - a + 1))
                  + bracket(a - d - 1) * bracket(c - e) / (bracket(d - e + 1) * bracket(c - a + 1))))
    return lhs, 0


@lru_cache(maxsize=None)
def build_eq32(n: int = 0) -> tuple[Expr, Expr]:
    a, b = sym("a"), sym("b")
    lhs = ((bracket(a - 1) * bracket(b - 1) - bracket(2) * bracket(a) * bracket(b - 1) + bracket(a) * bracket(b))
           / bracket(a - b + 1)
           + (bracket(a - 1) * bracket(b - 1) - bracket(2) * bracket(a - 1) * bracket(b) + bracket(a) * bracket(b))
           / bracket(a - b - 1))
    return lhs, 0


@lru_cache(maxsize=None)
def build_eq33(n: int = 0) -> tuple[Expr, Expr]:
    a = sym("a")
    return bracket(a - 1) - bracket(2) * bracket(a) + bracket(a + 1), 0


# -- admissibility ------------------------------------------------------------------


def _separated(vals, gap: int = 2) -> bool:
    return all(abs(x - y) >= gap for i, x in enumerate(vals) for y in vals[i + 1:])


def _distinct(vals) -> bool:
    return len(set(vals)) == len(vals)


def _check_lconfig(cfg: LConfig, rows: tuple[int, ...], tight: tuple[int, ...]) -> None:
    if set(cfg.rows) != set(rows):
        raise DegenerateConfig(f"expected rows {rows}, got {sorted(cfg.rows)}")
    for r in rows:
        lo, hi = row_range(r)
        if len(cfg.rows[r]) != hi - lo + 1:
            raise DegenerateConfig(f"row {r} needs {hi - lo + 1} entries")
        if not _distinct(cfg.rows[r]):
            raise DegenerateConfig(f"row {r} has repeated entries")
    for r in tight:
        if not _separated(cfg.rows[r]):
            raise DegenerateConfig(f"row {r} entries must differ by at least 2")


def _rows22(k):
    return (2 * k - 2, 2 * k - 1, 2 * k, 2 * k + 1), (2 * k - 1, 2 * k)


def _rows23(k):
    return (2 * k - 1, 2 * k, 2 * k + 1, 2 * k + 2), (2 * k, 2 * k + 1)


def _check_points(n: int, pt: PointConfig) -> None:
    sizes = {"A": n - 1, "B": n, "C": n + 1, "D": n - 2}
    for name, size in sizes.items():
        vals = pt.values.get(name, ())
        if len(vals) != size:
            raise DegenerateConfig(f"family {name} needs {size} values")
        if not _distinct(vals):
            raise DegenerateConfig(f"family {name} has repeated values")
    if any(x == 0 for x in pt.values["A"] + pt.values["B"]):
        raise DegenerateConfig("A and B values must be nonzero")


def _check_eq30(n: int, pt: PointConfig) -> None:
    a, b, c = pt.values["a"], pt.values["b"], pt.values["c"]
    if len(a) != n or len(b) != n - 1 or len(c) != n - 1:
        raise DegenerateConfig("eq30 needs |a| = n and |b| = |c| = n - 1")
    if not _separated(a):
        raise DegenerateConfig("eq30 needs |a_i - a_j| >= 2 for i != j")


def _check_eq31(pt: PointConfig) -> None:
    v = pt.values
    if abs(v["d"] - v["e"]) == 1 or abs(v["c"] - v["a"]) == 1:
        raise DegenerateConfig("eq31 needs d - e and c - a different from +-1")


def _check_eq32(pt: PointConfig) -> None:
    if abs(pt.values["a"] - pt.values["b"]) == 1:
        raise DegenerateConfig("eq32 needs a - b different from +-1")


@dataclass(frozen=True)
class Identity:
    name: str
    build: Callable
    check: Callable
    kind: str  # "lconfig" | "points" | "ints"
    bracketed: bool = True


IDENTITIES: dict[str, Identity] = {
    "eq22": Identity("eq22", build_eq22, lambda k, c: _check_lconfig(c, *_rows22(k)), "lconfig"),
    "eq23": Identity("eq23", build_eq23, lambda k, c: _check_lconfig(c, *_rows23(k)), "lconfig"),
    "eq24": Identity("eq24", build_eq24, _check_points, "points", False),
    "eq25": Identity("eq25", build_eq25, _check_points, "points", False),
    "eq28": Identity("eq28", build_eq28, _check_points, "points", False),
    "eq28_printed": Identity("eq28_printed", build_eq28_printed, _check_points, "points", False),
    "eq30": Identity("eq30", build_eq30, _check_eq30, "ints"),
    "eq31": Identity("eq31", build_eq31, lambda n, c: _check_eq31(c), "ints"),
    "eq32": Identity("eq32", build_eq32, lambda n, c: _check_eq32(c), "ints"),
    "eq33": Identity("eq33", build_eq33, lambda n, c: None, "ints"),
}


# -- evaluation ---------------------------------------------------------------------


@dataclass
class IdentityResult:
    identity: str
    size: int
    passed: bool
    mode: str
    lhs: object = None
    rhs: object = None


def _domain(mode: str, q=None, v0=None, rtol: float = 1e-9):
    if mode == "exact":
        return RatFunDomain()
    if mode == "rational":
        return FractionDomain(Fraction(7, 5) if q is None else q)
    if mode == "prime":
        return PrimeDomain(1234567891011 if q is None else q)
    if mode == "numeric":
        v0 = 1.1 if v0 is None else v0
        return ComplexDomain(complex(v0) ** 2 if q is None else q, rtol)
    raise ValueError(f"unknown mode {mode!r}")


def verify(identity: str, size: int, cfg, mode: str = "exact", *, q=None, v0=None,
           rtol: float = 1e-9, tree=None, corrupt: bool = False) -> IdentityResult:
    """Check one identity instance; raises :class:`DegenerateConfig` on bad input."""
    ident = IDENTITIES[identity]
    ident.check(size, cfg)
    lhs, rhs = tree if tree is not None else ident.build(size)
    if corrupt:
        rhs = rhs + 1
    dom = _domain(mode, q, v0, rtol)
    env = Env(cfg.env())
    try:
        lv = lhs.ev(env, dom, {}) if isinstance(lhs, Expr) else dom.const(lhs)
        rv = rhs.ev(env, dom, {}) if isinstance(rhs, Expr) else dom.const(rhs)
    except DegenerateError as exc:
        raise DegenerateConfig(f"{identity}: denominator vanishes ({exc})") from exc
    return IdentityResult(identity, size, dom.eq(lv, rv), mode, lv, rv)


def verify_eq22(k: int, cfg: LConfig, mode: str = "exact", **kw) -> IdentityResult:
    return verify("eq22", k, cfg, mode, **kw)


def verify_eq23(k: int, cfg: LConfig, mode: str = "exact", **kw) -> IdentityResult:
    return verify("eq23", k, cfg, mode, **kw)


def verify_eq24_25(n: int, pt: PointConfig, mode: str = "exact", **kw) -> tuple[IdentityResult, IdentityResult]:
    return verify("eq24", n, pt, mode, **kw), verify("eq25", n, pt, mode, **kw)


def verify_eq28(n: int, pt: PointConfig, mode: str = "exact", **kw) -> IdentityResult:
    return verify("eq28", n, pt, mode, **kw)


def verify_eq30(n: int, a, b, c, mode: str = "exact", **kw) -> IdentityResult:
    pt = PointConfig({"a": tuple(a), "b": tuple(b), "c": tuple(c)})
    return verify("eq30", n, pt, mode, **kw)


def verify_eq31(a, b, c, d, e, mode: str = "exact", **kw) -> IdentityResult:
    return verify("eq31", 0, PointConfig(dict(a=a, b=b, c=c, d=d, e=e)), mode, **kw)


def verify_eq32(a, b, mode: str = "exact", **kw) -> IdentityResult:
    return verify("eq32", 0, PointConfig(dict(a=a, b=b)), mode, **kw)


def verify_eq33(a, mode: str = "exact", **kw) -> IdentityResult:
    return verify("eq33", 0, PointConfig(dict(a=a)), mode, **kw)


# -- sampling ---------------------------------------------------------------------------


INT_RANGE = 12
RAT_BOUND = 64


def _rng(identity: str, size: int, seed) -> random.Random:
    return random.Random(f"{identity}:{size}:{seed}")


def _int_row(rng, length: int) -> tuple[int, ...]:
    return tuple(rng.sample(range(-INT_RANGE, INT_RANGE + 1), length))


def _rational(rng) -> Fraction:
    return Fraction(rng.randint(-RAT_BOUND, RAT_BOUND), rng.randint(1, RAT_BOUND))


def _sample_once(identity: str, size: int, rng: random.Random):
    ident = IDENTITIES[identity]
    if ident.kind == "lconfig":
        rows, _ = _rows22(size) if identity == "eq22" else _rows23(size)
        out = {}
        for r in rows:
            lo, hi = row_range(r)
            out[r] = _int_row(rng, hi - lo + 1)
        return LConfig(size, out)
    if ident.kind == "points":
        sizes = {"A": size - 1, "B": size, "C": size + 1, "D": size - 2}
        return PointConfig({name: tuple(_rational(rng) for _ in range(m)) for name, m in sizes.items()})
    ri = lambda: rng.randint(-INT_RANGE, INT_RANGE)  # noqa: E731
    if identity == "eq30":
        return PointConfig({"a": tuple(ri() for _ in range(size)),
                            "b": tuple(ri() for _ in range(size - 1)),
                            "c": tuple(ri() for _ in range(size - 1))})
    names = {"eq31": "abcde", "eq32": "ab", "eq33": "a"}[identity]
    return PointConfig({s: ri() for s in names})


def sample_config(identity: str, size: int, seed, max_tries: int = 1000):
    """A deterministic admissible configuration for ``identity`` at ``size``."""
    rng = _rng(identity, size, seed)
    ident = IDENTITIES[identity]
    for _ in range(max_tries):
        cfg = _sample_once(identity, size, rng)
        try:
            ident.check(size, cfg)
        except DegenerateConfig:
            continue
        return cfg
    raise SamplingExhausted(f"no admissible {identity} config of size {size} in {max_tries} tries")


# -- campaigns ---------------------------------------------------------------------------


@dataclass
class CampaignEntry:
    identity: str
    size: int
    trials: int
    status: str
    counterexample: dict | None = None
    millis: int = 0

    def to_json(self) -> dict:
        out = {"identity": self.identity, "size": self.size, "trials": self.trials, "status": self.status}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        out["millis"] = self.millis
        return out


@dataclass
class CampaignReport:
    entries: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if all(e.status == "pass" for e in self.entries) else "fail"

    def to_json(self) -> str:
        return json.dumps({"status": self.status, "entries": [e.to_json() for e in self.entries]},
                          indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CampaignReport":
        data = json.loads(text)
        return cls([CampaignEntry(**e) for e in data["entries"]])


DEFAULT_PLAN = (
    [("eq22", k, 50) for k in (1, 2)]
    + [("eq23", k, 50) for k in (1, 2)]
    + [(name, n, 100) for name in ("eq24", "eq25", "eq28") for n in (2, 3, 4)]
    + [("eq30", n, 100) for n in (2, 3)]
    + [(name, 0, 100) for name in ("eq31", "eq32", "eq33")]
)


def run_campaign(plan, seed=0, mode: str = "exact", deterministic: bool = False,
                 corrupt: bool = False) -> CampaignReport:
    """Run every ``(identity, size, trials)`` item; failures are recorded, not raised."""
    report = CampaignReport()
    for identity, size, trials in plan:
        t0 = time.perf_counter()
        status, ce = "pass", None
        for t in range(trials):
            cfg = sample_config(identity, size, f"{seed}:{t}")
            try:
                res = verify(identity, size, cfg, mode, corrupt=corrupt)
            except DegenerateConfig as exc:
                status, ce = "error", {"config": cfg.to_json(), "error": str(exc)}
                break
            if not res.passed:
                status, ce = "fail", {"trial": t, "config": cfg.to_json()}
                break
        millis = 0 if deterministic else int(1000 * (time.perf_counter() - t0))
        report.entries.append(CampaignEntry(identity, size, trials, status, ce, millis))
    return report


@dataclass
class MutationOutcome:
    position: int
    delta: int
    caught: bool
    samples_used: int
    vacuous: bool = False  # the bracket sits in an empty index range
    kind: str = "bracket"  # or "qpower" for identities without brackets


def mutation_control(identity: str, size: int, seed=0, samples: int = 20,
                     mode: str = "rational") -> list[MutationOutcome]:
    """Shift each bracket argument of the left side by +-1 and look for a mismatch.

    Identities whose left side has no brackets get the analogous corruption on the
    exponents of ``q`` instead, so every identity has a live control.
    """
    ident = IDENTITIES[identity]
    lhs, rhs = ident.build(size)
    cfgs = [sample_config(identity, size, f"mut:{seed}:{t}") for t in range(samples)]
    kind, mutations, live = "bracket", bracket_mutations(lhs), reached_brackets(lhs)
    if not live:
        kind, mutations, live = "qpower", qpower_mutations(lhs), reached_qpowers(lhs)
    out = []
    for pos, delta, mutated in mutations:
        if pos not in live:
            out.append(MutationOutcome(pos, delta, False, 0, vacuous=True, kind=kind))
            continue
        caught, used = False, 0
        for cfg in cfgs:
            used += 1
            try:
                res = verify(identity, size, cfg, mode, tree=(mutated, rhs))
            except DegenerateConfig:
                continue
            if not res.passed:
                caught = True
                break
        out.append(MutationOutcome(pos, delta, caught, used, kind=kind))
    return out
