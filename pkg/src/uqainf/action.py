"""The representation on C-patterns: ``e_k``, ``f_k``, ``h_k``, ``c`` and words in them.

Matrix elements are exact radical scalars.  Every coefficient has the shape
``sign * sqrt(|prod [a] / prod [b]|)`` for integer bracket arguments ``a, b``
built from differences ``L[i, r] - L[j, s]`` with ``L[i, r] = M[i, r] - i``;
the base ``mu`` cancels in each such difference.  A term whose shifted pattern
breaks the interlacing conditions is dropped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .patterns import (CPattern, Signature, WeightValue, central_charge, enumerate_basis,
                       highest_weight, row_range, shift_many, theta, weight)
from .qarith import (RadicalScalar, RatFun, eval_numeric, parse_text,
                     rad_from_brackets, to_text)

# How ``e_{-1}`` and ``f_{-1}`` move the single entry ``M[0, 1]``.
ORIENTATIONS = {
    "resolved": (-1, +1),
    "literal": (+1, -1),
}


def _orient(orientation) -> tuple[int, int]:
    if isinstance(orientation, tuple):
        return orientation
    try:
        return ORIENTATIONS[orientation]
    except KeyError:
        raise ValueError(f"unknown orientation {orientation!r}") from None


def _S(j: int, l: int, nu: int) -> int:
    if j == l:
        return -1 if nu % 2 else 1
    return 1 if j < l else -1


# -- linear combinations ---------------------------------------------------------


class LinComb:
    """Finite combination of C-patterns with exact radical coefficients."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, terms: dict | None = None):
        self.sig = sig
        self.terms = {p: c for p, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def _trusted(cls, sig, terms):
        obj = object.__new__(cls)
        obj.sig = sig
        obj.terms = terms
        return obj

    @classmethod
    def basis(cls, p: CPattern) -> "LinComb":
        return cls._trusted(p.sig, {p: RadicalScalar.one()})

    @classmethod
    def zero(cls, sig: Signature) -> "LinComb":
        return cls._trusted(sig, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coefficient(self, p: CPattern) -> RadicalScalar:
        return self.terms.get(p, RadicalScalar.zero())

    def _merge(self, other: "LinComb", sign: int) -> "LinComb":
        out = dict(self.terms)
        for p, c in other.terms.items():
            if p in out:
                s = out[p] + c if sign > 0 else out[p] - c
                if s.is_zero():
                    del out[p]
                else:
                    out[p] = s
            else:
                out[p] = c if sign > 0 else -c
        return LinComb._trusted(self.sig, out)

    def __add__(self, other: "LinComb") -> "LinComb":
        return self._merge(other, 1)

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self._merge(other, -1)

    def __neg__(self) -> "LinComb":
        return LinComb._trusted(self.sig, {p: -c for p, c in self.terms.items()})

    def scale(self, c) -> "LinComb":
        if not isinstance(c, RadicalScalar):
            c = RadicalScalar.from_ratfun(c)
        if c.is_zero():
            return LinComb.zero(self.sig)
        out = {}
        for p, d in self.terms.items():
            e = d * c
            if not e.is_zero():
                out[p] = e
        return LinComb._trusted(self.sig, out)

    __mul__ = scale
    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def weight_profile(self, indices) -> dict | None:
        """Common weights ``{i: w}`` of all terms, or None for a mixed combination."""
        prof = None
        for p in self.terms:
            here = {i: weight(p, i) for i in indices}
            if prof is None:
                prof = here
            elif here != prof:
                return None
        return prof or {}

    def numeric(self, v0: float) -> dict:
        return {p: eval_numeric(c, v0) for p, c in self.terms.items()}

    def __repr__(self) -> str:
        if not self.terms:
            return "LinComb(0)"
        parts = [f"({to_text(c)})*{p!r}" for p, c in self.terms.items()]
        return "LinComb(" + " + ".join(parts) + ")"


# -- matrix elements -----------------------------------------------------------------


class Term:
    """One raw term of ``e_k`` or ``f_k`` before the deletion rule.

    The bracket arguments are produced on demand: most terms of a large-index
    generator land on invalid patterns and never need them.
    """

    __slots__ = ("changes", "sign", "_build", "_data")

    def __init__(self, changes: tuple, sign: int, build):
        self.changes, self.sign, self._build, self._data = changes, sign, build, None

    def _get(self):
        if self._data is None:
            num, den = self._build()
            self._data = (tuple(num), tuple(den))
        return self._data

    @property
    def num(self) -> tuple:
        return self._get()[0]

    @property
    def den(self) -> tuple:
        return self._get()[1]


def _raw_terms(kind: str, k: int, p: CPattern, orientation):
    """Yield every raw term of ``e_k`` (``kind='e'``) or ``f_k`` on ``p``."""

    def L(i, r):
        return p.entry(i, r) - i

    up = 1 if kind == "e" else -1
    if k >= 0:
        # e raises rows 2k+1, 2k+2 and f lowers them; the +-1 shifts swap
        a = -1 if kind == "e" else 0
        b = 0 if kind == "e" else 1

        def build(j, l):
            Lj, Ll = L(j, 2 * k + 1), L(l, 2 * k + 2)
            num = [L(i, 2 * k + 2) - Lj + a for i in range(-k - 1, k + 1) if i != l]
            num += [L(i, 2 * k) - Lj + a for i in range(-k, k)]
            num += [L(i, 2 * k + 3) - Ll + b for i in range(-k - 1, k + 2)]
            num += [L(i, 2 * k + 1) - Ll + b for i in range(-k, k + 1) if i != j]
            den = []
            for i in range(-k, k + 1):
                if i != j:
                    d = L(i, 2 * k + 1) - Lj
                    den += [d, d - up]
            for i in range(-k - 1, k + 1):
                if i != l:
                    d = L(i, 2 * k + 2) - Ll
                    den += [d, d - up]
            return num, den

        for j in range(-k, k + 1):
            for l in range(-k - 1, k + 1):
                changes = ((j, 2 * k + 1, up), (l, 2 * k + 2, up))
                yield Term(changes, -_S(j, l, 0), lambda j=j, l=l: build(j, l))
    elif k == -1:
        e_delta, f_delta = _orient(orientation)
        delta = e_delta if kind == "e" else f_delta
        if kind == "e":
            num = (L(-1, 2) - L(0, 1), L(0, 1) - L(0, 2))
        else:
            num = (L(-1, 2) - L(0, 1) - 1, L(0, 1) - L(0, 2) + 1)
        yield Term(((0, 1, delta),), 1, lambda: (num, ()))
    else:
        kk = -k
        # e lowers rows 2kk-2, 2kk-1 and f raises them
        a = 1 if kind == "e" else 0
        b = 0 if kind == "e" else -1
        low = -up

        def build(j, l):
            Lj, Ll = L(j, 2 * kk - 2), L(l, 2 * kk - 1)
            num = [L(i, 2 * kk - 1) - Lj + a for i in range(-kk + 1, kk) if i != l]
            num += [L(i, 2 * kk - 3) - Lj + a for i in range(2 - kk, kk - 1)]
            num += [L(i, 2 * kk) - Ll + b for i in range(-kk, kk)]
            num += [L(i, 2 * kk - 2) - Ll + b for i in range(-kk + 1, kk - 1) if i != j]
            den = []
            for i in range(-kk + 1, kk - 1):
                if i != j:
                    d = L(i, 2 * kk - 2) - Lj
                    den += [d, d - low]
            for i in range(-kk + 1, kk):
                if i != l:
                    d = L(i, 2 * kk - 1) - Ll
                    den += [d, d - low]
            return num, den

        for j in range(-kk + 1, kk - 1):
            for l in range(-kk + 1, kk):
                changes = ((j, 2 * kk - 2, low), (l, 2 * kk - 1, low))
                yield Term(changes, -_S(j, l, 1), lambda j=j, l=l: build(j, l))


@dataclass(frozen=True)
class MatrixElement:
    source: CPattern
    target: CPattern
    sign: int
    num: tuple
    den: tuple
    coefficient: RadicalScalar


_CACHE: dict = {}


def clear_cache() -> None:
    _CACHE.clear()


def emitted_elements():
    """Every matrix element computed so far (the memo of ``e``/``f`` applications)."""
    for elements in _CACHE.values():
        yield from elements


def _apply(kind: str, k: int, p: CPattern, orientation) -> tuple:
    key = (kind, k, p, orientation)
    hit = _CACHE.get(key)
    if hit is None:
        hit = _CACHE[key] = _compute(kind, k, p, orientation)
    return hit


def _locally_valid(p: CPattern, changes) -> bool:
    """Interlacing around the changed entries only (the rest of ``p`` is valid)."""
    mods = {(i, r): p.entry(i, r) + d for i, r, d in changes}

    def get(i, r):
        x = mods.get((i, r))
        return p.entry(i, r) if x is None else x

    for (i, r), x in mods.items():
        th = 0 if r % 2 else 1
        if x > get(i + th - 1, r + 1) or x < get(i + th, r + 1):
            return False
        if r > 1:
            th1 = 0 if (r - 1) % 2 else 1
            lo, hi = row_range(r - 1)
            for i1 in (i - th1, i - th1 + 1):
                if lo <= i1 <= hi:
                    y = get(i1, r - 1)
                    if y > get(i1 + th1 - 1, r) or y < get(i1 + th1, r):
                        return False
    return True


def _compute(kind: str, k: int, p: CPattern, orientation) -> tuple:
    elements = []
    for t in _raw_terms(kind, k, p, orientation):
        target = shift_many(p, t.changes) if _locally_valid(p, t.changes) else None
        if target is None or 0 in t.num:
            continue
        if 0 in t.den:
            raise ZeroDivisionError(f"{kind}({k}) on {p!r}: vanishing denominator for a valid target")
        coef = rad_from_brackets(t.num, t.den, t.sign)
        elements.append(MatrixElement(p, target, t.sign, t.num, t.den, coef))
    return tuple(elements)


def deletion_notes(kind: str, k: int, p: CPattern, orientation="resolved") -> list[str]:
    """Terms dropped for an invalid target although their coefficient is nonzero."""
    notes = []
    for t in _raw_terms(kind, k, p, orientation):
        if _locally_valid(p, t.changes) and shift_many(p, t.changes) is not None:
            continue
        if 0 not in t.num and 0 not in t.den:
            notes.append(f"{kind}({k}) on {p!r}: dropped target {t.changes} with nonzero coefficient")
    return notes


def matrix_elements(kind: str, k: int, p: CPattern, orientation="resolved") -> tuple:
    """Every surviving term of ``e_k`` or ``f_k`` on ``p`` with its bracket data."""
    if kind not in ("e", "f"):
        raise ValueError("kind must be 'e' or 'f'")
    return _apply(kind, k, p, orientation)


def _lincomb(kind, k, p, orientation) -> LinComb:
    return LinComb._trusted(p.sig, {m.target: m.coefficient for m in _apply(kind, k, p, orientation)})


def apply_e(k: int, p: CPattern, orientation="resolved") -> LinComb:
    return _lincomb("e", k, p, orientation)


def apply_f(k: int, p: CPattern, orientation="resolved") -> LinComb:
    return _lincomb("f", k, p, orientation)


def apply_f_closedform(k: int, p: CPattern) -> LinComb:
    """Single-term form of ``f_k`` valid once rows ``>= 2k`` are signature rows."""
    is_hw = p == highest_weight(p.sig)
    if k < 0 or not (is_hw or p.depth < 2 * k):
        raise ValueError(f"closed form needs k >= 0 and rows >= 2k on the signature (k={k}, depth={p.depth})")
    sig = p.sig
    gap = sig.offset(k + 1) - sig.offset(k)
    if gap == 0:
        return LinComb.zero(sig)
    target = shift_many(p, [(k, 2 * k + 1, -1), (k, 2 * k + 2, -1)])
    if target is None:
        return LinComb.zero(sig)
    return LinComb._trusted(sig, {target: rad_from_brackets((gap,), (), -1)})


def apply_h(i: int, p: CPattern) -> tuple[WeightValue, CPattern]:
    return weight(p, i), p


def apply_c(p: CPattern) -> tuple[WeightValue, CPattern]:
    return central_charge(p.sig), p


def gl_H(i: int, p: CPattern) -> WeightValue:
    """Eigenvalue of the ``gl`` Cartan element ``H_i``."""
    sig = p.sig
    return weight(p, i) + (sig.xi0_value - sig.xi1_value) * theta(-i) + sig.xi1_value


# -- words ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Gen:
    """A generator symbol.

    ``kind`` is one of ``e``, ``f``, ``h``, ``c``, ``vpow`` and ``qbracket``.  For the
    last two, ``lin`` holds ``(i, coef)`` pairs and ``ccoef`` the coefficient of
    ``c``; the affine weight ``x = sum coef * h_i + ccoef * c`` acts diagonally as
    ``v**x`` (``vpow``) or as ``[x]`` (``qbracket``).
    """

    kind: str
    index: int = 0
    lin: tuple = ()
    ccoef: Fraction = Fraction(0)

    def __str__(self) -> str:
        if self.kind in ("e", "f", "h"):
            return f"{self.kind}({self.index})"
        if self.kind == "c":
            return "c"
        inner = " + ".join(f"{c}*h({i})" for i, c in self.lin)
        if self.ccoef:
            inner += f" + {self.ccoef}*c"
        return f"{self.kind}({inner})"


def e(k: int) -> Gen:
    return Gen("e", k)


def f(k: int) -> Gen:
    return Gen("f", k)


def h(k: int) -> Gen:
    return Gen("h", k)


C = Gen("c")


def vpow(lin, ccoef=0) -> Gen:
    return Gen("vpow", 0, tuple(lin), Fraction(ccoef))


def qbracket_of(lin, ccoef=0) -> Gen:
    return Gen("qbracket", 0, tuple(lin), Fraction(ccoef))


def _scalar(c) -> RadicalScalar:
    return c if isinstance(c, RadicalScalar) else RadicalScalar.from_ratfun(c)


@dataclass(frozen=True)
class OperatorWord:
    """A linear combination of generator strings; strings act right to left."""

    terms: tuple = field(default_factory=tuple)

    @classmethod
    def of(cls, *gens, coef=1) -> "OperatorWord":
        return cls(((_scalar(coef), tuple(gens)),))

    @classmethod
    def identity(cls) -> "OperatorWord":
        return cls.of()

    def __mul__(self, other):
        if isinstance(other, OperatorWord):
            return OperatorWord(tuple((c1 * c2, g1 + g2) for c1, g1 in self.terms for c2, g2 in other.terms))
        c = _scalar(other)
        return OperatorWord(tuple((c1 * c, g) for c1, g in self.terms))

    def __rmul__(self, other):
        return self * other

    def __add__(self, other: "OperatorWord") -> "OperatorWord":
        return OperatorWord(self.terms + other.terms)

    def __neg__(self) -> "OperatorWord":
        return OperatorWord(tuple((-c, g) for c, g in self.terms))

    def __sub__(self, other: "OperatorWord") -> "OperatorWord":
        return self + (-other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({to_text(c)})*" + "".join(str(g) for g in gens) for c, gens in self.terms)


def commutator(x: OperatorWord, y: OperatorWord, q=None) -> OperatorWord:
    """``x y - q y x``; ``q=None`` means the plain commutator."""
    if q is None:
        return x * y - y * x
    return x * y - (y * x) * q


Q = RatFun.monomial(2)


def _affine_value(p: CPattern, lin, ccoef) -> WeightValue:
    x = WeightValue()
    for i, c in lin:
        x = x + weight(p, i) * c
    if ccoef:
        x = x + central_charge(p.sig) * ccoef
    return x


def _pure(w: WeightValue, what: str) -> Fraction:
    if not w.is_pure():
        raise ValueError(f"{what} has a symbolic part ({w}); it cannot act as a scalar")
    return w.const


def apply_gen(g: Gen, x: LinComb, orientation="resolved") -> LinComb:
    out = LinComb.zero(x.sig)
    if g.kind in ("e", "f"):
        for p, c in x.terms.items():
            out = out + _lincomb(g.kind, g.index, p, orientation).scale(c)
        return out
    terms = {}
    for p, c in x.terms.items():
        if g.kind == "h":
            s = RatFun.const(_pure(weight(p, g.index), f"weight h({g.index})"))
        elif g.kind == "c":
            s = RatFun.const(_pure(central_charge(p.sig), "central charge"))
        else:
            w = _affine_value(p, g.lin, g.ccoef)
            if not w.is_integer():
                raise ValueError(f"non-integer diagonal exponent {w} on {p!r}")
            n = w.to_int()
            s = RatFun.monomial(n) if g.kind == "vpow" else RatFun.bracket(n)
        if s.is_zero():
            continue
        terms[p] = c.scale(s)
    return LinComb._trusted(x.sig, terms)


def apply_word(w: OperatorWord, x, orientation="resolved") -> LinComb:
    """Apply ``w`` to a LinComb (or a single pattern)."""
    if isinstance(x, CPattern):
        x = LinComb.basis(x)
    out = LinComb.zero(x.sig)
    for coef, gens in w.terms:
        y = x
        for g in reversed(gens):
            if y.is_zero():
                break
            y = apply_gen(g, y, orientation)
        out = out + y.scale(coef)
    return out


def hat_generator(kind: str, i: int) -> OperatorWord:
    """``e_i q^{(h_{i+1} - h_i)/2}`` or ``f_i q^{(h_i - h_{i+1})/2}`` as a word."""
    if kind == "e":
        return OperatorWord.of(e(i), vpow(((i + 1, 1), (i, -1))))
    if kind == "f":
        return OperatorWord.of(f(i), vpow(((i, 1), (i + 1, -1))))
    raise ValueError("kind must be 'e' or 'f'")


def weyl_generator(i: int, j: int) -> OperatorWord:
    """The generator ``e_{ij}`` as nested q-commutators of hat generators."""
    if i == j:
        return OperatorWord.of(h(i))
    kind, lo, hi = ("e", i, j) if i < j else ("f", j, i)
    word = hat_generator(kind, hi - 1)
    for s in range(hi - 2, lo - 1, -1):
        word = commutator(hat_generator(kind, s), word, Q)
    return word


# -- diagonal series and support data ---------------------------------------------


@dataclass(frozen=True)
class SeriesPartial:
    value: WeightValue
    status: str  # "stabilized", "divergent" or "undetermined"
    bound: int
    T: int


def series_bound(p: CPattern) -> int:
    """Index from which the symmetric increments ``w(t) + w(-t)`` are constant."""
    sig = p.sig
    rows = 0 if p == highest_weight(sig) else p.depth
    return max(1, (rows + 2) // 2, -sig.m, sig.n)


def series_I_partial(p: CPattern, T: int) -> SeriesPartial:
    """Partial sum of the weights of ``h_i`` over ``|i| <= T`` with a convergence verdict."""
    if T < 0:
        raise ValueError("T must be non-negative")
    total = weight(p, 0)
    last = total
    for t in range(1, T + 1):
        last = weight(p, t) + weight(p, -t)
        total = total + last
    B = series_bound(p)
    if T < B:
        status = "undetermined"
    elif last == WeightValue():
        status = "stabilized"
    else:
        status = "divergent"
    return SeriesPartial(total, status, B, T)


def locality_radius(N: int, sig: Signature) -> int:
    if N < 1:
        raise ValueError("N must be at least 1")
    return max(math.ceil(Fraction(N + 3, 2)), 1 - sig.m, sig.n)


@dataclass(frozen=True)
class SeriesSupport:
    alpha: dict
    gamma: dict

    def support(self) -> set[int]:
        return {i for d in (self.alpha, self.gamma) for i, m in d.items() if m}


def support_components(s) -> list[list[int]]:
    """Maximal runs of consecutive integers in the support."""
    pts = sorted(s.support() if isinstance(s, SeriesSupport) else set(s))
    out: list[list[int]] = []
    for i in pts:
        if out and i == out[-1][1] + 1:
            out[-1][1] = i
        else:
            out.append([i, i])
    return out


# -- matrices ---------------------------------------------------------------------------


def target_depth(kind: str, k: int, N: int) -> int:
    if kind in ("e", "f"):
        return max(N, 2 * abs(k) + 3)
    return N


@dataclass
class SparseMatrix:
    gen: str
    sig: Signature
    N: int
    source: list
    target: list
    entries: dict  # (row, col) -> RadicalScalar or complex

    @property
    def dim(self) -> int:
        return len(self.source)

    def dense(self, v0: float | None = None):
        import numpy as np

        out = np.zeros((len(self.target), len(self.source)), dtype=complex)
        for (r, c), x in self.entries.items():
            out[r, c] = x if v0 is None else eval_numeric(x, v0)
        return out


def parse_gen(spec: str) -> tuple[str, int]:
    """``'e0'``, ``'f-2'``, ``'h1'`` or ``'c'`` to ``(kind, index)``."""
    spec = spec.strip()
    if spec == "c":
        return "c", 0
    kind, rest = spec[0], spec[1:].strip("() ")
    if kind not in "efh" or not rest.lstrip("-").isdigit():
        raise ValueError(f"bad generator {spec!r}")
    return kind, int(rest)


def build_matrix(gen: str, sig: Signature, N: int, orientation="resolved") -> SparseMatrix:
    kind, k = parse_gen(gen)
    source = enumerate_basis(sig, N)
    target = enumerate_basis(sig, target_depth(kind, k, N))
    index = {p: n for n, p in enumerate(target)}
    entries = {}
    for col, p in enumerate(source):
        y = apply_gen(Gen(kind, k), LinComb.basis(p), orientation)
        for t, c in y.terms.items():
            entries[(index[t], col)] = c
    return SparseMatrix(gen, sig, N, source, target, entries)


def matrix_to_text(mat: SparseMatrix, mode: str = "exact", v0: float = 1.1) -> str:
    lines = [f"matrix {mat.gen} sig={mat.sig.digest()} N={mat.N} dim={mat.dim}"]
    for (r, c) in sorted(mat.entries):
        x = mat.entries[(r, c)]
        if mode == "numeric":
            z = eval_numeric(x, v0)
            lines.append(f"{r} {c} {z.real!r} {z.imag!r}")
        else:
            lines.append(f"{r} {c} {to_text(x)}")
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str, numeric: bool = False) -> tuple[dict, dict]:
    """Parse an export into ``(header, {(row, col): value})``."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "matrix":
        raise ValueError("missing matrix header")
    header = {"gen": head[1]}
    for item in head[2:]:
        key, val = item.split("=", 1)
        header[key] = val if key == "sig" else int(val)
    entries = {}
    for ln in lines[1:]:
        r, c, rest = ln.split(" ", 2)
        if numeric:
            re_, im_ = rest.split()
            entries[(int(r), int(c))] = complex(float(re_), float(im_))
        else:
            entries[(int(r), int(c))] = parse_text(rest)
    return header, entries


def classical_square(m: MatrixElement) -> Fraction:
    """The matrix element squared with every ``[x]`` replaced by ``x``."""
    num = math.prod(m.num) if m.num else 1
    den = math.prod(m.den) if m.den else 1
    return abs(Fraction(num, den))
