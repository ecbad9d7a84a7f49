"""Signatures, C-patterns and the bases of the filtration ``V_1 ⊂ V_2 ⊂ ...``.

Row ``r`` of a pattern is written ``r = 2k + theta - 1`` with ``theta = 0``
for odd ``r`` and ``theta = 1`` for even ``r``; its entries carry the indices
``1 - theta - k, ..., k - 1`` (so row ``r`` has ``r`` entries).  Adjacent rows
interlace:

    M[i + theta - 1, r + 1]  >=  M[i, r]  >=  M[i + theta, r + 1]

and every row from some depth on coincides with the signature.  Entries are
stored as integer offsets against a base ``mu``; a pattern keeps only its rows
``1..R`` and all higher rows are implicit signature rows.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from pathlib import Path


def row_range(r: int) -> tuple[int, int]:
    """Inclusive index range of row ``r`` (row 0 is empty)."""
    if r <= 0:
        return 0, -1
    theta = 0 if r % 2 else 1
    k = (r + 1 - theta) // 2
    return 1 - theta - k, k - 1


def theta(i: int) -> int:
    """Step function: 1 for ``i >= 0`` and 0 otherwise."""
    return 1 if i >= 0 else 0


# -- weights ---------------------------------------------------------------------


@dataclass(frozen=True)
class WeightValue:
    """Exact affine form ``const + mu*[mu] + xi0*[xi0] + xi1*[xi1]``."""

    const: Fraction = Fraction(0)
    mu: Fraction = Fraction(0)
    xi0: Fraction = Fraction(0)
    xi1: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("const", "mu", "xi0", "xi1"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def of(cls, x) -> "WeightValue":
        return x if isinstance(x, WeightValue) else cls(Fraction(x))

    def __add__(self, o):
        o = WeightValue.of(o)
        return WeightValue(self.const + o.const, self.mu + o.mu, self.xi0 + o.xi0, self.xi1 + o.xi1)

    __radd__ = __add__

    def __neg__(self):
        return WeightValue(-self.const, -self.mu, -self.xi0, -self.xi1)

    def __sub__(self, o):
        return self + (-WeightValue.of(o))

    def __rsub__(self, o):
        return WeightValue.of(o) - self

    def __mul__(self, k):
        k = Fraction(k)
        return WeightValue(self.const * k, self.mu * k, self.xi0 * k, self.xi1 * k)

    __rmul__ = __mul__

    def is_pure(self) -> bool:
        return self.mu == 0 and self.xi0 == 0 and self.xi1 == 0

    def is_integer(self) -> bool:
        return self.is_pure() and self.const.denominator == 1

    def to_int(self) -> int:
        """The integer value; raises unless the form is a pure integer."""
        if not self.is_integer():
            raise ValueError(f"weight {self} is not an integer")
        return int(self.const)

    def __str__(self) -> str:
        parts = []
        for coef, name in ((self.mu, "mu"), (self.xi0, "xi0"), (self.xi1, "xi1")):
            if coef:
                parts.append(f"{coef}*{name}" if coef != 1 else name)
        if self.const or not parts:
            parts.insert(0, str(self.const))
        return " + ".join(parts).replace("+ -", "- ")


# -- signatures -------------------------------------------------------------------


SYMBOL = "sym"
AUTO = "auto"


def _value_spec(x, symbol: WeightValue) -> WeightValue:
    if isinstance(x, WeightValue):
        return x
    if isinstance(x, str) and x == SYMBOL:
        return symbol
    return WeightValue(Fraction(x))


@dataclass(frozen=True)
class Signature:
    """Finite signature: ``M_i = mu + offsets[i - m]`` for ``m <= i <= n``,
    constant below ``m`` and above ``n``."""

    m: int
    n: int
    offsets: tuple
    mu: object = 0
    xi0: object = AUTO
    xi1: object = AUTO

    def __post_init__(self):
        object.__setattr__(self, "offsets", tuple(int(c) for c in self.offsets))
        if self.m > self.n:
            raise ValueError(f"need m <= n, got m={self.m}, n={self.n}")
        if len(self.offsets) != self.n - self.m + 1:
            raise ValueError(f"expected {self.n - self.m + 1} offsets, got {len(self.offsets)}")
        if any(a < b for a, b in zip(self.offsets, self.offsets[1:])):
            raise ValueError("offsets must be non-increasing")

    @property
    def mu_value(self) -> WeightValue:
        if self.mu == SYMBOL:
            return WeightValue(mu=1)
        return WeightValue(Fraction(self.mu))

    def offset(self, i: int) -> int:
        if i <= self.m:
            return self.offsets[0]
        if i >= self.n:
            return self.offsets[-1]
        return self.offsets[i - self.m]

    def M(self, i: int) -> WeightValue:
        return self.mu_value + self.offset(i)

    @property
    def xi0_value(self) -> WeightValue:
        return self.M(self.m) if self.xi0 == AUTO else _value_spec(self.xi0, WeightValue(xi0=1))

    @property
    def xi1_value(self) -> WeightValue:
        return self.M(self.n) if self.xi1 == AUTO else _value_spec(self.xi1, WeightValue(xi1=1))

    @property
    def auto_xi(self) -> bool:
        return self.xi0 == AUTO and self.xi1 == AUTO

    def row(self, r: int) -> tuple[int, ...]:
        return _sig_row(self, r)

    def to_json(self) -> dict:
        def enc(x):
            return x if isinstance(x, str) else str(Fraction(x))

        return {"m": self.m, "n": self.n, "offsets": list(self.offsets),
                "mu": enc(self.mu), "xi0": enc(self.xi0), "xi1": enc(self.xi1)}

    @classmethod
    def from_json(cls, data: dict) -> "Signature":
        unknown = set(data) - {"m", "n", "offsets", "mu", "xi0", "xi1"}
        if unknown:
            raise ValueError(f"unknown signature keys: {sorted(unknown)}")

        def dec(x, default):
            if x is None:
                return default
            if isinstance(x, str) and x in (AUTO, SYMBOL):
                return x
            return Fraction(str(x))

        return make_signature(int(data["m"]), int(data["n"]), data["offsets"],
                              dec(data.get("mu"), 0), dec(data.get("xi0"), AUTO),
                              dec(data.get("xi1"), AUTO))

    def digest(self) -> str:
        text = json.dumps(self.to_json(), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()[:12]

    def label(self) -> str:
        return f"(m={self.m}, n={self.n}, offsets={list(self.offsets)}, mu={self.mu})"


def make_signature(m: int, n: int, offsets, mu=0, xi0=AUTO, xi1=AUTO) -> Signature:
    if isinstance(mu, (int, float)) and not isinstance(mu, bool):
        mu = Fraction(mu)
    return Signature(m, n, tuple(offsets), mu, xi0, xi1)


def load_signature(path) -> Signature:
    return Signature.from_json(json.loads(Path(path).read_text()))


def save_signature(sig: Signature, path) -> None:
    Path(path).write_text(json.dumps(sig.to_json(), indent=2, sort_keys=True) + "\n")


@lru_cache(maxsize=4096)
def _sig_row(sig: Signature, r: int) -> tuple[int, ...]:
    lo, hi = row_range(r)
    return tuple(sig.offset(i) for i in range(lo, hi + 1))


# -- patterns ---------------------------------------------------------------------


class CPattern:
    """A C-pattern; ``rows[r - 1]`` holds the offsets of row ``r``."""

    __slots__ = ("sig", "rows", "_hash")

    def __init__(self, sig: Signature, rows):
        rows = [tuple(int(x) for x in row) for row in rows]
        while len(rows) > 1 and rows[-1] == sig.row(len(rows)):
            rows.pop()
        if not rows:
            rows = [sig.row(1)]
        self.sig = sig
        self.rows = tuple(rows)
        self._hash = None

    @classmethod
    def _trusted(cls, sig: Signature, rows: tuple) -> "CPattern":
        obj = object.__new__(cls)
        obj.sig = sig
        obj.rows = rows
        obj._hash = None
        return obj

    @property
    def depth(self) -> int:
        return len(self.rows)

    def row(self, r: int) -> tuple[int, ...]:
        if r <= 0:
            return ()
        if r <= len(self.rows):
            return self.rows[r - 1]
        return self.sig.row(r)

    def entry(self, i: int, r: int) -> int:
        lo, hi = row_range(r)
        if not lo <= i <= hi:
            raise IndexError(f"index {i} outside row {r} ({lo}..{hi})")
        if r <= len(self.rows):
            return self.rows[r - 1][i - lo]
        return self.sig.offset(i)

    def __eq__(self, other) -> bool:
        return isinstance(other, CPattern) and self.rows == other.rows and self.sig == other.sig

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __lt__(self, other: "CPattern") -> bool:
        return sort_key(self) < sort_key(other)

    def __repr__(self) -> str:
        return "CPattern(" + "; ".join(",".join(map(str, r)) for r in self.rows) + ")"


def sort_key(p: CPattern, depth: int | None = None) -> tuple:
    d = max(depth or 0, p.depth)
    return tuple(p.row(r) for r in range(1, d + 1))


def entry(p: CPattern, i: int, r: int) -> int:
    return p.entry(i, r)


def l_value(p: CPattern, i: int, r: int) -> WeightValue:
    """``L = M - i`` as an affine value (the base ``mu`` included)."""
    return p.sig.mu_value + (p.entry(i, r) - i)


def highest_weight(sig: Signature) -> CPattern:
    return CPattern._trusted(sig, (sig.row(1),))


def _pair_violations(lower: tuple, upper: tuple, r: int) -> list[tuple[int, str]]:
    """Interlacing failures between row ``r`` (``lower``) and row ``r + 1``."""
    th = 0 if r % 2 else 1
    lo, _ = row_range(r)
    ulo, _ = row_range(r + 1)
    out = []
    for pos, x in enumerate(lower):
        i = lo + pos
        left = upper[i + th - 1 - ulo]
        right = upper[i + th - ulo]
        if x > left:
            out.append((i, f"M[{i},{r}]={x} exceeds M[{i + th - 1},{r + 1}]={left}"))
        if x < right:
            out.append((i, f"M[{i},{r}]={x} is below M[{i + th},{r + 1}]={right}"))
    return out


def _pair_ok(lower: tuple, upper: tuple, r: int) -> bool:
    th = 0 if r % 2 else 1
    lo, _ = row_range(r)
    ulo, _ = row_range(r + 1)
    shift = lo + th - ulo
    for pos, x in enumerate(lower):
        if x > upper[pos + shift - 1] or x < upper[pos + shift]:
            return False
    return True


def validate(p: CPattern) -> list[str]:
    """Human-readable violations; empty exactly when ``p`` is a C-pattern."""
    out = []
    for r in range(1, p.depth + 1):
        if len(p.rows[r - 1]) != r:
            out.append(f"row {r} has {len(p.rows[r - 1])} entries, expected {r}")
            return out
    for r in range(1, p.depth + 1):
        for _, msg in _pair_violations(p.row(r), p.row(r + 1), r):
            out.append(f"rows ({r},{r + 1}): {msg}")
    if p.depth > 1 and p.rows[-1] == p.sig.row(p.depth):
        out.append(f"not normalised: stored row {p.depth} equals the signature row")
    return out


def is_valid(p: CPattern) -> bool:
    return all(_pair_ok(p.row(r), p.row(r + 1), r) for r in range(1, p.depth + 1))


def shift_many(p: CPattern, changes) -> CPattern | None:
    """Apply ``(i, r, delta)`` changes; None when the result is not a C-pattern."""
    top = max(r for _, r, _ in changes)
    depth = max(top, p.depth)
    rows = [list(p.row(r)) for r in range(1, depth + 1)]
    touched = set()
    for i, r, d in changes:
        lo, hi = row_range(r)
        if not lo <= i <= hi:
            raise IndexError(f"index {i} outside row {r}")
        rows[r - 1][i - lo] += d
        touched.add(r)
    rows_t = [tuple(x) for x in rows]

    def get(r):
        return rows_t[r - 1] if r <= depth else p.sig.row(r)

    checks = set()
    for r in touched:
        checks.add(r)
        if r > 1:
            checks.add(r - 1)
    for r in checks:
        if not _pair_ok(get(r), get(r + 1), r):
            return None
    while len(rows_t) > 1 and rows_t[-1] == p.sig.row(len(rows_t)):
        rows_t.pop()
    return CPattern._trusted(p.sig, tuple(rows_t))


def shift(p: CPattern, j: int, r: int, delta: int) -> CPattern | None:
    return shift_many(p, [(j, r, delta)])


def depth_requirement(p: CPattern) -> int:
    """Smallest ``N >= 2`` with every row ``r >= N`` equal to the signature row."""
    return p.depth + 1


@lru_cache(maxsize=256)
def _enumerate(sig: Signature, N: int) -> tuple[CPattern, ...]:
    if N <= 1:
        return (highest_weight(sig),)
    found = []

    def rec(r: int, upper: tuple, acc: list):
        if r == 0:
            found.append(tuple(reversed(acc)))
            return
        th = 0 if r % 2 else 1
        lo, hi = row_range(r)
        ulo, _ = row_range(r + 1)
        choices = [range(upper[i + th - ulo], upper[i + th - 1 - ulo] + 1) for i in range(lo, hi + 1)]
        for row in product(*choices):
            acc.append(row)
            rec(r - 1, row, acc)
            acc.pop()

    rec(N - 1, sig.row(N), [])
    pats = {CPattern(sig, rows) for rows in found}
    return tuple(sorted(pats, key=lambda p: sort_key(p, N)))


def enumerate_basis(sig: Signature, N: int) -> list[CPattern]:
    """Basis of ``V_N``: patterns whose rows ``>= N`` are signature rows."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return list(_enumerate(sig, N))


def basis_index(sig: Signature, N: int) -> dict[CPattern, int]:
    return _basis_index(sig, N)


@lru_cache(maxsize=256)
def _basis_index(sig: Signature, N: int) -> dict:
    return {p: k for k, p in enumerate(_enumerate(sig, N))}


def row_sum(p: CPattern, r: int) -> WeightValue:
    return p.sig.mu_value * r + sum(p.row(r))


def weight(p: CPattern, i: int) -> WeightValue:
    """Eigenvalue of ``h_i`` on ``p``."""
    a, t = abs(i), theta(i)
    upper = 2 * a + t
    sig = p.sig
    w = row_sum(p, upper) - row_sum(p, upper - 1)
    return w + (sig.xi1_value - sig.xi0_value) * theta(-i) - sig.xi1_value


def central_charge(sig: Signature) -> WeightValue:
    """Eigenvalue of the central element ``c``: ``xi0 - xi1``."""
    return sig.xi0_value - sig.xi1_value


# -- text formats -------------------------------------------------------------------


def pattern_to_text(p: CPattern, sig_ref: str = "-") -> str:
    lines = [f"depth {p.depth} sig {sig_ref}"]
    for r in range(p.depth, 0, -1):
        lines.append(" ".join(str(x) for x in p.row(r)))
    return "\n".join(lines) + "\n"


def pattern_from_text(text: str, sig: Signature) -> CPattern:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty pattern text")
    head = lines[0].split()
    if len(head) < 2 or head[0] != "depth":
        raise ValueError("pattern text must start with 'depth R sig <file>'")
    R = int(head[1])
    body = lines[1:]
    if len(body) != R:
        raise ValueError(f"header announces {R} rows but {len(body)} follow")
    rows = [tuple(int(x) for x in ln.split()) for ln in reversed(body)]
    for r, row in enumerate(rows, start=1):
        if len(row) != r:
            raise ValueError(f"row {r} must have {r} entries")
    return CPattern(sig, rows)
