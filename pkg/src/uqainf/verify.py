"""Relation suites for the representation, with machine-readable reports.

Every check walks the basis of ``V_N`` for each signature of a battery and
applies a *residual word* that must annihilate each basis vector.  In exact
mode residuals are exact ``LinComb`` values; in numeric mode the matrix
elements are re-evaluated in floating point straight from their bracket
arguments (independently of the radical arithmetic) at each ``v`` sample.
"""
from __future__ import annotations

import hashlib
import json
import math
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import action as act
from .action import (C, Gen, LinComb, OperatorWord, apply_f, apply_f_closedform, apply_word,
                     classical_square, e, emitted_elements, f, gl_H, h, locality_radius,
                     matrix_elements, qbracket_of, series_I_partial)
from .patterns import (AUTO, CPattern, Signature, WeightValue, central_charge, enumerate_basis,
                       highest_weight, make_signature, theta, validate, weight)

BATTERY = (
    make_signature(0, 0, [0]),
    make_signature(-1, 0, [1, 0]),
    make_signature(0, 1, [1, 0]),
    make_signature(-1, 1, [2, 1, 0]),
    make_signature(-1, 0, [3, 0], mu=Fraction(1, 2)),
)

SUITES = ("cartan", "serre", "hw", "locality", "closedform", "restricted", "gl", "singular", "classical")


@dataclass
class CheckConfig:
    signatures: tuple = BATTERY
    N: int = 5
    window: int = 4
    mode: str = "exact"
    v_samples: tuple = (1.1, 0.9)
    tolerance: float = 1e-8
    seed: int = 0
    trials: int = 20
    orientation: object = "resolved"
    locality_bound: int = 8
    serre_window: int = 3
    serre_distance: int = 4
    closed_form_kmax: int = 6
    singular_N: int = 4
    series_T: int = 20
    timings: bool = False

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be at least 1")
        if self.mode not in ("exact", "numeric"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "numeric" and not self.tolerance > 0:
            raise ValueError("numeric mode needs a positive tolerance")
        if self.trials < 1:
            raise ValueError("trials must be positive")

    def to_json(self) -> dict:
        d = asdict(self)
        d["signatures"] = [s.to_json() for s in self.signatures]
        d["v_samples"] = list(self.v_samples)
        d["orientation"] = list(self.orientation) if isinstance(self.orientation, tuple) else self.orientation
        return d

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_json(), sort_keys=True).encode()).hexdigest()[:12]


@dataclass
class CheckResult:
    id: str
    params: dict
    status: str  # pass, fail, error or info
    witness: str | None = None
    millis: int = 0

    def to_json(self) -> dict:
        d = {"id": self.id, "params": self.params, "status": self.status, "millis": self.millis}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Report:
    suite: str
    config_digest: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status in ("pass", "info") for r in self.results)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> list:
        return [r for r in self.results if r.status in ("fail", "error")]

    def extend(self, other: "Report") -> None:
        self.results.extend(other.results)

    def to_json(self) -> dict:
        return {"suite": self.suite, "config_digest": self.config_digest,
                "results": [r.to_json() for r in self.results]}

    @classmethod
    def from_json(cls, data: dict) -> "Report":
        results = [CheckResult(r["id"], r["params"], r["status"], r.get("witness"), r.get("millis", 0))
                   for r in data["results"]]
        return cls(data["suite"], data["config_digest"], results)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}  config {self.config_digest}  status {self.status}"]
        for r in self.results:
            params = ", ".join(f"{k}={v}" for k, v in r.params.items())
            lines.append(f"  [{r.status:5}] {r.id} ({params})")
            if r.witness:
                lines.append(f"          witness: {r.witness}")
        return "\n".join(lines) + "\n"


class _Item:
    """Collects one aggregated result; the first failure becomes the witness."""

    def __init__(self, report: Report, cfg: CheckConfig, cid: str, params: dict):
        self.report, self.cfg, self.cid, self.params = report, cfg, cid, params
        self.witness = None
        self.status = "pass"
        self.count = 0

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def fail(self, witness: str) -> None:
        if self.status == "pass":
            self.status, self.witness = "fail", witness

    def __exit__(self, et, ev, tb):
        if et is not None and issubclass(et, Exception):
            self.status, self.witness = "error", f"{et.__name__}: {ev}"
        millis = int((time.perf_counter() - self.t0) * 1000) if self.cfg.timings else 0
        params = dict(self.params)
        params["checked"] = self.count
        self.report.results.append(CheckResult(self.cid, params, self.status, self.witness, millis))
        return et is not None and issubclass(et, Exception)


def _sig_params(sig: Signature, **more) -> dict:
    d = {"sig": sig.label()}
    d.update(more)
    return d


def _short(x, limit: int = 300) -> str:
    s = repr(x)
    return s if len(s) <= limit else s[:limit] + "..."


# -- numeric engine --------------------------------------------------------------


def _nbr(x, v0: float) -> float:
    q = v0 * v0
    return (q ** x - q ** (-x)) / (q - 1 / q)


_NUM_CACHE: dict = {}


def _num_elements(kind, k, p, v0, orientation):
    key = (kind, k, p, v0, orientation)
    hit = _NUM_CACHE.get(key)
    if hit is None:
        hit = []
        for m in matrix_elements(kind, k, p, orientation):
            num = math.prod(_nbr(a, v0) for a in m.num)
            den = math.prod(_nbr(b, v0) for b in m.den)
            hit.append((m.target, m.sign * math.sqrt(abs(num / den))))
        _NUM_CACHE[key] = hit
    return hit


def _num_scalar(c, v0: float) -> complex:
    return act.eval_numeric(c, v0)


def _num_gen(g: Gen, vec: dict, v0: float, orientation) -> dict:
    out: dict = {}
    for p, c in vec.items():
        if g.kind in ("e", "f"):
            for t, x in _num_elements(g.kind, g.index, p, v0, orientation):
                out[t] = out.get(t, 0) + c * x
            continue
        if g.kind == "h":
            s = float(act._pure(weight(p, g.index), "weight"))
        elif g.kind == "c":
            s = float(act._pure(central_charge(p.sig), "central charge"))
        else:
            w = act._affine_value(p, g.lin, g.ccoef)
            n = w.to_int()
            s = v0 ** n if g.kind == "vpow" else _nbr(n, v0)
        out[p] = out.get(p, 0) + c * s
    return out


def num_apply_word(w: OperatorWord, p: CPattern, v0: float, orientation="resolved") -> tuple[dict, float]:
    """Numeric image of a basis vector and the largest term magnitude seen."""
    out: dict = {}
    scale = 1.0
    for coef, gens in w.terms:
        vec = {p: 1.0}
        for g in reversed(gens):
            vec = _num_gen(g, vec, v0, orientation)
            if not vec:
                break
        cz = _num_scalar(coef, v0)
        for t, x in vec.items():
            out[t] = out.get(t, 0) + cz * x
            scale = max(scale, abs(cz * x))
    return out, scale


def _residual_check(item: _Item, word: OperatorWord, basis, cfg: CheckConfig, label: str) -> None:
    for p in basis:
        item.count += 1
        if cfg.mode == "exact":
            res = apply_word(word, p, cfg.orientation)
            if not res.is_zero():
                item.fail(f"{label} on {p!r}: residual {_short(res)}")
                return
        else:
            for v0 in cfg.v_samples:
                vec, scale = num_apply_word(word, p, v0, cfg.orientation)
                worst = max((abs(x) for x in vec.values()), default=0.0)
                if worst > cfg.tolerance * scale:
                    item.fail(f"{label} on {p!r} at v={v0}: residual {worst:.3e} (scale {scale:.3e})")
                    return


# -- relation words ---------------------------------------------------------------------


def cartan_word(i: int, j: int) -> OperatorWord:
    """``[e_i, f_j] - delta_ij [h_i - h_{i+1} + (theta(-i) - theta(-i-1)) c]``."""
    w = OperatorWord.of(e(i), f(j)) - OperatorWord.of(f(j), e(i))
    if i == j:
        cc = theta(-i) - theta(-i - 1)
        w = w - OperatorWord.of(qbracket_of(((i, 1), (i + 1, -1)), cc))
    return w


def serre_words(kind: str, i: int) -> list[OperatorWord]:
    """The two cubic relations for the adjacent pair ``(i, i + 1)``."""
    g = e if kind == "e" else f
    a, b = g(i), g(i + 1)
    two = act.RatFun.bracket(2)
    out = []
    for x, y in ((a, b), (b, a)):
        out.append(OperatorWord.of(x, x, y) - OperatorWord.of(x, y, x, coef=two) + OperatorWord.of(y, x, x))
    return out


def commute_word(kind: str, i: int, j: int) -> OperatorWord:
    g = e if kind == "e" else f
    return OperatorWord.of(g(i), g(j)) - OperatorWord.of(g(j), g(i))


def _bracket_arg(p: CPattern, i: int) -> int:
    arg = weight(p, i) - weight(p, i + 1) + central_charge(p.sig) * (theta(-i) - theta(-i - 1))
    if not arg.is_integer():
        raise ValueError(f"bracket argument {arg} on {p!r} is not an integer")
    return arg.to_int()


# -- suites --------------------------------------------------------------------------------


def check_cartan(cfg: CheckConfig) -> Report:
    rep = Report("cartan", cfg.digest())
    W = cfg.window
    for sig in cfg.signatures:
        basis = enumerate_basis(sig, cfg.N)
        with _Item(rep, cfg, "cartan.bracket_argument", _sig_params(sig, N=cfg.N)) as it:
            for p in basis:
                for i in range(-W, W + 1):
                    it.count += 1
                    _bracket_arg(p, i)
        with _Item(rep, cfg, "cartan.e_f", _sig_params(sig, N=cfg.N, window=W, mode=cfg.mode)) as it:
            for i in range(-W, W + 1):
                for j in range(-W, W + 1):
                    _residual_check(it, cartan_word(i, j), basis, cfg, f"[e({i}), f({j})]")
                    if it.status != "pass":
                        break
                if it.status != "pass":
                    break
        with _Item(rep, cfg, "cartan.h_weights", _sig_params(sig, N=cfg.N, window=W)) as it:
            for p in basis:
                for j in range(-W, W + 1):
                    for kind, sgn in (("e", 1), ("f", -1)):
                        for m in matrix_elements(kind, j, p, cfg.orientation):
                            for i in range(-W - 1, W + 2):
                                it.count += 1
                                expect = sgn * ((i == j) - (i == j + 1))
                                got = weight(m.target, i) - weight(p, i)
                                if got != WeightValue(expect):
                                    it.fail(f"[h({i}), {kind}({j})] on {p!r}: shift {got}, expected {expect}")
        with _Item(rep, cfg, "cartan.central", _sig_params(sig, N=cfg.N)) as it:
            c0 = central_charge(sig)
            for p in basis:
                it.count += 1
                if act.apply_c(p)[0] != c0:
                    it.fail(f"c is not constant on {p!r}")
    return rep


def check_serre(cfg: CheckConfig) -> Report:
    rep = Report("serre", cfg.digest())
    W = cfg.serre_window
    for sig in cfg.signatures:
        basis = enumerate_basis(sig, cfg.N)
        for kind in ("e", "f"):
            with _Item(rep, cfg, f"serre.{kind}.adjacent", _sig_params(sig, N=cfg.N, window=W, mode=cfg.mode)) as it:
                for i in range(-W, W):
                    for w in serre_words(kind, i):
                        _residual_check(it, w, basis, cfg, f"{kind}-Serre({i},{i + 1})")
            with _Item(rep, cfg, f"serre.{kind}.commuting",
                       _sig_params(sig, N=cfg.N, distance=cfg.serre_distance, mode=cfg.mode)) as it:
                for i in range(-cfg.window, cfg.window + 1):
                    for d in range(2, cfg.serre_distance + 1):
                        j = i + d
                        if abs(j) > cfg.window:
                            continue
                        _residual_check(it, commute_word(kind, i, j), basis, cfg, f"[{kind}({i}), {kind}({j})]")
    return rep


def hw_weight_oracle(sig: Signature, i: int) -> WeightValue:
    """Weight of the all-signature pattern, from the signature alone."""
    return sig.M(i) - (sig.xi0_value if i <= 0 else sig.xi1_value)


def check_hw(cfg: CheckConfig) -> Report:
    rep = Report("hw", cfg.digest())
    B = cfg.locality_bound
    profiles = {}
    for sig in cfg.signatures:
        hw = highest_weight(sig)
        with _Item(rep, cfg, "hw.annihilated", _sig_params(sig, bound=B)) as it:
            if validate(hw):
                it.fail(f"highest weight pattern invalid: {validate(hw)}")
            for i in range(-B, B + 1):
                it.count += 1
                y = act.apply_e(i, hw, cfg.orientation)
                if not y.is_zero():
                    it.fail(f"e({i}) hw = {_short(y)}")
        with _Item(rep, cfg, "hw.weights", _sig_params(sig, bound=B)) as it:
            for i in range(-B, B + 1):
                it.count += 1
                if weight(hw, i) != hw_weight_oracle(sig, i):
                    it.fail(f"weight(hw, {i}) = {weight(hw, i)}, expected {hw_weight_oracle(sig, i)}")
        profiles[sig.label()] = (tuple(str(weight(hw, i)) for i in range(-B, B + 1)), str(central_charge(sig)))
    with _Item(rep, cfg, "hw.distinct", {"signatures": len(profiles)}) as it:
        seen = {}
        for label, prof in profiles.items():
            it.count += 1
            if prof in seen:
                it.fail(f"{label} and {seen[prof]} share highest weight and central charge")
            seen.setdefault(prof, label)
    return rep


def _in_open(k: float, lo: float, hi: float) -> bool:
    return lo < k < hi


def locality_intervals(sig: Signature, N: int) -> dict:
    """Open intervals outside of which ``e_k``, ``f_k``, ``h_k`` annihilate ``V_N``."""
    return {
        "e": (Fraction(-(N + 1), 2), Fraction(N - 2, 2)),
        "f": (min(Fraction(-(N + 3), 2), sig.m - 1), max(Fraction(N, 2), sig.n)),
        "h": (min(Fraction(-(N + 1), 2), sig.m), max(Fraction(N, 2), sig.n)),
    }


def _in_VN(p: CPattern, N: int) -> bool:
    return p == highest_weight(p.sig) or p.depth < N


def check_locality(cfg: CheckConfig) -> Report:
    rep = Report("locality", cfg.digest())
    B = cfg.locality_bound
    rng = random.Random(f"locality:{cfg.seed}")
    for sig in cfg.signatures:
        for N in range(1, cfg.N + 1):
            basis = enumerate_basis(sig, N)
            iv = locality_intervals(sig, N)
            r = locality_radius(N, sig)
            with _Item(rep, cfg, "locality.generators", _sig_params(sig, N=N, bound=B, r_N=r)) as it:
                if not sig.auto_xi:
                    it.params["note"] = "f and h intervals need automatic xi; only e checked"
                for k in range(-B, B + 1):
                    for kind in ("e", "f", "h"):
                        outside = not _in_open(k, *iv[kind])
                        radial = abs(k) >= r
                        if kind != "e" and not sig.auto_xi:
                            continue
                        if not (outside or radial):
                            continue
                        for p in basis:
                            it.count += 1
                            if kind == "h":
                                if weight(p, k) != WeightValue():
                                    it.fail(f"h({k}) on {p!r} = {weight(p, k)} (N={N})")
                            else:
                                y = act._lincomb(kind, k, p, cfg.orientation)
                                if not y.is_zero():
                                    it.fail(f"{kind}({k}) on {p!r} = {_short(y)} (N={N})")
            with _Item(rep, cfg, "locality.monomials", _sig_params(sig, N=N, trials=cfg.trials)) as it:
                lo, hi = iv["e"]
                inside = [k for k in range(-B, B + 1) if _in_open(k, lo, hi)]
                outside = [k for k in range(-B, B + 1) if not _in_open(k, lo, hi)]
                for _ in range(cfg.trials):
                    p = rng.choice(basis)
                    length = rng.randint(1, 4)
                    if inside:
                        word = [rng.choice(inside) for _ in range(length)]
                        y = apply_word(OperatorWord.of(*[e(k) for k in word]), p, cfg.orientation)
                        it.count += 1
                        bad = [t for t in y.terms if not _in_VN(t, N)]
                        if bad:
                            it.fail(f"e-word {word} on {p!r} leaves V_{N}: {bad[0]!r}")
                    word = [rng.choice(inside + outside) for _ in range(length - 1)]
                    word.insert(rng.randint(0, len(word)), rng.choice(outside))
                    y = apply_word(OperatorWord.of(*[e(k) for k in word]), p, cfg.orientation)
                    it.count += 1
                    if not y.is_zero():
                        it.fail(f"e-word {word} with support outside I_N on {p!r} = {_short(y)}")
        with _Item(rep, cfg, "locality.radius", _sig_params(sig)) as it:
            for N in range(1, cfg.N + 1):
                it.count += 1
                expect = max(-(-(N + 3) // 2), 1 - sig.m, sig.n)
                if locality_radius(N, sig) != expect:
                    it.fail(f"r_{N} = {locality_radius(N, sig)}, expected {expect}")
    return rep


def check_closed_form(cfg: CheckConfig) -> Report:
    rep = Report("closedform", cfg.digest())
    for sig in cfg.signatures:
        for N in range(1, cfg.N + 1):
            with _Item(rep, cfg, "closedform.f", _sig_params(sig, N=N, kmax=cfg.closed_form_kmax)) as it:
                for k in range(-(-N // 2), cfg.closed_form_kmax + 1):
                    for p in enumerate_basis(sig, N):
                        it.count += 1
                        a = apply_f(k, p, cfg.orientation)
                        b = apply_f_closedform(k, p)
                        if a != b:
                            it.fail(f"f({k}) on {p!r}: {_short(a)} versus closed form {_short(b)}")
    return rep


def _random_vector(rng: random.Random, sig: Signature, N: int) -> LinComb:
    basis = enumerate_basis(sig, N)
    picks = rng.sample(basis, min(len(basis), rng.randint(1, 4)))
    terms = {p: act.RadicalScalar.from_ratfun(rng.choice([-3, -2, -1, 1, 2, 3])) for p in picks}
    return LinComb(sig, terms)


def _restricted_violations(x: LinComb, r: int, rng: random.Random, trials: int, orientation) -> list[str]:
    out = []
    span = r + 3
    for _ in range(trials):
        length = rng.randint(1, 3)
        word = [rng.randint(-span, span) for _ in range(length - 1)]
        word.insert(rng.randint(0, len(word)), rng.choice([k for k in range(-span, span + 1) if abs(k) >= r]))
        y = apply_word(OperatorWord.of(*[e(k) for k in word]), x, orientation)
        if not y.is_zero():
            out.append(f"e-word {word}")
        tail = rng.choice([range(-span, -r + 1), range(r, span + 1)])
        word = [rng.choice(tail) for _ in range(length)]
        y = apply_word(OperatorWord.of(*[f(k) for k in word]), x, orientation)
        if not y.is_zero():
            out.append(f"f-word {word}")
    for i in list(range(-span, -r + 1)) + list(range(r, span + 1)):
        if any(weight(p, i) != WeightValue() for p in x.terms):
            out.append(f"h({i})")
    return out


def check_restricted(cfg: CheckConfig) -> Report:
    rep = Report("restricted", cfg.digest())
    for sig in cfg.signatures:
        rng = random.Random(f"restricted:{cfg.seed}:{sig.digest()}")
        with _Item(rep, cfg, "restricted.tails", _sig_params(sig, vectors=cfg.trials)) as it:
            if not sig.auto_xi:
                raise ValueError("restrictedness needs automatic xi")
            for _ in range(cfg.trials):
                Nk = rng.randint(2, cfg.N)
                x = _random_vector(rng, sig, Nk)
                r = locality_radius(Nk, sig)
                it.count += 1
                bad = _restricted_violations(x, r, rng, 3, cfg.orientation)
                if bad:
                    it.fail(f"vector {_short(x)} in V_{Nk}, r={r}: {bad[0]} does not annihilate")
        with _Item(rep, cfg, "restricted.sharpness_probe", _sig_params(sig)) as it:
            found = 0
            for Nk in range(2, cfg.N + 1):
                r = locality_radius(Nk, sig) - 1
                for p in enumerate_basis(sig, Nk):
                    it.count += 1
                    if _restricted_violations(LinComb.basis(p), r, rng, 2, cfg.orientation):
                        found += 1
            it.params["violations_at_r_minus_1"] = found
            it.status = "info"
    return rep


def _weight_key(p: CPattern, W: int) -> tuple:
    return tuple(weight(p, i) for i in range(-W, W + 1))


def singular_scan(cfg: CheckConfig) -> Report:
    """Numeric joint kernel of all raising operators on each weight space of ``V_N``."""
    rep = Report("singular", cfg.digest())
    for sig in cfg.signatures:
        N = min(cfg.N, cfg.singular_N)
        r = locality_radius(N, sig)
        basis = enumerate_basis(sig, N)
        spaces: dict = {}
        for p in basis:
            spaces.setdefault(_weight_key(p, r + 1), []).append(p)
        for v0 in cfg.v_samples:
            with _Item(rep, cfg, "singular.kernel", _sig_params(sig, N=N, v=v0, tol=cfg.tolerance)) as it:
                total = 0
                smallest_kept = math.inf
                for space in spaces.values():
                    rows: dict = {}
                    entries = []
                    for col, p in enumerate(space):
                        for k in range(-r, r + 1):
                            for t, x in _num_elements("e", k, p, v0, cfg.orientation):
                                key = (k, t)
                                if key not in rows:
                                    rows[key] = len(rows)
                                entries.append((rows[key], col, x))
                    mat = np.zeros((max(len(rows), 1), len(space)))
                    for rr, cc, x in entries:
                        mat[rr, cc] += x
                    sv = np.linalg.svd(mat, compute_uv=False)
                    sv = np.concatenate([sv, np.zeros(len(space) - len(sv))])
                    scale = max(1.0, float(sv.max(initial=0.0)))
                    small = sv <= cfg.tolerance * scale
                    total += int(small.sum())
                    if (~small).any():
                        smallest_kept = min(smallest_kept, float(sv[~small].min()) / scale)
                    it.count += 1
                it.params["kernel_dim"] = total
                it.params["weight_spaces"] = len(spaces)
                if smallest_kept < 1e3 * cfg.tolerance:
                    it.status = "error"
                    it.witness = f"ill-conditioned: smallest retained singular value {smallest_kept:.3e}"
                elif total != 1:
                    it.fail(f"joint kernel dimension {total}, expected 1")
    return rep


def check_gl_iso(cfg: CheckConfig) -> Report:
    rep = Report("gl", cfg.digest())
    W = cfg.window
    for sig in cfg.signatures:
        basis = enumerate_basis(sig, min(cfg.N, 4))
        with _Item(rep, cfg, "gl.cartan", _sig_params(sig, N=min(cfg.N, 4), window=W)) as it:
            for p in basis:
                x = LinComb.basis(p)
                for i in range(-W, W + 1):
                    it.count += 1
                    arg = gl_H(i, p) - gl_H(i + 1, p)
                    if not arg.is_integer():
                        raise ValueError(f"H({i}) - H({i + 1}) = {arg} on {p!r} is not an integer")
                    lhs = apply_word(OperatorWord.of(e(i), f(i)) - OperatorWord.of(f(i), e(i)), x, cfg.orientation)
                    if lhs != x.scale(act.RatFun.bracket(arg.to_int())):
                        it.fail(f"[E({i}), F({i})] on {p!r} differs from [H({i}) - H({i + 1})]")
        with _Item(rep, cfg, "gl.weights", _sig_params(sig, window=W)) as it:
            for p in basis:
                for j in range(-W, W + 1):
                    for m in matrix_elements("e", j, p, cfg.orientation):
                        for i in range(-W - 1, W + 2):
                            it.count += 1
                            if gl_H(i, m.target) - gl_H(i, p) != WeightValue((i == j) - (i == j + 1)):
                                it.fail(f"[H({i}), E({j})] on {p!r}")
    return rep


def classical_limit_check(cfg: CheckConfig) -> Report:
    """Every matrix element emitted so far: value at ``v = 1`` against integer brackets."""
    rep = Report("classical", cfg.digest())
    if not any(True for _ in emitted_elements()):
        for sig in cfg.signatures:
            for p in enumerate_basis(sig, cfg.N):
                for k in range(-cfg.window, cfg.window + 1):
                    act.apply_e(k, p, cfg.orientation)
                    act.apply_f(k, p, cfg.orientation)
    with _Item(rep, cfg, "classical.elements", {}) as it:
        for m in emitted_elements():
            it.count += 1
            exact = m.coefficient.square_at(1)
            oracle = classical_square(m)
            if exact != oracle or (exact == 0) != (oracle == 0):
                it.fail(f"{m.source!r} -> {m.target!r}: value^2 at v=1 is {exact}, integer product {oracle}")
    return rep


def check_series(cfg: CheckConfig) -> Report:
    rep = Report("series", cfg.digest())
    for sig in cfg.signatures:
        with _Item(rep, cfg, "series.stabilizes", _sig_params(sig, T=cfg.series_T)) as it:
            for p in enumerate_basis(sig, min(cfg.N, 4)):
                it.count += 1
                s = series_I_partial(p, cfg.series_T)
                if s.status != "stabilized":
                    it.fail(f"{p!r}: {s.status}")
        bumped = make_signature(sig.m, sig.n, sig.offsets, sig.mu, sig.xi0_value.const + 1, AUTO)
        with _Item(rep, cfg, "series.divergent_control", _sig_params(sig, T=cfg.series_T, xi0="M_m + 1")) as it:
            it.count += 1
            s = series_I_partial(highest_weight(bumped), cfg.series_T)
            if s.status != "divergent":
                it.fail(f"perturbed xi0 gives {s.status}")
    return rep


RUNNERS = {
    "cartan": check_cartan,
    "serre": check_serre,
    "hw": check_hw,
    "locality": check_locality,
    "closedform": check_closed_form,
    "restricted": check_restricted,
    "gl": check_gl_iso,
    "singular": singular_scan,
    "classical": classical_limit_check,
    "series": check_series,
}


def run_suite(name: str, cfg: CheckConfig) -> Report:
    if name == "all":
        rep = Report("all", cfg.digest())
        for key in RUNNERS:
            rep.extend(RUNNERS[key](cfg))
        return rep
    try:
        return RUNNERS[name](cfg)
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
