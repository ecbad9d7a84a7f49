"""Acceptance battery: one PASS/FAIL line per criterion.

Run through pytest (the lines are printed even under capture) or directly with
``python tests/test_acceptance.py``.  Criterion 11 reads the matrix-element memo filled
by criteria 1 to 5, so the functions below must run in file order.
"""
import itertools
import sys
import time

import pytest

from uqainf import action as act
from uqainf import identities as ids
from uqainf import verify as ver
from uqainf.patterns import WeightValue, central_charge, enumerate_basis, highest_weight, weight
from uqainf.verify import BATTERY, CheckConfig

TRIVIAL, LS0, LS1, WIDE, HALF = BATTERY

CARTAN_BUDGET_SECONDS = 300
SINGULAR_TOLERANCE = 1e-8
MUTATION_SAMPLES = 20

FULL = CheckConfig()  # N=5, window 4, exact, |k| <= 8, serre window 3 and distance 4, T=20

_announce = None


@pytest.fixture(autouse=True)
def _printer(capsys):
    global _announce

    def say(line):
        with capsys.disabled():
            print(line)

    _announce = say
    yield
    _announce = None


def report(n: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n:2d} {title}" + (f": {detail}" if detail else "")
    (_announce or print)(line)
    assert ok, line


def _summary(rep) -> str:
    checked = sum(r.params.get("checked", 0) for r in rep.results)
    bad = rep.failures()
    tail = f"; first failure {bad[0].id}: {bad[0].witness}" if bad else ""
    return f"{len(rep.results)} results, {checked} checks{tail}"


# -- independent oracles ------------------------------------------------------------------


def brute_force_dim(sig, N):
    """Count interlacing arrays with rows N and above fixed to the signature."""
    def rows(r):
        return list(range(-(r // 2), (r - 1) // 2 + 1))

    def top(i):
        return sig.offsets[min(max(i, sig.m), sig.n) - sig.m]

    cells = [(i, r) for r in range(1, N) for i in rows(r)]
    lo, hi = min(sig.offsets), max(sig.offsets)
    count = 0
    for vals in itertools.product(range(lo, hi + 1), repeat=len(cells)):
        M = dict(zip(cells, vals))

        def get(i, r):
            return M[(i, r)] if r < N else top(i)

        if all(get(i + (r % 2 == 0) - 1, r + 1) >= get(i, r) >= get(i + (r % 2 == 0), r + 1)
               for r in range(1, N) for i in rows(r)):
            count += 1
    return count


def radius_oracle(N, sig):
    return max((N + 4) // 2, 1 - sig.m, sig.n)


# -- criteria -----------------------------------------------------------------------------


def test_criterion_01_cartan():
    act.clear_cache()
    t0 = time.perf_counter()
    rep = ver.run_suite("cartan", FULL)
    elapsed = time.perf_counter() - t0
    ok = rep.passed and elapsed < CARTAN_BUDGET_SECONDS
    report(1, "Cartan relations, exact, N<=5, |i|,|j|<=4", ok, f"{_summary(rep)}, {elapsed:.1f} s")


def test_criterion_02_serre():
    rep = ver.run_suite("serre", FULL)
    report(2, "Serre relations, exact", rep.passed, _summary(rep))


def test_criterion_03_identity_campaign():
    camp = ids.run_campaign(ids.DEFAULT_PLAN, seed=0, mode="exact")
    plan_ok = camp.status == "pass" and len(camp.entries) == len(ids.DEFAULT_PLAN)
    escaped, live_total = [], 0
    for name, size, _ in ids.DEFAULT_PLAN:
        for m in ids.mutation_control(name, size, samples=MUTATION_SAMPLES):
            if m.vacuous:
                continue
            live_total += 1
            if not m.caught or m.samples_used > MUTATION_SAMPLES:
                escaped.append((name, size, m.position, m.delta))
    ok = plan_ok and live_total > 0 and not escaped
    detail = (f"{len(camp.entries)} plan items {camp.status}, {live_total} live mutants, "
              f"{len(escaped)} escaped" + (f" e.g. {escaped[0]}" if escaped else ""))
    report(3, "identity campaign and mutation controls", ok, detail)


def test_criterion_04_locality():
    rep = ver.run_suite("locality", FULL)
    radii_ok = all(act.locality_radius(N, s) == radius_oracle(N, s)
                   for s in BATTERY for N in range(1, FULL.N + 1))
    report(4, "locality, |k|<=8, N<=5, radius values", rep.passed and radii_ok,
           f"{_summary(rep)}, radii {'match' if radii_ok else 'differ'}")


def test_criterion_05_closed_form():
    rep = ver.run_suite("closedform", FULL)
    report(5, "closed form for f_k, k in [ceil(N/2), 6]", rep.passed, _summary(rep))


def test_criterion_06_highest_weight():
    rep = ver.run_suite("hw", FULL)
    hw = highest_weight(LS0)
    # auto xi0 is the lower tail value, so h_0 sees offset(0) - offset(m); c sees the tail gap
    expect_w0 = LS0.offsets[0 - LS0.m] - LS0.offsets[0]
    expect_c = LS0.offsets[0] - LS0.offsets[-1]
    derived = (expect_w0, expect_c) == (-1, 1)
    values_ok = weight(hw, 0) == WeightValue(expect_w0) and central_charge(LS0) == WeightValue(expect_c)
    ok = rep.passed and derived and values_ok
    report(6, "highest weight annihilation and weights", ok,
           f"{_summary(rep)}; LS0 weight(hw,0)={weight(hw, 0)}, c={central_charge(LS0)}")


def test_criterion_07_basis_counts():
    dims = {s.label(): [len(enumerate_basis(s, N)) for N in range(1, 6)] for s in BATTERY}
    v1 = all(d[0] == 1 for d in dims.values())
    ls0 = dims[LS0.label()][2] == 3 == brute_force_dim(LS0, 3)
    agree = all(len(enumerate_basis(s, N)) == brute_force_dim(s, N) for s in BATTERY for N in (1, 2, 3))
    monotone = all(a <= b for d in dims.values() for a, b in zip(d, d[1:]))
    report(7, "basis dimensions", v1 and ls0 and agree and monotone,
           f"dims {dims}; brute force {'agrees' if agree and ls0 else 'disagrees'}")


def test_criterion_08_series():
    rep = ver.run_suite("series", FULL)
    values = []
    for sig in BATTERY:
        s = act.series_I_partial(highest_weight(sig), FULL.series_T)
        values.append(f"{sig.label()}={s.value}")
    report(8, "series probe, T<=20", rep.passed, f"{_summary(rep)}; hw values {', '.join(values)}")


def test_criterion_09_restricted():
    rep = ver.run_suite("restricted", FULL)
    report(9, "restrictedness on 20 random vectors per signature", rep.passed, _summary(rep))


def test_criterion_10_singular_scan():
    cfg = CheckConfig(singular_N=4, v_samples=(1.1, 0.9), tolerance=SINGULAR_TOLERANCE)
    rep = ver.run_suite("singular", cfg)
    dims = sorted({r.params.get("kernel_dim") for r in rep.results if "kernel_dim" in r.params})
    report(10, "singular vectors, N<=4, v in {1.1, 0.9}, tol 1e-8", rep.passed and dims == [1],
           f"{_summary(rep)}; kernel dims {dims}")


def test_criterion_11_classical_limit():
    emitted = sum(1 for _ in act.emitted_elements())
    rep = ver.run_suite("classical", FULL)
    report(11, "classical limit of emitted matrix elements", rep.passed and emitted > 0,
           f"{emitted} memoized elements; {_summary(rep)}")


def test_criterion_12_negative_control():
    cfg = CheckConfig(signatures=(LS0,), orientation="literal")
    rep = ver.run_suite("cartan", cfg)
    bad = rep.failures()
    ok = bool(bad) and bool(bad[0].witness)
    act.clear_cache()
    report(12, "literal orientation breaks Cartan on LS0", ok,
           f"witness: {bad[0].witness}" if bad else "no failure recorded")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
