import json
from fractions import Fraction

import pytest

from uqainf import verify as ver
from uqainf.patterns import WeightValue, enumerate_basis, highest_weight, make_signature, weight
from uqainf.verify import BATTERY, CheckConfig, Report

TRIVIAL, LS0, LS1, WIDE, HALF = BATTERY


def small(**kw):
    base = dict(N=3, window=2, trials=4, locality_bound=5, serre_window=2, serre_distance=3,
                closed_form_kmax=4, singular_N=3, series_T=8)
    base.update(kw)
    return CheckConfig(**base)


def test_battery_shape():
    assert [(s.m, s.n, s.offsets) for s in BATTERY] == [
        (0, 0, (0,)), (-1, 0, (1, 0)), (0, 1, (1, 0)), (-1, 1, (2, 1, 0)), (-1, 0, (3, 0))]
    assert HALF.mu == Fraction(1, 2)


@pytest.mark.parametrize("suite", sorted(ver.RUNNERS))
def test_every_suite_passes_on_small_config(suite):
    rep = ver.run_suite(suite, small())
    assert rep.passed, rep.to_text()
    assert rep.results
    # only the one-dimensional module may have nothing to look at (it has no matrix elements)
    for r in rep.results:
        if r.params.get("checked", 1) == 0:
            assert r.params["sig"] == TRIVIAL.label()


@pytest.mark.parametrize("suite", ["cartan", "serre", "hw", "gl"])
def test_numeric_mode_passes(suite):
    rep = ver.run_suite(suite, small(mode="numeric"))
    assert rep.passed, rep.to_text()


def test_literal_orientation_fails_cartan_with_witness():
    rep = ver.run_suite("cartan", small(signatures=(LS0,), orientation="literal"))
    assert not rep.passed
    bad = rep.failures()[0]
    assert bad.witness and "CPattern" in bad.witness


def test_reports_are_deterministic_and_roundtrip():
    cfg = small(signatures=(LS0, WIDE))
    a = ver.run_suite("serre", cfg)
    b = ver.run_suite("serre", cfg)
    ja, jb = json.dumps(a.to_json(), sort_keys=True), json.dumps(b.to_json(), sort_keys=True)
    assert ja == jb
    back = Report.from_json(json.loads(ja))
    assert back.to_json() == a.to_json()
    assert a.to_text().startswith("suite serre")


def test_config_validation():
    with pytest.raises(ValueError):
        CheckConfig(N=0)
    with pytest.raises(ValueError):
        CheckConfig(mode="numeric", tolerance=0)
    with pytest.raises(ValueError):
        CheckConfig(trials=0)
    with pytest.raises(ValueError):
        CheckConfig(mode="fuzzy")
    assert CheckConfig().digest() == CheckConfig().digest()
    assert CheckConfig(seed=1).digest() != CheckConfig().digest()


def test_errors_are_reported_not_raised(monkeypatch):
    def boom(*a, **k):
        raise RuntimeError("kaput")

    monkeypatch.setattr(ver, "enumerate_basis", boom)
    rep = ver.check_series(small(signatures=(LS0,)))
    assert rep.results[0].status == "error" and "kaput" in rep.results[0].witness


def test_hw_weight_oracle_matches_pattern_weights():
    for sig in BATTERY:
        hw = highest_weight(sig)
        for i in range(-6, 7):
            assert ver.hw_weight_oracle(sig, i) == weight(hw, i)
    assert ver.hw_weight_oracle(LS0, 0) == WeightValue(-1)


def test_locality_intervals_examples():
    iv = ver.locality_intervals(LS0, 3)
    assert iv["e"] == (-2, Fraction(1, 2))
    assert iv["f"] == (-3, Fraction(3, 2))
    assert iv["h"] == (-2, Fraction(3, 2))


def test_locality_examples_on_ls0():
    basis = enumerate_basis(LS0, 3)
    from uqainf.action import apply_e, apply_f, apply_h

    for p in basis:
        for k in (-4, -3, -2, 1, 2, 3, 4):
            assert apply_e(k, p).is_zero()
        for k in (2, 3, 4, -3, -4):
            assert apply_f(k, p).is_zero()
        for k in (3, 4, -3, -4):
            assert apply_h(k, p)[0] == WeightValue(0)


def test_singular_scan_examples():
    rep = ver.singular_scan(small(signatures=(TRIVIAL, LS0, WIDE), N=4, singular_N=4))
    assert rep.passed
    dims = {(r.params["sig"], r.params["v"]): r.params["kernel_dim"] for r in rep.results}
    assert set(dims.values()) == {1}


def test_restricted_sharpness_probe_is_informational():
    rep = ver.check_restricted(small(signatures=(WIDE,), N=4))
    probes = [r for r in rep.results if r.id == "restricted.sharpness_probe"]
    assert probes and all(r.status == "info" for r in probes)
    assert rep.passed


def test_classical_limit_covers_emitted_elements():
    ver.act.clear_cache()
    ver.run_suite("closedform", small(signatures=(WIDE,)))
    rep = ver.classical_limit_check(small(signatures=(WIDE,)))
    assert rep.passed and rep.results[0].params["checked"] > 0


def test_series_divergent_control_present():
    rep = ver.check_series(small())
    ids = [r.id for r in rep.results]
    assert ids.count("series.divergent_control") == len(BATTERY)


def test_explicit_xi_signature_runs_e_locality_only():
    sig = make_signature(-1, 0, [1, 0], xi0=3, xi1=0)
    rep = ver.check_locality(small(signatures=(sig,)))
    assert rep.passed
