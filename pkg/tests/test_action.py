import math
from fractions import Fraction

import numpy as np
import pytest

from uqainf import action as act
from uqainf.action import (C, LinComb, OperatorWord, SeriesSupport, apply_e, apply_f,
                           apply_f_closedform, apply_word, build_matrix, commutator, e, f, gl_H, h,
                           hat_generator, locality_radius, matrix_from_text, matrix_to_text,
                           qbracket_of, series_I_partial, support_components, target_depth,
                           vpow, weyl_generator)
from uqainf.patterns import (SYMBOL, CPattern, WeightValue, central_charge, enumerate_basis,
                             highest_weight, make_signature, theta, validate, weight)
from uqainf.qarith import RadicalScalar, RatFun, eval_numeric, rad_from_brackets
from uqainf.verify import BATTERY

TRIVIAL = make_signature(0, 0, [0])
LS0 = make_signature(-1, 0, [1, 0])
WIDE = make_signature(-1, 1, [2, 1, 0])
ONE = RadicalScalar.one()


def single(lc):
    assert len(lc.terms) == 1
    return next(iter(lc.terms.items()))


def cartan_rhs(p, i):
    """[w_i - w_{i+1} + (theta(-i) - theta(-i-1)) c] on p, as an exact scalar."""
    arg = weight(p, i) - weight(p, i + 1) + central_charge(p.sig) * (theta(-i) - theta(-i - 1))
    return RadicalScalar.from_ratfun(RatFun.bracket(arg.to_int()))


# -- generator examples ---------------------------------------------------------------


@pytest.mark.parametrize("sig", BATTERY, ids=lambda s: s.label())
def test_e_kills_highest_weight(sig):
    hw = highest_weight(sig)
    for k in range(-8, 9):
        assert apply_e(k, hw).is_zero()


def test_e_minus_one_on_ls0():
    p = CPattern(LS0, [(1,)])
    target, c = single(apply_e(-1, p))
    assert target == highest_weight(LS0) and c == ONE


def test_f_examples_on_ls0():
    hw = highest_weight(LS0)
    target, c = single(apply_f(-1, hw))
    assert target == CPattern(LS0, [(1,)]) and c == ONE
    assert apply_f(1, hw).is_zero()
    assert apply_f_closedform(1, hw).is_zero()


def test_trivial_module_is_one_dimensional():
    hw = highest_weight(TRIVIAL)
    for k in range(-6, 7):
        assert apply_f(k, hw).is_zero() and apply_e(k, hw).is_zero()


def test_closed_form_on_wide_signature():
    hw = highest_weight(WIDE)
    target, c = single(apply_f_closedform(0, hw))
    assert c == -ONE
    assert target.row(1) == (0,) and target.row(2) == (2, 0)
    assert apply_f(0, hw) == apply_f_closedform(0, hw)
    assert apply_f_closedform(1, hw).is_zero() and apply_f(1, hw).is_zero()


def test_closed_form_precondition():
    with pytest.raises(ValueError):
        apply_f_closedform(-1, highest_weight(LS0))
    deep = enumerate_basis(WIDE, 4)[0]
    assert deep.depth >= 2
    with pytest.raises(ValueError):
        apply_f_closedform(0, deep)


@pytest.mark.parametrize("sig", BATTERY, ids=lambda s: s.label())
def test_closed_form_agreement(sig):
    for N in range(1, 5):
        for p in enumerate_basis(sig, N):
            for k in range(math.ceil(N / 2), 6):
                assert apply_f(k, p) == apply_f_closedform(k, p)


# -- structural invariants ----------------------------------------------------------------


@pytest.mark.parametrize("sig", BATTERY, ids=lambda s: s.label())
def test_weight_additivity_and_deletion_soundness(sig):
    window = range(-5, 6)
    for p in enumerate_basis(sig, 3):
        for k in range(-3, 4):
            for kind, sgn in (("e", 1), ("f", -1)):
                y = apply_e(k, p) if kind == "e" else apply_f(k, p)
                for t in y.terms:
                    assert validate(t) == []
                    for i in window:
                        delta = (i == k) - (i == k + 1)
                        assert weight(t, i) - weight(p, i) == WeightValue(sgn * delta)


@pytest.mark.parametrize("sig", BATTERY, ids=lambda s: s.label())
def test_window_growth_bound(sig):
    N = 3
    for p in enumerate_basis(sig, N):
        for k in range(-3, 4):
            allowed = set(enumerate_basis(sig, target_depth("e", k, N)))
            for t in list(apply_e(k, p).terms) + list(apply_f(k, p).terms):
                assert t in allowed


def _rank1_cartan_holds(sig, orientation, N=3):
    for p in enumerate_basis(sig, N):
        x = LinComb.basis(p)
        lhs = apply_word(commutator(OperatorWord.of(e(-1)), OperatorWord.of(f(-1))), x, orientation)
        if lhs != x.scale(cartan_rhs(p, -1)):
            return False
    return True


def test_rank1_cartan_identity_battery():
    for sig in BATTERY:
        assert _rank1_cartan_holds(sig, "resolved")


def test_orientation_four_way_trial():
    survivors = [o for o in [(-1, 1), (1, -1), (1, 1), (-1, -1)]
                 if all(_rank1_cartan_holds(sig, o) for sig in BATTERY)]
    assert survivors == [act.ORIENTATIONS["resolved"]]


def test_unknown_orientation():
    with pytest.raises(ValueError):
        apply_e(-1, highest_weight(LS0), "sideways")


# -- words ----------------------------------------------------------------------------------


def test_identity_word():
    p = enumerate_basis(WIDE, 3)[2]
    assert apply_word(OperatorWord.identity(), p) == LinComb.basis(p)


def test_e0_f0_commutator_on_hw():
    for sig in BATTERY:
        hw = highest_weight(sig)
        diff = apply_word(OperatorWord.of(e(0), f(0)) - OperatorWord.of(f(0), e(0)), hw)
        assert diff == LinComb.basis(hw).scale(cartan_rhs(hw, 0))
        bracket_word = OperatorWord.of(qbracket_of(((0, 1), (1, -1)), ccoef=1))
        assert diff == apply_word(bracket_word, hw)


def test_serre_middle_relation_on_v5():
    two = RatFun.bracket(2)
    for i in (-2, -1, 0, 1):
        word = (OperatorWord.of(e(i), e(i), e(i + 1)) - OperatorWord.of(e(i), e(i + 1), e(i)) * two
                + OperatorWord.of(e(i + 1), e(i), e(i)))
        for p in enumerate_basis(LS0, 5):
            assert apply_word(word, p).is_zero()


def test_diagonal_exponent_must_be_integer():
    sig = make_signature(-1, 0, [1, 0], mu=SYMBOL, xi0=SYMBOL, xi1=SYMBOL)
    with pytest.raises(ValueError):
        apply_word(OperatorWord.of(vpow(((0, 1),))), highest_weight(sig))
    with pytest.raises(ValueError):
        apply_word(OperatorWord.of(vpow(((0, Fraction(1, 2)),))), highest_weight(LS0))
    # differences are fine even with a symbolic base value
    assert not apply_word(OperatorWord.of(vpow(((-1, 1), (-2, -1)))), highest_weight(sig)).is_zero()


def test_h_and_c_need_pure_weights():
    sig = make_signature(-1, 0, [1, 0], mu=SYMBOL, xi0=SYMBOL, xi1=SYMBOL)
    hw = highest_weight(sig)
    with pytest.raises(ValueError):
        apply_word(OperatorWord.of(h(0)), hw)
    with pytest.raises(ValueError):
        apply_word(OperatorWord.of(C), hw)
    # with automatic xi the base value cancels and everything is a number
    auto = highest_weight(make_signature(-1, 0, [1, 0], mu=SYMBOL))
    assert apply_word(OperatorWord.of(C), auto) == LinComb.basis(auto)
    assert apply_word(OperatorWord.of(h(0)), auto) == -LinComb.basis(auto)


def test_hat_generators():
    hw = highest_weight(LS0)
    assert apply_word(hat_generator("e", 0), hw).is_zero()
    target, c = single(apply_word(hat_generator("f", -1), hw))
    assert target == CPattern(LS0, [(1,)])
    assert c == RadicalScalar.from_ratfun(RatFun.monomial(1))
    with pytest.raises(ValueError):
        hat_generator("h", 0)


def test_hat_and_plain_agree_at_v_equal_one():
    for p in enumerate_basis(WIDE, 3):
        for i in (-2, -1, 0, 1):
            for kind in ("e", "f"):
                plain = apply_word(OperatorWord.of(act.Gen(kind, i)), p)
                hat = apply_word(hat_generator(kind, i), p)
                assert set(plain.terms) == set(hat.terms)
                for t in plain.terms:
                    assert eval_numeric(plain.terms[t], 1) == pytest.approx(eval_numeric(hat.terms[t], 1))


def test_weyl_generators():
    for i in (-2, 0, 1):
        for p in enumerate_basis(WIDE, 3):
            assert apply_word(weyl_generator(i, i + 1), p) == apply_word(hat_generator("e", i), p)
    assert apply_word(weyl_generator(0, 2), highest_weight(LS0)).is_zero()
    assert weyl_generator(3, 3) == OperatorWord.of(h(3))


@pytest.mark.parametrize("pair", [(-1, 1), (0, 2), (-2, 1), (2, 0), (1, -1)])
def test_weyl_weight_property(pair):
    i, j = pair
    for p in enumerate_basis(WIDE, 3):
        y = apply_word(weyl_generator(i, j), p)
        for t in y.terms:
            for k in range(-4, 5):
                assert weight(t, k) - weight(p, k) == WeightValue((k == i) - (k == j))


# -- gl view --------------------------------------------------------------------------------


def test_gl_H_examples():
    assert gl_H(0, highest_weight(LS0)) == WeightValue(0)
    shifted = make_signature(0, 0, [0], mu=3)
    for i in range(-4, 5):
        assert gl_H(i, highest_weight(shifted)) == WeightValue(3)


def test_gl_cartan_has_no_central_term():
    for sig in BATTERY:
        for p in enumerate_basis(sig, 3):
            for i in (-2, -1, 0, 1):
                lhs = apply_word(commutator(OperatorWord.of(e(i)), OperatorWord.of(f(i))), p)
                arg = (gl_H(i, p) - gl_H(i + 1, p)).to_int()
                assert lhs == LinComb.basis(p).scale(RatFun.bracket(arg))


# -- series, locality, support ------------------------------------------------------------


def test_series_examples():
    s = series_I_partial(highest_weight(LS0), 1)
    assert s.value == WeightValue(-1) and s.status == "stabilized"
    assert series_I_partial(highest_weight(LS0), 20).value == WeightValue(-1)
    t = series_I_partial(highest_weight(TRIVIAL), 5)
    assert t.value == WeightValue(0) and t.status == "stabilized"
    bad = make_signature(-1, 0, [1, 0], xi0=0)
    vals = [series_I_partial(highest_weight(bad), T) for T in range(2, 8)]
    assert all(v.status == "divergent" for v in vals)
    incs = {(b.value - a.value).const for a, b in zip(vals, vals[1:])}
    assert incs == {1}


def test_series_rejects_negative_T():
    with pytest.raises(ValueError):
        series_I_partial(highest_weight(LS0), -1)


def test_locality_radius_examples():
    assert locality_radius(3, LS0) == 3
    assert locality_radius(1, TRIVIAL) == 2
    for sig in BATTERY:
        radii = [locality_radius(N, sig) for N in range(1, 12)]
        assert radii == sorted(radii)
    with pytest.raises(ValueError):
        locality_radius(0, LS0)


def test_support_components_examples():
    assert support_components({0, 1}) == [[0, 1]]
    assert support_components({0, 2}) == [[0, 0], [2, 2]]
    assert support_components({-1, 0, 1, 3}) == [[-1, 1], [3, 3]]
    assert support_components(SeriesSupport({0: 2, 1: 0}, {1: 1, 4: 1})) == [[0, 1], [4, 4]]


# -- matrices -------------------------------------------------------------------------------


@pytest.mark.parametrize("gen", ["e-1", "f0", "e1", "f-2", "h0", "c"])
def test_matrix_export_roundtrip(gen):
    mat = build_matrix(gen, WIDE, 3)
    assert mat.dim == len(enumerate_basis(WIDE, 3))
    header, entries = matrix_from_text(matrix_to_text(mat))
    assert header["dim"] == mat.dim and header["N"] == 3 and header["sig"] == WIDE.digest()
    assert entries == mat.entries
    _, num = matrix_from_text(matrix_to_text(mat, "numeric", 1.1), numeric=True)
    for key, x in mat.entries.items():
        assert num[key] == pytest.approx(eval_numeric(x, 1.1), rel=1e-12)
    dense = mat.dense(1.1)
    assert dense.shape == (len(mat.target), mat.dim)
    assert np.count_nonzero(dense) == len(mat.entries)


def test_matrix_columns_obey_weight_shift():
    mat = build_matrix("f0", WIDE, 3)
    for (r, c) in mat.entries:
        src, tgt = mat.source[c], mat.target[r]
        for i in range(-3, 4):
            assert weight(tgt, i) - weight(src, i) == WeightValue(-((i == 0) - (i == 1)))


def test_parse_gen():
    assert act.parse_gen("f-2") == ("f", -2)
    assert act.parse_gen("c") == ("c", 0)
    for bad in ("x1", "e", "e1.5"):
        with pytest.raises(ValueError):
            act.parse_gen(bad)


def test_classical_square_matches_radicand_at_one():
    act.clear_cache()
    for p in enumerate_basis(WIDE, 3):
        for k in range(-3, 4):
            apply_e(k, p)
            apply_f(k, p)
    elems = act.emitted_elements()
    assert elems
    for m in elems:
        assert m.coefficient.square_at(1) == act.classical_square(m)
    assert rad_from_brackets([2, 3], []).square_at(1) == 6


def test_lincomb_weight_profile():
    b = enumerate_basis(LS0, 3)
    mixed = LinComb.basis(b[0]) + LinComb.basis(b[2])
    assert mixed.weight_profile(range(-2, 3)) is None
    assert LinComb.basis(b[1]).weight_profile([0]) == {0: weight(b[1], 0)}


def test_deletion_notes_are_strings():
    for p in enumerate_basis(WIDE, 3):
        for k in (-2, -1, 0, 1):
            notes = act.deletion_notes("f", k, p)
            assert all(isinstance(n, str) for n in notes)
