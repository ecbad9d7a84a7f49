import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uqainf.qarith import (ONE, V, LaurentPoly, RadicalScalar, RatFun, bracket, eval_numeric,
                           make_domain, parse_text, pit_equal, qbracket, rad_from_brackets,
                           rad_make, squarefree_split, sym, to_text, yun)

sympy = pytest.importorskip("sympy")
_v = sympy.Symbol("v")


def to_sympy(p: LaurentPoly):
    return sum(sympy.Rational(c.numerator, c.denominator) * _v**e
               for e, c in ((e, Fraction(c)) for e, c in p.to_dict().items()))


def bracket_oracle(n):
    q = _v**2
    return sympy.cancel((q**n - q**-n) / (q - 1 / q))


# -- q-brackets ------------------------------------------------------------------


def test_qbracket_small_values():
    assert qbracket(0).is_zero()
    assert qbracket(1) == ONE
    assert qbracket(2) == LaurentPoly.from_dict({2: 1, -2: 1})
    assert qbracket(-3) == -LaurentPoly.from_dict({4: 1, 0: 1, -4: 1})


def test_qbracket_exponents_are_even():
    for n in range(-12, 13):
        assert all(e % 2 == 0 for e in qbracket(n).to_dict())


@pytest.mark.parametrize("n", range(-15, 16))
def test_qbracket_matches_symbolic_quotient(n):
    assert sympy.expand(to_sympy(qbracket(n)) - bracket_oracle(n)) == 0


def test_qbracket_antisymmetry():
    for n in range(51):
        assert qbracket(-n) == -qbracket(n)


def test_qbracket_numeric_definition():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(-20, 20)
        v0 = rng.uniform(0.6, 1.6)
        q = v0 * v0
        expect = (q**n - q**-n) / (q - 1 / q)
        assert eval_numeric(qbracket(n), v0).real == pytest.approx(expect, rel=1e-12)


def test_qbracket_classical_limit():
    for n in range(-10, 11):
        assert eval_numeric(qbracket(n), 1) == n


# -- rational functions ----------------------------------------------------------


def test_ratfun_examples():
    assert RatFun.const(1) + RatFun.const(1) == RatFun.const(2)
    b2 = RatFun.bracket(2)
    assert b2 / b2 == RatFun.const(1)
    assert RatFun.bracket(3) / RatFun.bracket(1) * RatFun.bracket(1) == RatFun(qbracket(3))


def test_ratfun_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        RatFun.bracket(2) / RatFun.const(0)


def test_ratfun_canonical_equality_and_hash():
    a = RatFun(qbracket(4), qbracket(2))
    b = RatFun(LaurentPoly.from_dict({4: 1, -4: 1}))
    assert a == b and hash(a) == hash(b)


def _rand_ratfun(rng):
    num = LaurentPoly.from_dict({rng.randint(-4, 4): rng.randint(-3, 3) for _ in range(3)})
    den = qbracket(rng.randint(1, 5)) * V ** rng.randint(-2, 2)
    return RatFun(num, den)


def test_ratfun_field_axioms_random():
    rng = random.Random(11)
    for _ in range(60):
        a, b, c = (_rand_ratfun(rng) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a - a == RatFun.const(0)
        if not b.is_zero():
            assert (a / b) * b == a


# -- square-free splitting ---------------------------------------------------------


def test_squarefree_examples():
    v2m1 = LaurentPoly.from_dict({2: 1, 0: -1})
    assert squarefree_split(v2m1 * v2m1) == (1, v2m1, ONE)
    assert squarefree_split(qbracket(2)) == (1, V ** -1, LaurentPoly.from_dict({4: 1, 0: 1}))


def test_squarefree_of_bracket_products_includes_nontrivial_check():
    # v^8 + v^4 + 1 factors into three distinct cyclotomic pieces, so it is square-free
    p = LaurentPoly.from_dict({8: 1, 4: 1, 0: 1})
    factors = sympy.factor_list(to_sympy(p))[1]
    assert all(mult == 1 for _, mult in factors) and len(factors) == 3
    b2, b3 = qbracket(2), qbracket(3)
    s, S, F = squarefree_split(b2 * b2 * b3)
    assert s == 1
    assert F == p
    assert S * S * F == b2 * b2 * b3


def test_squarefree_zero_rejected():
    with pytest.raises(ValueError):
        squarefree_split(LaurentPoly.const(0))


def test_squarefree_roundtrip_random_bracket_products():
    rng = random.Random(7)
    for _ in range(100):
        p = LaurentPoly.const(rng.choice([1, -1, 2, 12]))
        for _ in range(rng.randint(1, 5)):
            p = p * qbracket(rng.choice([n for n in range(-8, 9) if n]))
        s, S, F = squarefree_split(p)
        assert LaurentPoly.const(s) * S * S * F == p
        unit, core = F.unit_split()
        assert core.derivative().is_zero() or set(core.gcd(core.derivative()).to_dict()) == {0}
        # independent oracle: sympy's square-free factorization of the same polynomial
        sq = sympy.sqf_list(sympy.expand(to_sympy(core) * _v ** (-min(core.to_dict()))))
        assert all(m == 1 for _, m in sq[1])


def test_yun_reconstructs():
    p = qbracket(2) ** 3 * qbracket(3) ** 2 * qbracket(5)
    _, core = p.unit_split()
    prod = ONE
    for i, a in enumerate(yun(core), start=1):
        prod = prod * a**i
    assert prod.primitive()[1] == core.primitive()[1]


# -- radicals ----------------------------------------------------------------------


def test_rad_make_examples():
    assert rad_make(RatFun.const(0)).is_zero()
    assert rad_make(RatFun(qbracket(1) * qbracket(1))) == RadicalScalar.one()
    r = rad_make(RatFun(qbracket(2) ** 2 * qbracket(3)), -1)
    assert to_text(r) == "(-1)*(1+v^-4)*sqrt{v^8+v^4+1}"
    expect = RadicalScalar.sqrt_of(LaurentPoly.from_dict({8: 1, 4: 1, 0: 1}),
                                   RatFun(-qbracket(2)) * RatFun.monomial(-2))
    assert r == expect


def test_rad_make_agrees_with_bracket_fast_path():
    rng = random.Random(5)
    for _ in range(50):
        num = [rng.choice([n for n in range(-7, 8) if n]) for _ in range(rng.randint(0, 3))]
        den = [rng.choice([n for n in range(-7, 8) if n]) for _ in range(rng.randint(0, 2))]
        sign = rng.choice([1, -1])
        top = ONE
        for a in num:
            top = top * qbracket(a)
        bot = ONE
        for b in den:
            bot = bot * qbracket(b)
        assert rad_from_brackets(num, den, sign) == rad_make(RatFun(top, bot), sign)


def test_radical_arith_examples():
    F = LaurentPoly.from_dict({4: 1, 0: 1})
    r = RadicalScalar.sqrt_of(F)
    assert (r + (-r)).is_zero()
    assert r * r == RadicalScalar.from_ratfun(RatFun(F))
    # sqrt([2][3]) * sqrt([2][5]) = [2] sqrt([3][5])
    a = rad_from_brackets([2, 3], [])
    b = rad_from_brackets([2, 5], [])
    assert a * b == rad_from_brackets([2, 2, 3, 5], [])
    assert a * b == rad_from_brackets([3, 5], []) * RadicalScalar.from_ratfun(RatFun.bracket(2))


def _rand_rad(rng):
    out = RadicalScalar.zero()
    for _ in range(rng.randint(1, 2)):
        args = [rng.randint(1, 6) for _ in range(rng.randint(0, 3))]
        out = out + rad_from_brackets(args, [], rng.choice([1, -1]))
    return out


def test_radical_commutative_ring_random():
    rng = random.Random(19)
    for _ in range(100):
        a, b, c = _rand_rad(rng), _rand_rad(rng), _rand_rad(rng)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_eval_numeric_homomorphism():
    rng = random.Random(23)
    for _ in range(50):
        a, b = _rand_rad(rng), _rand_rad(rng)
        ea, eb = eval_numeric(a, 1.1), eval_numeric(b, 1.1)
        assert eval_numeric(a * b, 1.1) == pytest.approx(ea * eb, rel=1e-12)
        assert eval_numeric(a + b, 1.1) == pytest.approx(ea + eb, rel=1e-12, abs=1e-12)


def test_eval_numeric_examples():
    assert eval_numeric(qbracket(2), 1) == 2
    assert eval_numeric(rad_make(RatFun(qbracket(1) ** 2)), 0.7) == 1


def test_text_roundtrip():
    rng = random.Random(29)
    for _ in range(40):
        r = _rand_rad(rng) * RadicalScalar.from_ratfun(RatFun(ONE, qbracket(rng.randint(1, 4))))
        assert parse_text(to_text(r)) == r
    assert to_text(RadicalScalar.zero()) == "0"


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6).filter(bool), max_size=4),
       st.lists(st.integers(-6, 6).filter(bool), max_size=3))
def test_radical_square_is_radicand(num, den):
    r = rad_from_brackets(num, den)
    top = ONE
    for a in num:
        top = top * qbracket(a)
    bot = ONE
    for b in den:
        bot = bot * qbracket(b)
    sq = (r * r).rational_part()
    target = RatFun(top, bot)
    assert sq == target or sq == -target


# -- expression trees and randomized identity testing ----------------------------


def test_pit_literal_equal():
    assert pit_equal(bracket(2), bracket(2), trials=5).equal


@pytest.mark.parametrize("mode", ["exact", "rational", "prime"])
def test_pit_three_term_bracket_recurrence(mode):
    a = sym("a")
    lhs = bracket(a - 1) - bracket(2) * bracket(a) + bracket(a + 1)
    verdict = pit_equal(lhs, 0, trials=20, seed=1, mode=mode)
    assert verdict.equal
    assert verdict.confidence


def test_pit_recurrence_at_named_points():
    a = sym("a")
    lhs = bracket(a - 1) - bracket(2) * bracket(a) + bracket(a + 1)
    for val in (1, 0, -17):
        assert lhs.evaluate({"a": val}).is_zero()


def test_pit_counterexample_reproduces():
    a = sym("a")
    verdict = pit_equal(bracket(a), bracket(a + 1), trials=10, seed=2, mode="exact")
    assert not verdict.equal
    point = verdict.counterexample
    assert bracket(a).evaluate(point) != bracket(a + 1).evaluate(point)


def test_pit_trials_must_be_positive():
    with pytest.raises(ValueError):
        pit_equal(bracket(2), bracket(2), trials=0)


def test_pit_prime_mode_rejects_false_identity():
    a = sym("a")
    assert not pit_equal(bracket(2 * a), bracket(2) * bracket(a), trials=10, mode="prime").equal


def test_domains_construct():
    rng = random.Random(0)
    for mode in ("exact", "rational", "prime", "numeric"):
        assert make_domain(mode, rng) is not None
    with pytest.raises(ValueError):
        make_domain("bogus", rng)


def test_qpower_mutations_touch_one_occurrence_at_a_time():
    from uqainf.qarith import Prod, Q, qpower_mutations, reached_qpowers, sym

    qm2 = Q ** -2
    tree = Q * qm2 + qm2 * sym("a") + Prod("i", 1, 0, Q ** 3)
    muts = list(qpower_mutations(tree))
    assert [(p, d) for p, d, _ in muts] == [(0, 1), (0, -1), (1, 1), (1, -1), (2, 1), (2, -1), (3, 1), (3, -1)]
    assert reached_qpowers(tree) == {0, 1, 2}  # the empty product never evaluates q^3
    at = {"a": Fraction(5)}
    from uqainf.qarith.expr import FractionDomain

    dom = FractionDomain(Fraction(3, 2))
    base = tree.evaluate(at, dom)
    q = Fraction(3, 2)
    # shifting only the first q^-2 changes exactly the first product
    assert muts[2][2].evaluate(at, dom) - base == q * (q ** -1 - q ** -2)
    assert muts[6][2].evaluate(at, dom) == base
