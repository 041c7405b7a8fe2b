from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from badapprox import (
    GOLDEN,
    SQRT2_MINUS_1,
    CertifiedValue,
    CFSpec,
    DomainError,
    QuadraticNumber,
    bounded_quotient_extrema,
    choose_surrogate,
    convergent_residual,
    convergents,
    dist_to_int,
    eval_theta,
    expand_quadratic,
    preset,
    reversal_identity_check,
    tail_and_reversal,
)

DEEP = Fraction(1, 10**40)


@st.composite
def irrational_cfs(draw):
    a0 = draw(st.integers(min_value=0, max_value=3))
    prefix = draw(st.lists(st.integers(1, 6), max_size=4))
    period = draw(st.lists(st.integers(1, 6), min_size=1, max_size=4))
    return CFSpec(a0, tuple(prefix), tuple(period))


# ---- construction and shape ------------------------------------------------


def test_validation_rejects_low_quotients():
    with pytest.raises(DomainError):
        CFSpec(0, (0,), ())
    with pytest.raises(DomainError):
        CFSpec(0, (2, -1), ())
    with pytest.raises(DomainError):
        CFSpec(0, (), (1, 0))


def test_trailing_one_folds():
    assert CFSpec(0, (2, 2, 1), ()) == CFSpec(0, (2, 3), ())
    assert CFSpec(0, (1,), ()) == CFSpec(1, (), ())
    # periodic expansions keep their shape untouched
    assert CFSpec(0, (2, 1), (3,)).prefix == (2, 1)


def test_shape_predicates():
    assert CFSpec(2, (), ()).is_integer
    assert CFSpec(0, (2, 3), ()).is_rational
    assert not GOLDEN.is_rational
    assert CFSpec(0, (2, 3), ()).expansion_length() == 2
    assert GOLDEN.expansion_length() is None
    assert GOLDEN.bound() == 1
    assert CFSpec(0, (2, 1, 3), (1, 2)).bound() == 3
    with pytest.raises(DomainError):
        CFSpec(5, (), ()).bound()


def test_rational_value():
    assert CFSpec(0, (2, 3), ()).value() == Fraction(3, 7)
    assert CFSpec(1, (2,), ()).value() == Fraction(3, 2)
    with pytest.raises(DomainError):
        GOLDEN.value()


def test_quotient_and_tail_indexing():
    cf = CFSpec(0, (2, 1, 3), (1, 2))
    assert [cf.quotient(k) for k in range(1, 8)] == [2, 1, 3, 1, 2, 1, 2]
    assert cf.tail(2) == CFSpec(0, (1, 3), (1, 2))
    assert cf.tail(4) == CFSpec(0, (), (1, 2))
    assert cf.tail(5) == CFSpec(0, (), (2, 1))
    rat = CFSpec(0, (2, 3), ())
    assert rat.quotient(2) == 3
    with pytest.raises(DomainError):
        rat.quotient(3)
    with pytest.raises(DomainError):
        rat.tail(3)
    with pytest.raises(DomainError):
        cf.quotient(0)


def test_presets():
    assert preset("golden") == GOLDEN
    assert preset("sqrt2") == SQRT2_MINUS_1
    assert preset("extremal:3") == CFSpec(0, (), (3, 1))
    for bad in ("extremal:0", "extremal:x", "pi"):
        with pytest.raises(DomainError):
            preset(bad)


def test_json_round_trip():
    for cf in (GOLDEN, CFSpec(2, (3, 1, 4), ()), CFSpec(0, (2,), (1, 5))):
        assert CFSpec.from_json(cf.to_json()) == cf
    with pytest.raises(DomainError):
        CFSpec.from_json("[1, 2]")
    with pytest.raises(DomainError):
        CFSpec.from_json("{bad json")
    with pytest.raises(DomainError):
        CFSpec.from_json('{"a0": 0, "period": [0]}')
    with pytest.raises(DomainError):
        CFSpec.from_json('{"a0": 0, "period": [1.5]}')


# ---- convergents -----------------------------------------------------------


def test_golden_convergents_are_fibonacci():
    got = [(c.p, c.q) for c in convergents(GOLDEN, 6)]
    assert got == [(0, 1), (1, 1), (1, 2), (2, 3), (3, 5), (5, 8)]


@given(irrational_cfs())
def test_convergent_recurrence_and_coprimality(cf):
    conv = convergents(cf, 12)
    quots = [cf.quotient(k) for k in range(1, 12)]
    for k in range(2, 12):
        assert conv[k].p == quots[k - 1] * conv[k - 1].p + conv[k - 2].p
        assert conv[k].q == quots[k - 1] * conv[k - 1].q + conv[k - 2].q
    for c in conv:
        assert Fraction(c.p, c.q).denominator == c.q  # gcd(p, q) == 1
    for k in range(1, 11):
        # determinant identity, also fixes the sign alternation
        det = conv[k + 1].p * conv[k].q - conv[k].p * conv[k + 1].q
        assert det == (-1) ** k


def test_rational_expansion_runs_out_short():
    conv = convergents(CFSpec(0, (2, 3), ()), 10)
    assert len(conv) == 3
    assert conv[-1].value == Fraction(3, 7)


# ---- certified evaluation --------------------------------------------------


def test_eval_theta_matches_high_precision():
    with mp.workdps(60):
        golden = (mp.sqrt(5) - 1) / 2
        for eps in (Fraction(1, 10**6), Fraction(1, 10**30)):
            ev = eval_theta(GOLDEN, eps)
            assert ev.radius <= eps
            assert abs(mp.mpf(ev.center.numerator) / ev.center.denominator - golden) < float(
                2 * ev.radius
            )


def test_eval_theta_rational_is_exact():
    ev = eval_theta(CFSpec(0, (2, 3), ()))
    assert ev == CertifiedValue(Fraction(3, 7), Fraction(0))
    with pytest.raises(DomainError):
        eval_theta(GOLDEN, Fraction(0))


def test_dist_to_int_frozen_golden():
    d3 = dist_to_int(GOLDEN, 3, DEEP)
    d5 = dist_to_int(GOLDEN, 5, DEEP)
    assert abs(d3.center - Fraction("0.1458980338")) < Fraction(1, 10**9)
    assert abs(d5.center - Fraction("0.09016994375")) < Fraction(1, 10**9)
    assert dist_to_int(GOLDEN, 0) == CertifiedValue(Fraction(0))
    assert dist_to_int(GOLDEN, -3, DEEP).center == d3.center


def test_residual_at_zero_is_fractional_part():
    r0 = convergent_residual(GOLDEN, 0, DEEP)
    theta = eval_theta(GOLDEN, DEEP)
    assert r0.agrees_with(theta)
    assert r0.center > Fraction(1, 2)  # not folded to the nearest integer
    with pytest.raises(DomainError):
        convergent_residual(CFSpec(0, (2, 3), ()), 5)


# ---- the reversal and the two residual identities --------------------------

CORPUS = [GOLDEN, SQRT2_MINUS_1, preset("extremal:3"), CFSpec(0, (2, 1, 3), (1, 2))]


def test_reversal_identity():
    for cf in CORPUS:
        for k in range(1, 21):
            assert reversal_identity_check(cf, k)


def test_residual_identities_certified():
    """q_k |q_k t - p_k| = 1/(a_{k+1} + t_{k+2} + q_{k-1}/q_k) and
    q_k |q_{k-1} t - p_{k-1}| = 1/(1 + t_{k+1} q_{k-1}/q_k), checked as
    overlapping certified intervals of width < 1e-25."""
    for cf in CORPUS:
        conv = convergents(cf, 22)
        for k in range(1, 21):
            _, phi = tail_and_reversal(cf, k, DEEP)
            assert phi == Fraction(conv[k - 1].q, conv[k].q)
            r_k = convergent_residual(cf, k, DEEP).scale(conv[k].q)
            denom = tail_and_reversal(cf, k + 2, DEEP)[0] + cf.quotient(k + 1) + phi
            rhs = denom.reciprocal()
            assert max(r_k.radius, rhs.radius) < Fraction(1, 10**25)
            assert r_k.agrees_with(rhs)

            r_prev = convergent_residual(cf, k - 1, DEEP).scale(conv[k].q)
            denom2 = 1 + tail_and_reversal(cf, k + 1, DEEP)[0].scale(phi)
            rhs2 = denom2.reciprocal()
            assert max(r_prev.radius, rhs2.radius) < Fraction(1, 10**25)
            assert r_prev.agrees_with(rhs2)


def test_residual_identity_frozen_sqrt2():
    conv = convergents(SQRT2_MINUS_1, 4)
    assert (conv[2].p, conv[2].q) == (2, 5)
    lhs = convergent_residual(SQRT2_MINUS_1, 2, DEEP).scale(5)
    assert abs(lhs.center - Fraction("0.355339059327376")) < Fraction(1, 10**12)
    lhs_prev = convergent_residual(SQRT2_MINUS_1, 1, DEEP).scale(5)
    assert abs(lhs_prev.center - Fraction("0.85786437626905")) < Fraction(1, 10**12)


# ---- surrogate substitution ------------------------------------------------


@given(irrational_cfs(), st.integers(min_value=1, max_value=200))
def test_choose_surrogate_is_minimal_and_deep_enough(cf, N):
    need = 16 * (cf.bound() + 2) * N * N
    c, c_next = choose_surrogate(cf, N)
    assert c_next.k == c.k + 1
    assert c.q * c_next.q > need
    if c.k > 0:
        shallower = convergents(cf, c.k + 1)
        assert shallower[c.k - 1].q * shallower[c.k].q <= need


@given(irrational_cfs(), st.integers(min_value=1, max_value=50))
def test_choose_surrogate_honors_min_radius(cf, N):
    c, c_next = choose_surrogate(cf, N, min_radius=Fraction(1, 10**12))
    assert c.q * c_next.q >= 10**12


@given(irrational_cfs(), st.integers(min_value=5, max_value=100))
@settings(max_examples=60)
def test_surrogate_residual_identity_exact(cf, N):
    """Replacing theta by p_K/q_K keeps the classical residual identity
    q_k r_{k-1} + q_{k-1} r_k = 1 exact, in integer form, at every k <= K."""
    cK, _ = choose_surrogate(cf, N)
    conv = convergents(cf, cK.k + 1)
    pK, qK = cK.p, cK.q
    for k in range(1, cK.k + 1):
        r_prev = abs(conv[k - 1].q * pK - conv[k - 1].p * qK)
        r_k = abs(conv[k].q * pK - conv[k].p * qK)
        assert conv[k].q * r_prev + conv[k - 1].q * r_k == qK


# ---- ordering under quotient bumps -----------------------------------------


@given(
    st.lists(st.integers(1, 5), min_size=10, max_size=10),
    st.integers(min_value=1, max_value=10),
)
def test_quotient_bump_parity(qs, k):
    qs = list(qs)
    qs[9] = max(qs[9], 2)  # keep length stable under trailing-one folding
    bumped = list(qs)
    bumped[k - 1] += 1
    before = CFSpec(0, tuple(qs), ()).value()
    after = CFSpec(0, tuple(bumped), ()).value()
    if k % 2 == 0:
        assert after > before
    else:
        assert after < before


# ---- quadratic expansion and quotient-bound extrema ------------------------


def test_expand_quadratic_known_expansions():
    alpha = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5)
    assert expand_quadratic(alpha, 6) == [1, 1, 1, 1, 1, 1]
    assert expand_quadratic(alpha - 1, 6) == [0, 1, 1, 1, 1, 1]
    assert expand_quadratic(QuadraticNumber.sqrt(2), 5) == [1, 2, 2, 2, 2]
    assert expand_quadratic(QuadraticNumber(Fraction(3, 7)), 5) == [0, 2, 3]


def test_bounded_quotient_extrema_frozen():
    want = {
        1: (0.61803398875, 1.61803398875),
        2: (0.366025403784, 2.73205080757),
        3: (0.263762615826, 3.79128784748),
        4: (0.207106781187, 4.82842712475),
    }
    for b, (lo, hi) in want.items():
        mn, mx = bounded_quotient_extrema(b)
        assert float(mn) == pytest.approx(lo, abs=1e-10)
        assert float(mx) == pytest.approx(hi, abs=1e-10)
    with pytest.raises(DomainError):
        bounded_quotient_extrema(0)
