import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from curlicue.circle_maps import ArnoldLift, Rotation, example_pl
from curlicue.rotation import (
    cf_expand,
    classify_arithmetic_type,
    closest_return_denominators,
    convergents_from_quotients,
    estimate_rotation_number,
)

LN2 = math.log(2)
GOLDEN = (math.sqrt(5) - 1) / 2

# Frozen from an mpmath evaluation at 60 digits.
LN2_QUOTIENTS = [1, 2, 3, 1, 6, 3, 1, 1, 2, 1, 1, 1, 1, 3, 10, 1, 1, 1, 2, 1]
LN2_CONVERGENTS = [(1, 1), (2, 3), (7, 10), (9, 13), (61, 88), (192, 277), (253, 365), (445, 642)]
PI_QUOTIENTS = [7, 15, 1, 292, 1, 1, 1, 2, 1, 3]


def test_ln2_matches_oracle():
    cf = cf_expand(LN2)
    assert list(cf.quotients[:20]) == LN2_QUOTIENTS
    assert list(cf.convergents[:8]) == LN2_CONVERGENTS
    assert not cf.terminated


def test_pi_matches_oracle():
    cf = cf_expand(math.pi - 3)
    assert list(cf.quotients[:10]) == PI_QUOTIENTS


def test_mpmath_oracle_agrees_live():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 60
    x = mpmath.log(2)
    q = []
    for _ in range(20):
        x = 1 / x
        a = int(mpmath.floor(x))
        q.append(a)
        x -= a
    assert q[1:] == LN2_QUOTIENTS[1:] and q[0] == LN2_QUOTIENTS[0]


def test_closest_returns_for_ln2():
    cf = cf_expand(LN2)
    assert closest_return_denominators(cf, 1000) == [1, 3, 10, 13, 88, 277, 365, 642]


def test_rational_terminates():
    for x in (0.3, Fraction(3, 10)):
        cf = cf_expand(x)
        assert cf.terminated and list(cf.quotients) == [3, 3] and cf.convergents[-1] == (3, 10)
    assert list(cf_expand(0.5).quotients) == [2]
    assert classify_arithmetic_type(cf_expand(Fraction(3, 10))).classification == "rational"


@given(st.fractions(min_value=Fraction(1, 10 ** 6), max_value=Fraction(999999, 10 ** 6), max_denominator=10 ** 6))
def test_exact_expansion_reconstructs_fraction(x):
    cf = cf_expand(x)
    assert cf.terminated
    p, q = cf.convergents[-1]
    assert Fraction(p, q) == x
    assert cf.quotients[-1] >= 2 or len(cf.quotients) == 1


def test_convergent_recurrence_seeds():
    assert convergents_from_quotients([2, 1, 3]) == [(1, 2), (1, 3), (4, 11)]


def test_golden_is_bounded_type_and_fibonacci():
    cf = cf_expand(GOLDEN)
    assert set(cf.quotients[:30]) == {1}
    rep = classify_arithmetic_type(cf)
    assert rep.bounded_type_prefix and rep.max_quotient == 1
    assert rep.tail_ratio == pytest.approx((1 + math.sqrt(5)) / 2, rel=1e-6)
    assert rep.heuristic


def test_hypothesis3_violation_detected():
    # a huge partial quotient breaks q_{m+1} < C q_m^{1+eps}
    from curlicue.rotation import ContinuedFraction

    qs = [1, 1, 1, 1000, 1, 1]
    cf = ContinuedFraction(0.0, tuple(qs), tuple(convergents_from_quotients(qs)), False)
    rep = classify_arithmetic_type(cf, epsilon=0.5)
    assert not rep.hypothesis3_prefix and rep.hypothesis3_violations


@pytest.mark.parametrize("lift", [Rotation(LN2), example_pl(LN2), example_pl(Fraction(2, 5))])
def test_rotation_estimate_error_bound(lift):
    for n in (10, 1000, 10_000):
        est = estimate_rotation_number(lift, 0.3, n)
        assert abs(est.estimate - float(lift.rotation_number)) <= est.error_bound
        assert est.error_bound == 1.0 / n


def test_arnold_locked_half():
    est = estimate_rotation_number(ArnoldLift(0.5, 1.0), 0.1, 10_000)
    assert est.estimate == pytest.approx(0.5, abs=1e-3)
