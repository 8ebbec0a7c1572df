import math
from fractions import Fraction

import numpy as np
import pytest

from curlicue.circle_maps import ArnoldLift, Rotation, example_pl, iterate_orbit
from curlicue.core import build_curlicue
from curlicue.diagnostics import (
    CLOSED_EQUILATERAL,
    CLOSED_REGULAR,
    INCONCLUSIVE,
    NON_SUPERFICIAL,
    SUPERFICIAL,
    UNBOUNDED_DRIFT,
    classify_periodic_case,
    denjoy_koksma_check,
    detect_period,
    dyadic_checkpoints,
    growth_exponent_fit,
    reconstruct_section,
    subtract_drift,
)
from curlicue.errors import PreconditionError
from curlicue.rotation import cf_expand

LN2 = math.log(2)


@pytest.mark.parametrize("p, q", [(1, 3), (2, 5), (3, 7), (1, 2), (5, 12)])
def test_rational_rotations_give_regular_polygons(p, q):
    rep = classify_periodic_case(Rotation(Fraction(p, q)), 0.2, q)
    assert rep.classification == CLOSED_REGULAR and rep.schlafli == (q, p) and rep.closed


def test_rhombus_is_equilateral_not_regular():
    rep = classify_periodic_case(example_pl(Fraction(1, 4)), 0.0, 4)
    assert rep.classification == CLOSED_EQUILATERAL and rep.schlafli is None


def test_pentagon_drifts():
    rep = classify_periodic_case(example_pl(Fraction(2, 5)), 0.0, 5)
    assert rep.classification == UNBOUNDED_DRIFT and not rep.closed
    assert rep.average == pytest.approx(complex(-0.0078, -0.0273), abs=1e-4)
    assert rep.average == pytest.approx(complex(-0.00776835372, -0.02734574720), abs=1e-10)


def test_non_periodic_orbit_is_a_precondition_failure():
    with pytest.raises(PreconditionError, match="not 3-periodic"):
        classify_periodic_case(example_pl(Fraction(2, 5)), 0.0, 3)
    with pytest.raises(PreconditionError):
        classify_periodic_case(Rotation(LN2), 0.0, 5)


def test_detect_period():
    assert detect_period(iterate_orbit(Rotation(Fraction(3, 10)), 0.1, 50)) == 10
    assert detect_period(iterate_orbit(Rotation(LN2), 0.1, 50)) is None
    arnold = iterate_orbit(ArnoldLift(0.5, 1.0), 0.1, 100)
    assert detect_period(arnold, tol=1e-6) is None  # transient at the start
    assert classify_periodic_case(ArnoldLift(0.5, 1.0), float(arnold.frac[50]), 2, 1e-6).closed


def test_dk_requires_irrational_and_enough_data():
    curve = build_curlicue(iterate_orbit(Rotation(LN2), 0.0, 1000))
    with pytest.raises(PreconditionError):
        denjoy_koksma_check(curve, cf_expand(Fraction(3, 10)))
    with pytest.raises(PreconditionError):
        denjoy_koksma_check(build_curlicue(iterate_orbit(Rotation(LN2), 0.0, 0 + 1)), cf_expand(0.999))


def test_dk_on_rotation_respects_circle_bound():
    curve = build_curlicue(iterate_orbit(Rotation(LN2), 0.0, 20_000))
    rep = denjoy_koksma_check(curve, cf_expand(LN2))
    assert rep.all_passed
    assert max(rep.residuals) <= 1.0 / math.sin(math.pi * LN2) + 1e-9
    assert rep.q[:5] == (1, 3, 10, 13, 88)


def test_dk_fails_when_the_average_is_wrong():
    curve = build_curlicue(iterate_orbit(example_pl(LN2), 0.0, 20_000))
    rep = denjoy_koksma_check(curve, cf_expand(LN2), c=(0.01, 0.0))
    assert not rep.all_passed


def test_dyadic_checkpoints():
    assert dyadic_checkpoints(1000) == [64, 128, 256, 512]
    assert dyadic_checkpoints(1024) == [64, 128, 256, 512, 1024]


def test_growth_verdicts():
    drift = growth_exponent_fit(build_curlicue(iterate_orbit(example_pl(Fraction(2, 5)), 0.0, 2 ** 14)))
    assert drift.verdict == NON_SUPERFICIAL
    assert abs(drift.beta - 1) < 0.05
    assert drift.ratios[-1] == pytest.approx(5 / 0.14214, rel=0.01)  # 5/|z_5|

    bounded = growth_exponent_fit(build_curlicue(iterate_orbit(Rotation(LN2), 0.0, 2 ** 14)), irrational=True)
    assert bounded.verdict == SUPERFICIAL and abs(bounded.beta) < 0.05
    assert bounded.thresholds["heuristic"]
    assert {SUPERFICIAL, NON_SUPERFICIAL, INCONCLUSIVE} >= {drift.verdict, bounded.verdict}


def test_growth_reports_rate_statistics():
    g = growth_exponent_fit(build_curlicue(iterate_orbit(example_pl(LN2), 0.0, 4096)), r=1.0)
    assert g.sup_over_log > 0 and g.sup_over_power_log == pytest.approx(g.sup_over_log)


def test_drift_subtraction_leaves_one_period_sup():
    curve = build_curlicue(iterate_orbit(example_pl(Fraction(2, 5)), 0.0, 10_000))
    resid = subtract_drift(curve, curve.z[5] / 5)
    # frozen from a direct five-step sum: the remainder is 5-periodic
    assert np.max(np.abs(resid.z)) == pytest.approx(1.0081392982343, abs=1e-9)
    assert np.max(np.abs(resid.z)) == pytest.approx(np.max(np.abs(resid.z[:6])), abs=1e-9)


def test_section_of_rotation_is_the_circle():
    sec = reconstruct_section(build_curlicue(iterate_orbit(Rotation(LN2), 0.0, 1000)))
    assert sec.center == pytest.approx(complex(0.5, 0.5 / math.tan(math.pi * LN2)), abs=1e-9)
    assert sec.circle_deviation < 1e-9 and not sec.warnings
    assert np.all(np.diff(sec.theta) >= 0)


def test_section_of_minimal_example_fills_in():
    jumps = []
    for n in (1000, 10_000, 100_000):
        sec = reconstruct_section(build_curlicue(iterate_orbit(example_pl(LN2), 0.0, n)))
        jumps.append(sec.max_jump)
        assert not sec.warnings
    assert jumps[0] > jumps[1] > jumps[2]


def test_section_preconditions():
    with pytest.raises(PreconditionError):
        reconstruct_section(build_curlicue(iterate_orbit(Rotation(Fraction(1, 3)), 0.0, 100)))
    with pytest.raises(PreconditionError):
        reconstruct_section(build_curlicue(iterate_orbit(ArnoldLift(0.5, 1.0), 0.1, 2000)))
    with pytest.raises(PreconditionError):
        reconstruct_section(build_curlicue(iterate_orbit(Rotation(LN2), 0.0, 8)))


def test_section_warns_on_growing_curve():
    orbit = iterate_orbit(Rotation(LN2), 0.0, 2000)
    curve = build_curlicue(orbit)
    curve.z = curve.z + np.arange(len(curve.z)) * 0.01
    assert reconstruct_section(curve, orbit).warnings
