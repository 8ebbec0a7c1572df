import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from curlicue.circle_maps import ArnoldLift, Rotation, example_pl, iterate_orbit
from curlicue.core import build_curlicue
from curlicue.curvature import (
    cdf_distance,
    circumradius_series,
    empirical_distribution,
    formula_mean,
    periodicity_test,
    radius_of_displacement,
    radius_series,
    range_coverage,
    recurrence_test,
)
from curlicue.errors import PreconditionError

LN2 = math.log(2)


@given(st.floats(0.001, 0.999), st.integers(-3, 3))
def test_radius_formula_is_periodic_and_symmetric(d, m):
    r = radius_of_displacement(d)
    assert radius_of_displacement(d + m) == pytest.approx(r)
    assert radius_of_displacement(1 - d) == pytest.approx(r)
    assert r >= 0.5


def test_collinear_radius_is_infinite():
    assert np.isinf(radius_of_displacement([0.0, 1.0, 3.0, 1e-13])).all()
    assert radius_of_displacement(0.5) == 0.5


def test_geometric_oracle_on_minimal_example():
    orbit = iterate_orbit(example_pl(LN2), 0.37, 5000)
    geo = circumradius_series(build_curlicue(orbit).z)
    formula = radius_series(orbit).r[: len(geo)]
    assert np.max(np.abs(geo - formula)) < 1e-9


def test_rotation_series_is_constant():
    s = radius_series(iterate_orbit(Rotation(LN2), 0.1, 500))
    assert np.all(s.r == s.r[0]) and s.r[0] == pytest.approx(formula_mean(LN2))


def test_periodicity_defects():
    s = radius_series(iterate_orbit(example_pl(Fraction(2, 5)), 0.0, 1000))
    assert periodicity_test(s, 5, 900) < 1e-12
    assert periodicity_test(s, 3, 900) > 0.01
    with pytest.raises(ValueError):
        periodicity_test(s, 5, 999)


def test_arnold_approaches_two_cycle():
    # the superattracting 2-cycle is hit within a handful of steps; defects shrink with the start index
    s = radius_series(iterate_orbit(ArnoldLift(0.5, 1.0), 0.1, 40))
    r = s.r
    pairs = [max(abs(r[k + 2] - r[k]), abs(r[k + 3] - r[k + 1])) for k in (0, 2, 4, 6)]
    assert pairs[0] > pairs[1] > pairs[2] > pairs[3] == 0.0
    assert periodicity_test(s, 2, 20) == 0.0


def test_recurrence_window_is_stable():
    windows = []
    for n in (5000, 10_000):
        rep = recurrence_test(radius_series(iterate_orbit(example_pl(LN2), 0.0, n)), 0.05)
        assert rep.observed and rep.heuristic
        windows.append(rep.window)
    assert windows == [16, 16]
    assert not recurrence_test(radius_series(iterate_orbit(example_pl(LN2), 0.0, 2000)), 1e-9).observed


def test_coverage_of_displacement_image():
    s = radius_series(iterate_orbit(example_pl(LN2), 0.0, 100_000))
    cov = range_coverage(s, delta=0.01)
    assert cov.fraction == 1.0
    assert cov.target == pytest.approx((0.5239, 0.8149), abs=1e-4)


def test_coverage_needs_minimal_map():
    with pytest.raises(PreconditionError):
        range_coverage(radius_series(iterate_orbit(example_pl(Fraction(2, 5)), 0.0, 100)))
    deg = range_coverage(radius_series(iterate_orbit(Rotation(LN2), 0.0, 100)))
    assert deg.fraction == 1.0


def test_empirical_distribution_bins_and_overflow():
    s = radius_series(iterate_orbit(example_pl(LN2), 0.0, 2000))
    d = empirical_distribution(s, bins=20, value_range=(0.55, 0.75))
    assert d.total == 2000 and d.overflow > 0 and d.underflow > 0
    assert d.cdf(10.0) == 1.0 and d.cdf(0.0) == 0.0
    with pytest.raises(ValueError):
        empirical_distribution(radius_series(iterate_orbit(Rotation(LN2), 0.0, 10)), bins=50)


def test_mean_radius_versus_closed_form_is_reported():
    # the cosec-of-rho value is not the ergodic mean for a non-rigid map; this records the measured gap
    s = radius_series(iterate_orbit(example_pl(LN2), 0.0, 100_000))
    d = empirical_distribution(s)
    assert d.mean == pytest.approx(0.6375, abs=1e-3)
    assert formula_mean(LN2) == pytest.approx(0.60865544719, abs=1e-10)


def test_cdf_distance_detects_different_maps():
    a = empirical_distribution(radius_series(iterate_orbit(example_pl(LN2), 0.0, 5000)))
    b = empirical_distribution(radius_series(iterate_orbit(example_pl(math.pi - 3), 0.0, 5000)))
    assert cdf_distance(a, a) == 0.0
    assert cdf_distance(a, b) > 0.1


def test_cdf_distance_merges_rounding_split_atoms():
    # one atom of mass 1/2, split by an ulp differently in the two samples
    from curlicue.curvature import CurvatureSeries

    base = np.linspace(1.0, 2.0, 100)
    a = np.concatenate([base, np.full(100, 0.75)])
    b = np.concatenate([base, np.full(100, np.nextafter(0.75, 1.0))])
    da, db = (empirical_distribution(CurvatureSeries(x, x, None), bins=10) for x in (a, b))
    assert cdf_distance(da, db, tie_tol=0.0) == pytest.approx(0.5)
    assert cdf_distance(da, db) == 0.0
