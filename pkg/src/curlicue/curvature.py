"""Local discrete radius of curvature along a curlicue.

The circle through ``z_{n-1}, z_n, z_{n+1}`` has radius
``r_n = 1/2 |cosec(eta_n / 2)|`` with turning angle ``eta_n = 2 pi (u_n - u_{n-1})``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circle_maps import CircleLift, OrbitLift, displacement_range, displacement_sequence
from .errors import PreconditionError

COLLINEAR_EPS = 1e-12


def radius_of_displacement(d):
    """``g(d) = 1/2 |cosec(pi d)|``, with ``inf`` when ``d`` is within 1e-12 of an integer."""
    d = np.asarray(d, dtype=float)
    t = np.mod(d, 1.0)
    dist = np.minimum(t, 1.0 - t)
    with np.errstate(divide="ignore"):
        r = 0.5 / np.abs(np.sin(np.pi * t))
    return np.where(dist < COLLINEAR_EPS, np.inf, r)


@dataclass(frozen=True)
class CurvatureSeries:
    """``eta[k]`` and ``r[k]`` hold ``eta_n`` and ``r_n`` for ``n = k + 1``."""

    eta: np.ndarray
    r: np.ndarray
    orbit: OrbitLift | None

    def __len__(self) -> int:
        return len(self.r)

    @property
    def finite(self) -> np.ndarray:
        return self.r[np.isfinite(self.r)]

    @property
    def infinite_count(self) -> int:
        return int(np.count_nonzero(~np.isfinite(self.r)))


def radius_series(orbit: OrbitLift) -> CurvatureSeries:
    d = displacement_sequence(orbit)
    return CurvatureSeries(2.0 * math.pi * d, radius_of_displacement(d), orbit)


def periodicity_test(series: CurvatureSeries, q: int, tail: int) -> float:
    """``max |r_{n+q} - r_n|`` over the last ``tail`` admissible indices."""
    r = series.r
    if q < 1 or tail < 1:
        raise ValueError("q and tail must be positive")
    if len(r) < q + tail:
        raise ValueError(f"series of length {len(r)} too short for q={q}, tail={tail}")
    a = r[len(r) - q - tail: len(r) - q]
    b = r[len(r) - tail:]
    both_inf = np.isinf(a) & np.isinf(b)
    diff = np.where(both_inf, 0.0, np.abs(b - a))
    return float(diff.max())


@dataclass(frozen=True)
class RecurrenceReport:
    epsilon: float
    window: int | None
    observed: bool
    length: int
    heuristic: bool = True


def recurrence_test(series: CurvatureSeries, epsilon: float) -> RecurrenceReport:
    """Smallest window length ``W`` such that, over the data, every window of
    ``W`` consecutive indices at or after ``n`` holds a value within
    ``epsilon`` of ``r_n``, for every ``n``.

    HEURISTIC finite-data proxy for almost strong recurrence: windows that
    would run past the end of the data count against ``W``, and ``W`` is
    reported as not observed once it reaches half the series length.
    """
    r = series.r
    L = len(r)
    if L < 2:
        raise ValueError("series too short")
    order = np.argsort(r, kind="stable")
    sorted_r = r[order]
    worst = 0
    for n in range(L):
        v = r[n]
        if not math.isfinite(v):
            continue
        lo = np.searchsorted(sorted_r, v - epsilon, side="right")
        hi = np.searchsorted(sorted_r, v + epsilon, side="left")
        idx = order[lo:hi]
        idx = np.sort(idx[idx >= n])
        # idx always contains n itself
        gaps = np.diff(idx) - 1
        gap = int(gaps.max()) if len(gaps) else 0
        tail = L - 1 - int(idx[-1])
        worst = max(worst, gap, tail)
        if worst >= L // 2:
            return RecurrenceReport(epsilon, None, False, L)
    return RecurrenceReport(epsilon, worst + 1, True, L)


@dataclass(frozen=True)
class CoverageReport:
    target: tuple[float, float]
    delta: float
    bins: int
    covered: int
    fraction: float


def range_coverage(
    series: CurvatureSeries,
    displacement_interval: tuple[float, float] | None = None,
    delta: float = 0.01,
) -> CoverageReport:
    """Fraction of ``delta``-subintervals of ``g(Psi([0,1]))`` holding at least one ``r_n``.

    The image of the displacement interval ``[a, b]`` under
    ``g(x) = 1/2 |cosec(pi x)|`` is computed exactly (``g`` has its minimum at 1/2).
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    orbit = series.orbit
    if orbit is not None:
        _require_minimal_lift(orbit.lift)
    if displacement_interval is None:
        if orbit is None:
            raise ValueError("need the displacement interval or a source orbit")
        displacement_interval = displacement_range(orbit.lift)
    a, b = displacement_interval
    a0 = a - math.floor(a)
    b0 = a0 + (b - a)
    ends = radius_of_displacement([a0, b0])
    lo = 0.5 if a0 <= 0.5 <= b0 else float(min(ends))
    hi = float(max(ends))
    if hi - lo <= delta:
        return CoverageReport((lo, hi), delta, 1, 1, 1.0)
    nb = int(math.ceil((hi - lo) / delta))
    vals = series.finite
    vals = vals[(vals >= lo) & (vals <= hi)]
    k = np.minimum(((vals - lo) / delta).astype(int), nb - 1)
    covered = len(np.unique(k))
    return CoverageReport((lo, hi), delta, nb, covered, covered / nb)


def _require_minimal_lift(lift: CircleLift) -> None:
    if lift.is_rational:
        raise PreconditionError(f"{lift.name} has rational rotation number; density needs a minimal map")


@dataclass(frozen=True)
class EmpiricalDistribution:
    sample: np.ndarray
    edges: np.ndarray
    counts: np.ndarray
    overflow: int
    underflow: int
    excluded_infinite: int
    mean: float

    @property
    def total(self) -> int:
        return int(self.counts.sum()) + self.overflow + self.underflow

    def cdf(self, x) -> np.ndarray:
        return np.searchsorted(self.sample, x, side="right") / len(self.sample)


def empirical_distribution(
    series: CurvatureSeries, bins: int = 50, value_range: tuple[float, float] | None = None
) -> EmpiricalDistribution:
    """Histogram of finite radii.  Edges default to the sample min/max; values
    outside a supplied ``value_range`` land in the under/overflow counters."""
    vals = np.sort(series.finite)
    if len(series.r) < bins:
        raise ValueError(f"series of length {len(series.r)} shorter than bins={bins}")
    lo, hi = value_range if value_range is not None else (float(vals[0]), float(vals[-1]))
    if hi <= lo:
        hi = lo + 1e-12
    edges = np.linspace(lo, hi, bins + 1)
    inside = vals[(vals >= lo) & (vals <= hi)]
    counts, _ = np.histogram(inside, bins=edges)
    return EmpiricalDistribution(
        vals,
        edges,
        counts,
        int(np.count_nonzero(vals > hi)),
        int(np.count_nonzero(vals < lo)),
        series.infinite_count,
        float(vals.mean()),
    )


def cdf_distance(a: EmpiricalDistribution, b: EmpiricalDistribution, tie_tol: float = 1e-12) -> float:
    """Kolmogorov sup-distance between two empirical CDFs, with horizontal slack ``tie_tol``.

    Radii of piecewise-linear maps have atoms; rounding splits an atom into
    values a few ulps apart, which a plain sup-distance would read as a jump
    of the atom's full mass.  ``tie_tol = 0`` gives the plain statistic.
    """
    grid = np.concatenate([a.sample, b.sample])
    d1 = a.cdf(grid - tie_tol) - b.cdf(grid + tie_tol)
    d2 = b.cdf(grid - tie_tol) - a.cdf(grid + tie_tol)
    return float(max(0.0, d1.max(), d2.max()))


def formula_mean(rho: float) -> float:
    """``1/2 |cosec(pi rho)|``, the average radius claimed for minimal maps."""
    return float(radius_of_displacement(rho))


def circumradius_series(z: np.ndarray) -> np.ndarray:
    """Geometric circumradius of every consecutive vertex triple; independent of the cosec formula."""
    a, b, c = z[:-2], z[1:-1], z[2:]
    ab, bc, ca = np.abs(b - a), np.abs(c - b), np.abs(a - c)
    cross = (b - a).real * (c - a).imag - (b - a).imag * (c - a).real
    with np.errstate(divide="ignore"):
        return np.where(cross == 0.0, np.inf, ab * bc * ca / (2.0 * np.abs(cross)))
