"""Curlicue vertex sequences built from orbit lifts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from .circle_maps import OrbitLift
from .geometry import compensated_cumsum, convex_hull, hull_diameter, running_diameter

TWO_PI = 2.0 * math.pi

# Above this many vertices the per-vertex diameter is only exact at dyadic checkpoints.
EXACT_DIAMETER_LIMIT = 10 ** 6


def unit_steps(orbit: OrbitLift, q: int = 1, count: int | None = None) -> np.ndarray:
    """``exp(2 pi i q u_k)`` for the first ``count`` orbit points.

    ``q u_k`` is reduced as ``q (u_k mod 1) mod 1``; the integer part of
    ``u_k`` never enters the product, so large lifts cost no precision.
    """
    frac = orbit.frac if count is None else orbit.frac[:count]
    t = frac if q == 1 else np.mod(q * frac, 1.0)
    ang = TWO_PI * t
    return np.cos(ang) + 1j * np.sin(ang)


@dataclass(eq=False)
class Curlicue:
    """Vertices ``z_0 = 0, z_n = z_{n-1} + exp(2 pi i q u_{n-1})``.

    Built from an orbit ``u_0..u_N`` the curve has vertices ``z_0..z_N``
    (the last orbit point only enters through curvature).
    """

    z: np.ndarray
    orbit: OrbitLift | None = field(repr=False)
    q: int = 1

    @property
    def n(self) -> int:
        """Number of edges."""
        return len(self.z) - 1

    def __len__(self) -> int:
        return len(self.z)

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.z.real, self.z.imag])

    @cached_property
    def diameters(self) -> np.ndarray:
        """Running ``Diam Gamma_n`` for ``n = 0..N``.

        Exact for up to ``EXACT_DIAMETER_LIMIT`` vertices.  Beyond that only
        dyadic checkpoints are exact and intermediate entries repeat the last
        checkpoint value (a lower bound).
        """
        if len(self.z) <= EXACT_DIAMETER_LIMIT:
            return running_diameter(self.points)
        return _checkpoint_diameters(self.points)

    def partial_diameter(self, t: int) -> float:
        return partial_diameter(self, t)


def _checkpoint_diameters(pts: np.ndarray) -> np.ndarray:
    n = len(pts)
    out = np.zeros(n)
    marks = [0] + [2 ** k for k in range(int(math.log2(n - 1)) + 1)] + [n - 1]
    hull = pts[:1]
    last, prev = 0.0, 0
    for m in sorted(set(marks)):
        hull = convex_hull(np.vstack([hull, pts[prev:m + 1]]))
        d = hull_diameter(hull)
        out[prev:m] = last
        out[m] = d
        last, prev = d, m + 1
    return out


def build_curlicue(orbit: OrbitLift, q: int = 1) -> Curlicue:
    if q < 1:
        raise ValueError("multiplier q must be >= 1")
    if len(orbit) < 1:
        raise ValueError("empty orbit")
    steps = unit_steps(orbit, q, count=max(orbit.n, 0))
    z = compensated_cumsum(steps.real) + 1j * compensated_cumsum(steps.imag)
    return Curlicue(z, orbit, q)


def curve_from_steps(steps: np.ndarray) -> Curlicue:
    """Curlicue from explicit unit steps (no source orbit)."""
    steps = np.asarray(steps, dtype=complex)
    z = compensated_cumsum(steps.real) + 1j * compensated_cumsum(steps.imag)
    return Curlicue(z, None, 1)


@dataclass(frozen=True)
class BirkhoffStats:
    """Partial sums ``S_n = z_n`` and their averages.

    ``c`` is the mean of ``S_n / n`` over the last window of the computed
    range (the last quarter by default), which damps the ``O(1/n)`` ripple
    of a single endpoint.
    """

    averages: np.ndarray
    sup_abs: float
    c: complex
    window: tuple[int, int]

    @property
    def c_pair(self) -> tuple[float, float]:
        return (self.c.real, self.c.imag)


def birkhoff_stats(curve: Curlicue, window: int | None = None) -> BirkhoffStats:
    if curve.n < 1:
        raise ValueError("curve has no edges")
    n = np.arange(1, curve.n + 1)
    avg = curve.z[1:] / n
    w = window or max(1, curve.n // 4)
    lo = curve.n - w + 1
    c = complex(avg[lo - 1:].mean())
    return BirkhoffStats(avg, float(np.max(np.abs(curve.z))), c, (lo, curve.n))


def partial_diameter(curve: Curlicue, t: int) -> float:
    """``Diam Gamma_t``: largest distance among ``z_0..z_t``."""
    if not 0 <= t <= curve.n:
        raise ValueError(f"t={t} outside 0..{curve.n}")
    if "diameters" in curve.__dict__ and len(curve.z) <= EXACT_DIAMETER_LIMIT:
        return float(curve.diameters[t])
    return hull_diameter(convex_hull(curve.points[: t + 1]))


def dyadic_diameters(curve: Curlicue, checkpoints: Iterable[int]) -> dict[int, float]:
    """Exact diameters at increasing checkpoints, reusing the hull between them."""
    pts = curve.points
    out: dict[int, float] = {}
    hull = pts[:1]
    prev = 1
    for m in sorted(set(checkpoints)):
        if m > curve.n:
            raise ValueError(f"checkpoint {m} beyond curve length {curve.n}")
        if m >= prev:
            hull = convex_hull(np.vstack([hull, pts[prev:m + 1]]))
            prev = m + 1
        out[m] = hull_diameter(hull)
    return out


def weyl_curve(orbit: OrbitLift, q_list: Iterable[int]) -> dict[int, Curlicue]:
    """The multiple curves ``Gamma(q u)`` sharing one orbit."""
    return {int(q): build_curlicue(orbit, int(q)) for q in sorted(set(q_list))}
