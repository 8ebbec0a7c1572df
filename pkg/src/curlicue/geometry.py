"""Planar helpers: compensated prefix sums, convex hulls, diameters, circles."""

from __future__ import annotations

import math

import numpy as np


def compensated_cumsum(steps: np.ndarray) -> np.ndarray:
    """Prefix sums ``s_0 = 0, s_k = steps[0] + ... + steps[k-1]`` with Neumaier compensation."""
    steps = np.asarray(steps, dtype=float)
    out = np.empty(len(steps) + 1)
    out[0] = 0.0
    s = 0.0
    c = 0.0
    for k, x in enumerate(steps.tolist(), start=1):
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
        out[k] = s + c
    return out


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: np.ndarray) -> np.ndarray:
    """Andrew's monotone chain.  Returns hull vertices counter-clockwise, no repeats."""
    pts = np.unique(np.asarray(points, dtype=float).reshape(-1, 2), axis=0)
    if len(pts) <= 2:
        return pts
    plist = pts.tolist()
    lower: list = []
    for p in plist:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(plist):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def hull_diameter(hull: np.ndarray) -> float:
    """Diameter of a convex polygon by rotating calipers over antipodal pairs."""
    h = len(hull)
    if h < 2:
        return 0.0
    if h == 2:
        return float(math.dist(hull[0], hull[1]))
    pts = hull.tolist()

    def area2(i, j, k):
        return abs(_cross(pts[i], pts[j], pts[k]))

    best = 0.0
    j = 1
    for i in range(h):
        i1 = (i + 1) % h
        while area2(i, i1, (j + 1) % h) > area2(i, i1, j):
            j = (j + 1) % h
        best = max(best, math.dist(pts[i], pts[j]), math.dist(pts[i1], pts[j]))
    return best


def set_diameter(points: np.ndarray) -> float:
    return hull_diameter(convex_hull(points))


def running_diameter(points: np.ndarray, chunk: int = 512) -> np.ndarray:
    """Exact ``max_{i,j<=n} |p_i - p_j|`` for every prefix ``n``.

    Only hull vertices of the earlier points can be farthest from a new point,
    so each chunk of new points is compared with the hull of everything before
    it plus the chunk itself; the hull is then rebuilt.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    n = len(pts)
    out = np.zeros(n)
    if n == 0:
        return out
    hull = pts[:1]
    best = 0.0
    start = 1
    while start < n:
        stop = min(start + chunk, n)
        block = pts[start:stop]
        # farthest-corner distance of the old bounding box bounds distance to any old point
        lo, hi = hull.min(axis=0), hull.max(axis=0)
        far = np.hypot(np.maximum(np.abs(block[:, 0] - lo[0]), np.abs(block[:, 0] - hi[0])),
                       np.maximum(np.abs(block[:, 1] - lo[1]), np.abs(block[:, 1] - hi[1])))
        m_old = np.zeros(len(block))
        need = far > best
        if need.any():
            idx = np.flatnonzero(need)
            step = max(1, 4_000_000 // len(hull))
            for s in range(0, len(idx), step):
                sub = block[idx[s:s + step]]
                d = np.hypot(sub[:, None, 0] - hull[None, :, 0], sub[:, None, 1] - hull[None, :, 1])
                m_old[idx[s:s + step]] = d.max(axis=1)
        dd = np.hypot(block[:, None, 0] - block[None, :, 0], block[:, None, 1] - block[None, :, 1])
        dd = np.tril(dd)
        m_in = dd.max(axis=1)
        cur = np.maximum.accumulate(np.maximum(m_old, m_in))
        out[start:stop] = np.maximum(cur, best)
        best = float(out[stop - 1])
        hull = convex_hull(np.vstack([hull, block]))
        start = stop
    return out


def circumradius(a: complex, b: complex, c: complex) -> float:
    """Radius of the circle through three points; ``inf`` when they are collinear."""
    ab, bc, ca = abs(b - a), abs(c - b), abs(a - c)
    cross = (b - a).real * (c - a).imag - (b - a).imag * (c - a).real
    if cross == 0.0:
        return math.inf
    return ab * bc * ca / (2.0 * abs(cross))


def fit_circle(z: np.ndarray) -> tuple[complex, float, float]:
    """Algebraic least-squares circle fit.  Returns ``(center, radius, max |dist - radius|)``."""
    z = np.asarray(z, dtype=complex)
    # shift to the centroid for conditioning
    m = z.mean()
    x, y = (z - m).real, (z - m).imag
    A = np.column_stack([x, y, np.ones_like(x)])
    b = x * x + y * y
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    cx, cy = sol[0] / 2.0, sol[1] / 2.0
    r = math.sqrt(sol[2] + cx * cx + cy * cy)
    center = complex(cx, cy) + m
    dev = float(np.max(np.abs(np.abs(z - center) - r)))
    return center, r, dev
