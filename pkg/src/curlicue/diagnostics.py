"""Classification of curlicues: periodic polygons, Denjoy-Koksma returns,
growth exponents, superficiality ratios and invariant-section samples."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circle_maps import CircleLift, OrbitLift, displacement_sequence, iterate_orbit
from .core import Curlicue, build_curlicue, dyadic_diameters
from .errors import PreconditionError
from .geometry import fit_circle
from .rotation import ContinuedFraction, cf_expand, estimate_rotation_number

CLOSURE_TOL_EXACT = 1e-9
CLOSURE_TOL_FLOAT = 1e-6
DK_BOUND = 4.0 * math.sqrt(2.0)
DK_COORD_BOUND = 4.0
DK_SLACK = 1e-6

CLOSED_EQUILATERAL = "closed_equilateral"
CLOSED_REGULAR = "closed_regular"
UNBOUNDED_DRIFT = "unbounded_drift"

SUPERFICIAL = "superficial_indicator"
NON_SUPERFICIAL = "non_superficial_indicator"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PolygonReport:
    q: int
    average: complex
    classification: str
    drift: complex
    schlafli: tuple[int, int] | None
    displacements: tuple[float, ...]
    period_mismatch: float
    closure_tol: float

    @property
    def closed(self) -> bool:
        return self.classification != UNBOUNDED_DRIFT


def classify_periodic_case(
    lift: CircleLift,
    x0: float,
    q: int,
    closure_tol: float = CLOSURE_TOL_EXACT,
    period_tol: float | None = None,
) -> PolygonReport:
    """Classify the curve of a ``q``-periodic orbit (mod 1) as a closed or drifting polygon."""
    if q < 1:
        raise ValueError("period q must be >= 1")
    period_tol = closure_tol if period_tol is None else period_tol
    orbit = iterate_orbit(lift, x0, q)
    jump = float(orbit.frac[-1] - orbit.frac[0])
    mismatch = abs(jump - round(jump))
    if mismatch > period_tol:
        raise PreconditionError(
            f"orbit of x0={x0} is not {q}-periodic mod 1: |u_q - u_0 - round(u_q - u_0)| = {mismatch:.3e}"
        )
    curve = build_curlicue(orbit)
    drift = complex(curve.z[q] - curve.z[0])
    disp = displacement_sequence(orbit)
    disp_mod = np.mod(disp, 1.0)
    schlafli = None
    if abs(drift) < closure_tol:
        # all turning increments equal mod 1 (compare on the circle)
        spread = np.abs((disp_mod - disp_mod[0] + 0.5) % 1.0 - 0.5)
        if np.all(spread < max(closure_tol, 1e-12)):
            cls = CLOSED_REGULAR
            p = int(round(disp_mod[0] * q)) % q
            schlafli = (q, p)
        else:
            cls = CLOSED_EQUILATERAL
    else:
        cls = UNBOUNDED_DRIFT
    return PolygonReport(
        q, drift / q, cls, drift, schlafli, tuple(float(d) for d in disp_mod), mismatch, closure_tol
    )


def detect_period(orbit: OrbitLift, max_period: int = 64, tol: float = CLOSURE_TOL_EXACT) -> int | None:
    """Smallest ``q`` with ``u_q = u_0 mod 1`` within ``tol``."""
    f0 = float(orbit.frac[0])
    for q in range(1, min(max_period, orbit.n) + 1):
        d = float(orbit.frac[q]) - f0
        if abs(d - round(d)) <= tol:
            return q
    return None


@dataclass(frozen=True)
class DKReport:
    q: tuple[int, ...]
    residuals: tuple[float, ...]
    coord_residuals: tuple[tuple[float, float], ...]
    bound: float
    passed: tuple[bool, ...]
    all_passed: bool
    decreasing_trend: bool
    c: complex


def denjoy_koksma_check(
    curve: Curlicue,
    cf: ContinuedFraction,
    c: complex | tuple[float, float] = 0j,
    bound: float = DK_BOUND,
    slack: float = DK_SLACK,
) -> DKReport:
    """Residuals ``|z_{q_n} - q_n c|`` at the closest-return times within the curve.

    The bound is the Euclidean form of the coordinate-wise variation bound 4.
    ``decreasing_trend`` reports whether the residuals decrease monotonically
    along ``q_n``; it is informational only.
    """
    if cf.terminated:
        raise PreconditionError("rotation number expansion terminated (rational): no irrational closest returns")
    c = complex(*c) if isinstance(c, tuple) else complex(c)
    qs = [q for q in cf.denominators if q <= curve.n]
    if not qs:
        raise PreconditionError(f"no closest-return time q_n within the curve length {curve.n}")
    res, coords, ok = [], [], []
    for q in qs:
        w = curve.z[q] - q * c
        res.append(float(abs(w)))
        coords.append((float(abs(w.real)), float(abs(w.imag))))
        ok.append(abs(w) <= bound + slack)
    trend = len(res) > 1 and all(b <= a for a, b in zip(res, res[1:]))
    return DKReport(tuple(qs), tuple(res), tuple(coords), bound, tuple(ok), all(ok), trend, c)


def dyadic_checkpoints(n: int, start: int = 64) -> list[int]:
    out = []
    m = start
    while m <= n:
        out.append(m)
        m *= 2
    return out


@dataclass(frozen=True)
class GrowthReport:
    checkpoints: tuple[int, ...]
    abs_z: tuple[float, ...]
    sup_abs_z: tuple[float, ...]
    diameters: tuple[float, ...]
    ratios: tuple[float, ...]
    beta: float
    const: float
    fit_residual: float
    fit_range: tuple[int, int]
    verdict: str
    verdict_reason: str
    sup_over_log: float
    sup_over_power_log: float | None
    r: float | None
    thresholds: dict = field(default_factory=dict)


def growth_exponent_fit(
    curve: Curlicue,
    checkpoints: list[int] | None = None,
    r: float | None = None,
    fit_from: int | None = None,
    irrational: bool | None = None,
    stability: float = 0.10,
    tail_growth: float = 2.0,
    growth_slack: float = 0.01,
) -> GrowthReport:
    """Fit ``log max_{m<=n}|z_m| ~ beta log n + const`` over dyadic checkpoints.

    By default the fit uses the upper half of the checkpoints.  Verdict rules
    (HEURISTIC, a finite range cannot decide the limit of ``n / Diam``):

    * superficial_indicator if the last dyadic doubling multiplies
      ``n / Diam`` by at least ``tail_growth * (1 - growth_slack)``;
    * non_superficial_indicator if ``n / Diam`` over the upper half of the
      checkpoints stays below ``(1 + stability)`` times its median;
    * inconclusive otherwise.

    With ``irrational=True`` a curve whose growth fit looks bounded is labelled
    superficial outright: a bounded curve through infinitely many distinct
    ``u_n`` mod 1 is always superficial.
    """
    if curve.n < 64:
        raise ValueError("growth fit needs at least 64 edges")
    cps = sorted(set(checkpoints)) if checkpoints else dyadic_checkpoints(curve.n)
    if len(cps) < 2:
        raise ValueError("need at least two checkpoints")
    absz = np.abs(curve.z)
    supz = np.maximum.accumulate(absz)
    diam = dyadic_diameters(curve, cps)
    ns = np.array(cps, dtype=float)
    sup_at = supz[cps]
    d_at = np.array([diam[m] for m in cps])
    ratios = ns / d_at

    lo = fit_from if fit_from is not None else cps[(len(cps) - 1) // 2]
    sel = ns >= lo
    if sel.sum() < 2:
        sel = ns >= ns[-2]
    x, y = np.log(ns[sel]), np.log(sup_at[sel])
    A = np.column_stack([x, np.ones_like(x)])
    (beta, const), *_ = np.linalg.lstsq(A, y, rcond=None)
    fit_res = float(np.sqrt(np.mean((A @ np.array([beta, const]) - y) ** 2)))

    top = ratios[(len(ratios) - 1) // 2:]
    med = float(np.median(top))
    growth = ratios[-1] / ratios[-2]
    if irrational and beta < 0.1 and top.max() > top.min() * 1.5:
        verdict, reason = SUPERFICIAL, "bounded-looking curve with infinitely many distinct u_n mod 1"
    elif growth >= tail_growth * (1.0 - growth_slack):
        verdict, reason = SUPERFICIAL, f"n/Diam grew by {growth:.4f}x over the last doubling"
    elif top.max() <= (1.0 + stability) * med:
        verdict, reason = NON_SUPERFICIAL, f"n/Diam within {stability:.0%} of its median {med:.6g}"
    else:
        verdict, reason = INCONCLUSIVE, "neither stabilising nor doubling"

    n_all = np.arange(2, curve.n + 1)
    logs = np.log(n_all)
    sup_log = float(np.max(absz[2:] / logs))
    sup_pow = None
    if r is not None:
        sup_pow = float(np.max(absz[2:] / (n_all ** (1.0 - 1.0 / r) * logs)))
    return GrowthReport(
        tuple(cps),
        tuple(float(v) for v in absz[cps]),
        tuple(float(v) for v in sup_at),
        tuple(float(v) for v in d_at),
        tuple(float(v) for v in ratios),
        float(beta),
        float(const),
        fit_res,
        (int(ns[sel][0]), int(ns[sel][-1])),
        verdict,
        reason,
        sup_log,
        sup_pow,
        r,
        {"stability": stability, "tail_growth": tail_growth, "growth_slack": growth_slack, "heuristic": True},
    )


def subtract_drift(curve: Curlicue, v: complex | tuple[float, float]) -> Curlicue:
    """Residual curve ``w_n = z_n - n v`` (same vertex count, no source orbit)."""
    v = complex(*v) if isinstance(v, tuple) else complex(v)
    n = np.arange(len(curve.z))
    return Curlicue(curve.z - n * v, None, curve.q)


@dataclass(frozen=True)
class SectionSample:
    theta: np.ndarray
    z: np.ndarray
    order: np.ndarray
    max_jump: float
    max_gap: float
    closure_defect: float
    center: complex
    radius: float
    circle_deviation: float
    warnings: tuple[str, ...] = ()


def _require_minimal(orbit: OrbitLift) -> None:
    lift = orbit.lift
    rational = lift.is_rational
    if rational:
        raise PreconditionError(f"{lift.name} has rational rotation number; minimality required")
    if rational is None:
        est = estimate_rotation_number(lift, orbit.x0, max(orbit.n, 1000))
        frac = est.estimate % 1.0
        if frac < est.error_bound or frac > 1 - est.error_bound:
            raise PreconditionError(f"{lift.name} has rotation number ~0 mod 1; minimality required")
        cf = cf_expand(frac, rational_cutoff=int(est.n))
        if cf.terminated:
            raise PreconditionError(
                f"{lift.name} has rational-looking rotation number {est.estimate:.6g}; minimality required"
            )


def reconstruct_section(curve: Curlicue, orbit: OrbitLift | None = None, min_samples: int = 16) -> SectionSample:
    """Sort the pairs ``(u_n mod 1, z_n)`` by angle: samples of the section ``u`` with ``u(x0) = 0``."""
    orbit = orbit if orbit is not None else curve.orbit
    if orbit is None:
        raise ValueError("section reconstruction needs the source orbit")
    m = min(len(curve.z), len(orbit.frac))
    if m < min_samples:
        raise PreconditionError(f"only {m} samples; at least {min_samples} required")
    _require_minimal(orbit)
    theta = orbit.frac[:m]
    z = curve.z[:m]
    order = np.argsort(theta, kind="stable")
    th, zs = theta[order], z[order]
    jumps = np.abs(np.diff(zs))
    gaps = np.diff(th)
    wrap_gap = 1.0 - th[-1] + th[0]
    closure = float(abs(zs[-1] - zs[0]))
    warnings = []
    sup_half = float(np.max(np.abs(z[: m // 2])))
    sup_all = float(np.max(np.abs(z)))
    if sup_all > 1.5 * sup_half + 1.0:
        warnings.append(f"sup|z_n| still growing ({sup_half:.4g} -> {sup_all:.4g}); curve may be unbounded")
    center, radius, dev = fit_circle(z)
    return SectionSample(
        th,
        zs,
        order,
        float(max(jumps.max(), closure)),
        float(max(gaps.max(), wrap_gap)),
        closure,
        center,
        radius,
        dev,
        tuple(warnings),
    )

