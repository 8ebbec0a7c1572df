"""Rotation-number estimation and continued-fraction machinery."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .circle_maps import CircleLift, iterate_orbit

DEFAULT_RATIONAL_CUTOFF = 10 ** 12
REMAINDER_EPS = 1e-14
# Past this denominator |x - p/q| ~ 1/q^2 drops below double resolution, so
# further quotients of a float input describe its binary expansion only.
FLOAT_RESOLUTION_Q = 2 ** 24


@dataclass(frozen=True)
class RotationEstimate:
    estimate: float
    n: int

    @property
    def error_bound(self) -> float:
        return 1.0 / self.n


def estimate_rotation_number(lift: CircleLift, x0: float, n: int) -> RotationEstimate:
    """``(Phi^n(x0) - x0) / n``; within ``1/n`` of the rotation number for any homeomorphism."""
    if n < 1:
        raise ValueError("n must be >= 1")
    orbit = iterate_orbit(lift, x0, n)
    w0, f0 = int(orbit.winding[0]), float(orbit.frac[0])
    wn, fn = int(orbit.winding[-1]), float(orbit.frac[-1])
    return RotationEstimate(((wn - w0) + (fn - f0)) / n, n)


@dataclass(frozen=True)
class ContinuedFraction:
    """``x = 1/(a_0 + 1/(a_1 + ...))`` with exact integer convergents ``p_k/q_k``."""

    value: float
    quotients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    terminated: bool

    @property
    def denominators(self) -> tuple[int, ...]:
        return tuple(q for _, q in self.convergents)

    def __len__(self) -> int:
        return len(self.quotients)


def convergents_from_quotients(quotients) -> list[tuple[int, int]]:
    # seeds (p_-2, q_-2) = (1, 0), (p_-1, q_-1) = (0, 1) for the 1/(a_0 + ...) convention
    p2, q2, p1, q1 = 1, 0, 0, 1
    out = []
    for a in quotients:
        p, q = a * p1 + p2, a * q1 + q2
        out.append((p, q))
        p2, q2, p1, q1 = p1, q1, p, q
    return out


def reduce_unit(x) -> Fraction:
    """Exact fractional part of a float or Fraction."""
    fx = x if isinstance(x, Fraction) else Fraction(float(x))
    return fx - math.floor(fx)


def cf_expand(x, max_depth: int = 40, rational_cutoff: int = DEFAULT_RATIONAL_CUTOFF) -> ContinuedFraction:
    """Gauss-map expansion of ``x`` in ``(0, 1)``.

    The input float is converted to the rational it exactly represents, so the
    quotients are those of that binary number and every convergent satisfies
    the classical approximation inequality exactly.  Expansion stops at
    ``max_depth``, when the remainder drops below ``1e-14``, or when a quotient
    exceeds ``rational_cutoff``; the last two are reported as termination.
    Float inputs also stop, unterminated, once ``q_k`` reaches
    ``FLOAT_RESOLUTION_Q``.  Fraction inputs are expanded exactly.
    """
    exact = isinstance(x, Fraction)
    r = x if exact else Fraction(float(x))
    if not (0 < r < 1):
        raise ValueError(f"continued fraction input must lie in (0, 1), got {float(r)!r}")
    quotients: list[int] = []
    terminated = False
    q1, q2 = 1, 0
    while len(quotients) < max_depth:
        if not exact and q1 >= FLOAT_RESOLUTION_Q:
            break
        y = 1 / r
        a = math.floor(y)
        if a > rational_cutoff:
            terminated = True
            break
        quotients.append(a)
        q1, q2 = a * q1 + q2, q1
        r = y - a
        if r == 0 or (not exact and r < REMAINDER_EPS):
            terminated = True
            break
    if terminated and len(quotients) >= 2 and quotients[-1] == 1:
        # [..., a, 1] and [..., a + 1] are the same rational; keep the canonical form
        quotients[-2:] = [quotients[-2] + 1]
    return ContinuedFraction(float(x), tuple(quotients), tuple(convergents_from_quotients(quotients)), terminated)


def closest_return_denominators(cf: ContinuedFraction, q_max: int) -> list[int]:
    if not cf.quotients:
        raise ValueError("empty continued fraction")
    return [q for q in cf.denominators if q <= q_max]


@dataclass(frozen=True)
class ArithmeticReport:
    classification: str
    max_ratio: float
    tail_ratio: float
    max_quotient: int
    bounded_type_prefix: bool
    hypothesis3_prefix: bool
    hypothesis3_violations: tuple[int, ...]
    epsilon: float
    heuristic: bool = True


def classify_arithmetic_type(cf: ContinuedFraction, epsilon: float = 1.0) -> ArithmeticReport:
    """Prefix statistics of the expansion.

    HEURISTIC: a finite prefix cannot certify a Diophantine class.  The
    bounded-type indicator holds when the second half of the prefix sets no new
    record for ``q_{k+1}/q_k``.  The growth indicator checks
    ``a_m < (m+1)^(1+epsilon)`` for ``m >= 1`` (``m = 0`` cannot satisfy it for
    any number, and the condition is only asked of large ``m``).
    """
    qs = cf.denominators
    if len(qs) < 2:
        raise ValueError("need at least two convergents")
    ratios = [b / a for a, b in zip(qs, qs[1:])]
    max_ratio = max(ratios)
    violations = tuple(m for m, a in enumerate(cf.quotients) if m >= 1 and not a < (m + 1) ** (1 + epsilon))
    if cf.terminated:
        return ArithmeticReport("rational", max_ratio, ratios[-1], max(cf.quotients), False, False, violations, epsilon)
    half = len(ratios) // 2
    bounded = max(ratios[half:]) <= max(ratios[: max(half, 1)])
    return ArithmeticReport(
        "irrational_prefix",
        max_ratio,
        ratios[-1],
        max(cf.quotients),
        bounded,
        not violations,
        violations,
        epsilon,
    )
