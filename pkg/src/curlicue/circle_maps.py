"""Lifts of orientation-preserving circle homeomorphisms and their orbits.

Every map here is a degree-one increasing function ``Phi: R -> R`` with
``Phi(x + 1) = Phi(x) + 1``.  Evaluation is organised around
:meth:`CircleLift.split`, which takes a point ``t`` in ``[0, 1)`` and returns
``Phi(t)`` as an ``(integer, fraction)`` pair.  Orbits are iterated on the
fractional part only and the winding count is carried separately as an
integer, so long orbits do not lose resolution as the lift grows.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ConfigError

TWO_PI = 2.0 * math.pi

# |x0| beyond this leaves no bits for the fractional part of a double.
MAX_LIFT = 2.0 ** 52


def _frac(x: float) -> tuple[int, float]:
    m = math.floor(x)
    return int(m), x - m


def _normalise(j: int, f: float) -> tuple[int, float]:
    if f >= 1.0:
        return j + 1, f - 1.0
    if f < 0.0:
        return j - 1, f + 1.0
    return j, f


class CircleLift:
    """Base class for lifts.

    Subclasses implement :meth:`split`.  ``rotation_number`` holds the
    analytically known rotation number when there is one: a
    :class:`~fractions.Fraction` for rational values, a float otherwise.
    """

    name: str = "lift"
    rotation_number: Fraction | float | None = None

    def split(self, t: float) -> tuple[int, float]:
        raise NotImplementedError

    def __call__(self, x):
        if np.ndim(x) == 0:
            return eval_lift(self, float(x))
        return np.array([eval_lift(self, float(v)) for v in np.ravel(x)]).reshape(np.shape(x))

    @property
    def is_rational(self) -> bool | None:
        """True/False when the rotation number is known, None otherwise."""
        if self.rotation_number is None:
            return None
        return isinstance(self.rotation_number, Fraction)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


def _split_rho(rho: Fraction | float) -> tuple[int, float]:
    if isinstance(rho, Fraction):
        n = math.floor(rho)
        return int(n), float(rho - n)
    return _frac(float(rho))


class Rotation(CircleLift):
    """Rigid rotation ``x -> x + rho``."""

    def __init__(self, rho: Fraction | float):
        self.rotation_number = rho
        self._rho_int, self._rho_frac = _split_rho(rho)
        self.name = f"rotation:{rho}"

    @property
    def rho(self) -> float:
        return float(self.rotation_number)

    def split(self, t):
        return _normalise(self._rho_int, t + self._rho_frac)


@dataclass(frozen=True)
class PiecewiseLinearConjugacy:
    """Increasing piecewise-linear homeomorphism of ``[0, 1]`` with ``h(0)=0, h(1)=1``.

    Extended to the line by ``h(x + 1) = h(x) + 1``.  The inverse is evaluated
    segment by segment, so breakpoint images map back exactly.
    """

    xs: tuple[float, ...]
    ys: tuple[float, ...]

    def __post_init__(self):
        xs, ys = self.xs, self.ys
        if len(xs) != len(ys) or len(xs) < 2:
            raise ConfigError("breakpoint table needs at least two (x, h(x)) pairs")
        if xs[0] != 0 or ys[0] != 0 or xs[-1] != 1 or ys[-1] != 1:
            raise ConfigError("breakpoint table must start at (0, 0) and end at (1, 1)")
        for a, b in zip(xs, xs[1:]):
            if not b > a:
                raise ConfigError("breakpoint abscissae must be strictly increasing")
        for a, b in zip(ys, ys[1:]):
            if not b > a:
                raise ConfigError("breakpoint ordinates must be strictly increasing")

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[float, float]]) -> "PiecewiseLinearConjugacy":
        return cls(tuple(float(p[0]) for p in pairs), tuple(float(p[1]) for p in pairs))

    @staticmethod
    def _interp(t: float, src: tuple[float, ...], dst: tuple[float, ...]) -> float:
        i = bisect.bisect_right(src, t) - 1
        i = min(max(i, 0), len(src) - 2)
        x0, x1 = src[i], src[i + 1]
        y0, y1 = dst[i], dst[i + 1]
        if t == x0:
            return y0
        return y0 + (t - x0) * (y1 - y0) / (x1 - x0)

    def forward_unit(self, t: float) -> float:
        """``h`` on ``[0, 1]``."""
        return self._interp(t, self.xs, self.ys)

    def inverse_unit(self, s: float) -> float:
        """``h^-1`` on ``[0, 1]``."""
        return self._interp(s, self.ys, self.xs)

    def forward(self, x: float) -> float:
        m, t = _frac(x)
        return m + self.forward_unit(t)

    def inverse(self, y: float) -> float:
        m, s = _frac(y)
        return m + self.inverse_unit(s)


# h from the rhombus/pentagon examples: slopes 2/3, 2, 2/3, 2.
EXAMPLE_PL = PiecewiseLinearConjugacy(
    (0.0, 0.375, 0.5, 0.875, 1.0),
    (0.0, 0.25, 0.5, 0.75, 1.0),
)


class QuadraticConjugacy:
    """``h(x) = 1/2 - 2(x - 1/2)^2`` on ``[0, 1/2]`` and ``1/2 + 2(x - 1/2)^2`` on ``[1/2, 1]``."""

    def forward_unit(self, t: float) -> float:
        d = t - 0.5
        return 0.5 - 2.0 * d * d if d <= 0 else 0.5 + 2.0 * d * d

    def inverse_unit(self, s: float) -> float:
        d = s - 0.5
        if d <= 0:
            return 0.5 - math.sqrt(-d / 2.0)
        return 0.5 + math.sqrt(d / 2.0)

    def forward(self, x: float) -> float:
        m, t = _frac(x)
        return m + self.forward_unit(t)

    def inverse(self, y: float) -> float:
        m, s = _frac(y)
        return m + self.inverse_unit(s)


class ConjugatedRotation(CircleLift):
    """``Phi = h^-1 o R_rho o h`` for a conjugacy ``h`` of the unit interval."""

    def __init__(self, conjugacy, rho: Fraction | float, name: str | None = None):
        self.conjugacy = conjugacy
        self.rotation_number = rho
        self._rho_int, self._rho_frac = _split_rho(rho)
        self.name = name or f"conjugated-rotation:{rho}"

    def split(self, t):
        j, s = _normalise(self._rho_int, self.conjugacy.forward_unit(t) + self._rho_frac)
        return _normalise(j, self.conjugacy.inverse_unit(s))

    def orbit_arrays(self, x0: float, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Orbit of ``x0`` computed in the conjugate coordinate.

        ``y_k = h(x0) + k rho`` is accumulated exactly in integers and rounded
        once, so no error builds up along the orbit and points mapped onto a
        non-Lipschitz spot of ``h^-1`` stay as accurate as a double allows.
        """
        m0, t0 = _frac(x0)
        y0 = Fraction(self.conjugacy.forward_unit(t0))
        r = Fraction(self._rho_frac) if not isinstance(self.rotation_number, Fraction) else (
            self.rotation_number - self._rho_int
        )
        den = y0.denominator * r.denominator // math.gcd(y0.denominator, r.denominator)
        Y0, R = y0.numerator * (den // y0.denominator), r.numerator * (den // r.denominator)
        winding = np.empty(n + 1, dtype=np.int64)
        frac = np.empty(n + 1, dtype=float)
        winding[0], frac[0] = m0, t0
        inv = self.conjugacy.inverse_unit
        for k in range(1, n + 1):
            j, rem = divmod(Y0 + k * R, den)
            w, f = _normalise(m0 + k * self._rho_int + j, inv(rem / den))
            winding[k], frac[k] = w, f
        return winding, frac

    def closed_form(self, x: float, n: int) -> float:
        """``Phi^n(x)`` as ``h^-1(h(x) + n*rho)``, for consistency checks."""
        return self.conjugacy.inverse(self.conjugacy.forward(x) + n * float(self.rotation_number))


class ArnoldLift(CircleLift):
    """``x -> x + omega - K/(2 pi) sin(2 pi x)`` with ``0 <= K <= 1``."""

    def __init__(self, omega: float, K: float):
        if not (0.0 <= K <= 1.0):
            raise ConfigError(f"Arnold coupling K={K} outside [0, 1]; the map is not a homeomorphism")
        self.omega = float(omega)
        self.K = float(K)
        self._w_int, self._w_frac = _frac(self.omega)
        self.name = f"arnold:{omega}:{K}"

    @classmethod
    def unchecked(cls, omega: float, K: float) -> "ArnoldLift":
        """Build without the K range guard (used to demonstrate monotonicity failures)."""
        obj = cls.__new__(cls)
        obj.omega, obj.K = float(omega), float(K)
        obj._w_int, obj._w_frac = _frac(obj.omega)
        obj.name = f"arnold:{omega}:{K}"
        return obj

    def split(self, t):
        # sin(2 pi t) is exactly zero at t = 0 only; at t = 1/2 it leaves ~1e-17.
        y = t + self._w_frac - self.K / TWO_PI * math.sin(TWO_PI * t)
        j, f = _frac(y)
        return j + self._w_int, f


def example_pl(rho: Fraction | float) -> ConjugatedRotation:
    """The piecewise-linear conjugated rotation used for the rhombus, pentagon and minimal examples."""
    return ConjugatedRotation(EXAMPLE_PL, rho, name=f"conj-pl:{rho}")


def example_quadratic(rho: Fraction | float) -> ConjugatedRotation:
    return ConjugatedRotation(QuadraticConjugacy(), rho, name=f"conj-quad:{rho}")


def eval_lift(lift: CircleLift, x: float) -> float:
    """Evaluate ``Phi(x)`` for any finite real ``x``."""
    if not math.isfinite(x):
        raise ValueError(f"cannot evaluate a lift at non-finite x={x}")
    m, t = _frac(x)
    j, f = lift.split(t)
    return (m + j) + f


@dataclass(frozen=True)
class OrbitLift:
    """``u_k = Phi^k(x0)`` for ``k = 0..n`` stored as ``winding[k] + frac[k]``."""

    lift: CircleLift
    x0: float
    winding: np.ndarray
    frac: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.frac) - 1

    def __len__(self) -> int:
        return len(self.frac)

    @property
    def values(self) -> np.ndarray:
        """The unreduced lift values as floats."""
        return self.winding.astype(float) + self.frac

    @property
    def reduced(self) -> np.ndarray:
        """``u_k mod 1``."""
        return self.frac

    def tail(self, m: int) -> "OrbitLift":
        """The orbit from ``u_m`` onwards."""
        if not 0 <= m <= self.n:
            raise ValueError(f"m={m} outside 0..{self.n}")
        x = float(self.winding[m]) + float(self.frac[m])
        return OrbitLift(self.lift, x, self.winding[m:], self.frac[m:])

    def shifted(self, m: int) -> "OrbitLift":
        """Same orbit under the lift choice ``x0 + m``."""
        return OrbitLift(self.lift, self.x0 + m, self.winding + m, self.frac)


def iterate_orbit(lift: CircleLift, x0: float, n: int) -> OrbitLift:
    """Return ``u_0 = x0, u_{k+1} = Phi(u_k)`` for ``k < n``."""
    if n < 1:
        raise ValueError("orbit length n must be >= 1")
    x0 = float(x0)
    if not math.isfinite(x0):
        raise ValueError(f"non-finite starting point x0={x0}")
    if abs(x0) >= MAX_LIFT:
        raise OverflowError(f"lift magnitude |x0|={abs(x0):g} leaves no fractional resolution")
    if isinstance(lift, ConjugatedRotation):
        winding, frac = lift.orbit_arrays(x0, n)
        return OrbitLift(lift, x0, winding, frac)
    winding = np.empty(n + 1, dtype=np.int64)
    frac = np.empty(n + 1, dtype=float)
    w, f = _frac(x0)
    winding[0], frac[0] = w, f
    split = lift.split
    for k in range(1, n + 1):
        j, f = split(f)
        w += j
        winding[k] = w
        frac[k] = f
    if abs(w) >= 2 ** 62:
        raise OverflowError("winding count exceeded the int64 range")
    return OrbitLift(lift, x0, winding, frac)


def displacement_sequence(orbit: OrbitLift) -> np.ndarray:
    """``d_k = u_k - u_{k-1}`` for ``k = 1..n``."""
    if len(orbit) < 2:
        raise ValueError("need at least two orbit points")
    if isinstance(orbit.lift, Rotation):
        # Psi is the constant rho; avoid rounding noise from differencing
        return np.full(orbit.n, orbit.lift.rho)
    return np.diff(orbit.winding).astype(float) + np.diff(orbit.frac)


def displacement_function(lift: CircleLift, x) -> np.ndarray:
    """``Psi(x) = Phi(x) - x`` evaluated on points of ``[0, 1)``."""
    out = []
    for t in np.atleast_1d(np.asarray(x, dtype=float)):
        j, f = lift.split(float(t))
        out.append(j + (f - t))
    return np.array(out)


def displacement_range(lift: CircleLift, grid: int = 20001) -> tuple[float, float]:
    """Min and max of ``Psi`` sampled on a uniform grid of ``[0, 1)`` (plus known breakpoints)."""
    pts = np.linspace(0.0, 1.0, grid, endpoint=False)
    conj = getattr(lift, "conjugacy", None)
    if isinstance(conj, PiecewiseLinearConjugacy):
        # Psi of a PL conjugated rotation is PL with kinks at xs and at h^-1(ys - rho).
        rho = lift._rho_frac
        extra = list(conj.xs[:-1]) + [conj.inverse_unit((y - rho) % 1.0) for y in conj.ys[:-1]]
        pts = np.union1d(pts, np.asarray(extra) % 1.0)
    psi = displacement_function(lift, pts)
    return float(psi.min()), float(psi.max())


@dataclass
class DegreeOneCheck:
    passed: bool
    max_periodicity_violation: float
    min_increment: float
    monotone: bool


def verify_degree_one(lift: CircleLift, grid: int = 1000) -> DegreeOneCheck:
    """Check ``Phi(x+1) - Phi(x) - 1 = 0`` and strict monotonicity on a uniform grid of ``[0, 1]``."""
    if grid < 2:
        raise ValueError("grid must have at least two points")
    xs = np.linspace(0.0, 1.0, grid)
    vals = np.array([eval_lift(lift, float(x)) for x in xs])
    shifted = np.array([eval_lift(lift, float(x) + 1.0) for x in xs])
    viol = float(np.max(np.abs(shifted - vals - 1.0)))
    inc = float(np.min(np.diff(vals)))
    monotone = inc > 0.0
    return DegreeOneCheck(viol < 1e-12 and monotone, viol, inc, monotone)


# ---------------------------------------------------------------------------
# map spec grammar: rotation:<rho> | conj-pl:<rho> | conj-quad:<rho> | arnold:<omega>:<K>

# Decimal tokens with small denominators are kept exact so rational
# rotation numbers are recognised; longer decimals are treated as floats.
MAX_EXACT_DENOMINATOR = 10 ** 4

_TOKENS = {
    "ln2": math.log(2.0),
    "pi": math.pi,
    "golden": (math.sqrt(5.0) - 1.0) / 2.0,
}


def parse_number(token: str) -> Fraction | float:
    """Parse a rotation-number token: decimal, ``p/q``, ``ln2``, ``pi`` or ``golden``."""
    tok = token.strip()
    if tok in _TOKENS:
        return _TOKENS[tok]
    try:
        exact = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a number: {token!r}") from None
    if exact.denominator <= MAX_EXACT_DENOMINATOR:
        return exact
    return float(exact)


def parse_map(spec: str) -> CircleLift:
    """Build a lift from a ``kind:args`` spec string."""
    kind, _, rest = spec.partition(":")
    args = rest.split(":") if rest else []
    if kind == "rotation" and len(args) == 1:
        return Rotation(parse_number(args[0]))
    if kind == "conj-pl" and len(args) == 1:
        return example_pl(parse_number(args[0]))
    if kind == "conj-quad" and len(args) == 1:
        return example_quadratic(parse_number(args[0]))
    if kind == "arnold" and len(args) == 2:
        return ArnoldLift(float(parse_number(args[0])), float(parse_number(args[1])))
    raise ConfigError(
        f"malformed map spec {spec!r}; expected rotation:<rho>, conj-pl:<rho>, "
        "conj-quad:<rho> or arnold:<omega>:<K>"
    )
