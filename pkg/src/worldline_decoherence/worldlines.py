"""Stationary worldlines: inertial, hyperbolic and uniform circular motion.

Internal units (c = 1) throughout.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .errors import DegenerateDenominator, NonPositiveParameter, OutOfRange

#: Below this speed the circular spectra are outside their ultrarelativistic
#: regime of validity; results are still produced but flagged.
ULTRARELATIVISTIC_THRESHOLD = 0.9

R_BRACKET = (1e-8, 50.0)


class Kind(str, Enum):
    INERTIAL = "inertial"
    HYPERBOLIC = "hyperbolic"
    CIRCULAR = "circular"


class UltrarelativisticWarning(UserWarning):
    pass


@dataclass(frozen=True)
class CircularAux:
    R: float
    C_of_R: float


@dataclass(frozen=True)
class Worldline:
    """A stationary trajectory.

    Use the :meth:`inertial`, :meth:`hyperbolic` and :meth:`circular`
    constructors rather than instantiating directly.
    """

    kind: Kind
    accel: float = 0.0
    rho: float = 0.0
    xi: float = 0.0

    def __post_init__(self):
        if self.kind is Kind.HYPERBOLIC and not (self.accel > 0 and math.isfinite(self.accel)):
            raise NonPositiveParameter(f"hyperbolic acceleration must be positive, got {self.accel!r}")
        if self.kind is Kind.CIRCULAR:
            if not (self.rho > 0 and self.xi > 0):
                raise NonPositiveParameter("circular motion needs radius > 0 and angular frequency > 0")
            if not self.rho * self.xi < 1:
                raise OutOfRange(f"circular speed v = rho*xi = {self.rho * self.xi:.6g} must be < c")

    @classmethod
    def inertial(cls) -> Worldline:
        return cls(Kind.INERTIAL)

    @classmethod
    def hyperbolic(cls, a: float) -> Worldline:
        return cls(Kind.HYPERBOLIC, accel=float(a))

    @classmethod
    def circular(cls, rho: float, xi: float) -> Worldline:
        return cls(Kind.CIRCULAR, rho=float(rho), xi=float(xi))

    @classmethod
    def circular_from_speed(cls, v_over_c: float, xi: float) -> Worldline:
        return cls.circular(v_over_c / xi, xi)

    @property
    def v(self) -> float:
        return self.rho * self.xi if self.kind is Kind.CIRCULAR else 0.0

    @property
    def gamma(self) -> float:
        v = self.v
        return 1.0 / math.sqrt((1.0 - v) * (1.0 + v))

    @property
    def proper_acceleration(self) -> float:
        if self.kind is Kind.HYPERBOLIC:
            return self.accel
        if self.kind is Kind.CIRCULAR:
            return self.v * self.xi * self.gamma
        return 0.0

    @cached_property
    def aux(self) -> CircularAux:
        """Root R and prefactor C(R) for circular motion."""
        if self.kind is not Kind.CIRCULAR:
            raise OutOfRange("CircularAux is only defined for circular worldlines")
        return CircularAux(solve_R(self.v), c_of_r(self))

    @property
    def ultrarelativistic(self) -> bool:
        return self.kind is not Kind.CIRCULAR or self.v >= ULTRARELATIVISTIC_THRESHOLD

    def position(self, tau):
        """Lab-frame coordinates (t, x, y, z) at proper time ``tau``."""
        tau = np.asarray(tau, dtype=float)
        zero = np.zeros_like(tau)
        if self.kind is Kind.HYPERBOLIC:
            a = self.accel
            return np.sinh(a * tau) / a, np.cosh(a * tau) / a, zero, zero
        if self.kind is Kind.CIRCULAR:
            phase = self.xi * self.gamma * tau
            return self.gamma * tau, self.rho * np.sin(phase), self.rho * np.cos(phase), zero
        return tau, zero, zero, zero

    def describe(self) -> dict:
        out = {"trajectory": self.kind.value}
        if self.kind is Kind.HYPERBOLIC:
            out["accel"] = self.accel
        elif self.kind is Kind.CIRCULAR:
            out.update(radius=self.rho, omega=self.xi, v_over_c=self.v, gamma=self.gamma)
        out["proper_acceleration"] = self.proper_acceleration
        return out


def proper_acceleration(w: Worldline) -> float:
    return w.proper_acceleration


def _sinhc_minus_one(R):
    # sinh(R)/R - 1 without cancellation at small R
    if R < 1e-3:
        R2 = R * R
        return R2 / 6.0 * (1.0 + R2 / 20.0 * (1.0 + R2 / 42.0))
    return math.sinh(R) / R - 1.0


def _R_coth_R_minus_one(R):
    # R/tanh(R) - 1, equal to (v/c) cosh R - 1 at the root
    if R < 1e-3:
        R2 = R * R
        return R2 / 3.0 * (1.0 - R2 / 15.0 * (1.0 - 2.0 * R2 / 63.0))
    return R / math.tanh(R) - 1.0


def solve_R(v_over_c: float, xtol: float = 1e-15, maxiter: int = 200) -> float:
    """Positive root of R = (v/c) sinh R.

    Solves sinh(R)/R = c/v, whose left side increases monotonically from 1,
    with Newton steps safeguarded by a shrinking bisection bracket.
    """
    v = float(v_over_c)
    if not 0.0 < v < 1.0:
        raise OutOfRange(f"v/c must lie in (0, 1), got {v!r}")
    target = (1.0 - v) / v  # c/v - 1
    lo, hi = R_BRACKET
    g = lambda R: _sinhc_minus_one(R) - target  # noqa: E731
    if g(lo) >= 0:
        # v so close to 1 that the root is below the bracket; small-R series
        return math.sqrt(6.0 * target)
    # sinh(R)/R >= 1 + R^2/6, so this overshoots the root; Newton then
    # descends monotonically on the convex g
    R = min(max(math.sqrt(6.0 * target), lo), hi)
    for _ in range(maxiter):
        gR = g(R)
        if gR == 0:
            return R
        if gR < 0:
            lo = R
        else:
            hi = R
        dg = (R * math.cosh(R) - math.sinh(R)) / (R * R) if R > 1e-4 else R / 3.0
        step_ok = dg > 0
        if step_ok:
            R_new = R - gR / dg
            step_ok = lo < R_new < hi
        if not step_ok:
            R_new = 0.5 * (lo + hi)
        if abs(R_new - R) <= xtol * max(1.0, R):
            return R_new
        R = R_new
    return R


def c_of_r(w: Worldline) -> float:
    """C(R) = xi / (8 pi gamma R ((v/c) cosh R - 1))."""
    if w.kind is not Kind.CIRCULAR:
        raise OutOfRange("C(R) is only defined for circular worldlines")
    R = solve_R(w.v)
    # at the root (v/c) cosh R = R coth R; use the cancellation-free form
    denom = _R_coth_R_minus_one(R)
    if not denom > 0:
        raise DegenerateDenominator(f"(v/c) cosh R - 1 = {denom!r} is not positive")
    return w.xi / (8.0 * math.pi * w.gamma * R * denom)


def check_ultrarelativistic(w: Worldline) -> bool:
    """Warn when circular spectra are used outside v/c >= 0.9."""
    if not w.ultrarelativistic:
        warnings.warn(
            f"circular spectra assume v ~ c; v/c = {w.v:.4g} < {ULTRARELATIVISTIC_THRESHOLD}",
            UltrarelativisticWarning,
            stacklevel=3,
        )
        return False
    return True
