"""Forward/backward Wightman spectra D+(omega), D-(omega) along stationary worldlines.

Internal units (hbar = c = eps0 = kB = 1).  The closed forms are evaluated
on ``|omega|`` and negative frequencies are obtained by the reflection
D+(-omega) = D-(omega), so that relation holds bit-for-bit.

Sign conventions follow the published closed forms: the hyperbolic (and
hence inertial) spectra carry an overall minus sign, the circular ones are
positive.  Rates only use the product D+ D- and the ratio D-/D+, which do
not see that sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DetailedBalanceViolation, NegativeAcceleration, NotFinite, ZeroFrequency
from .model import INTERNAL, PhysicalConstants
from .worldlines import Kind, Worldline, check_ultrarelativistic

TWO_PI = 2.0 * math.pi

# exponent beyond which n(omega) is reported as 0
_BE_OVERFLOW = 700.0
_BE_SMALL = 1e-6


def davies_unruh_temperature(a: float) -> float:
    """T_DU = hbar a / (2 pi kB c); zero for a = 0."""
    if a < 0:
        raise NegativeAcceleration(f"acceleration must be >= 0, got {a!r}")
    return a / TWO_PI


def bose_einstein(omega, T):
    """Occupation 1/(exp(omega/T) - 1).

    Underflow-safe for omega/T > 700 (returns 0) and uses the Laurent
    expansion T/omega - 1/2 for omega/T < 1e-6.  Accepts arrays; negative
    frequencies are allowed and follow the same formula.
    """
    if not T > 0:
        raise ValueError("temperature must be positive")
    omega = np.asarray(omega, dtype=float)
    if np.any(omega == 0):
        raise ZeroFrequency("n(omega) diverges at omega = 0")
    x = omega / T
    out = np.empty_like(x)
    big = x > _BE_OVERFLOW
    small = np.abs(x) < _BE_SMALL
    rest = ~(big | small)
    out[big] = 0.0
    out[small] = 1.0 / x[small] - 0.5
    out[rest] = 1.0 / np.expm1(x[rest])
    return out if out.ndim else float(out)


def _omega_n(omega, T):
    # omega * n(omega) for omega >= 0, with the omega -> 0 limit T
    out = np.empty_like(omega)
    zero = omega == 0
    out[zero] = T
    nz = ~zero
    out[nz] = omega[nz] * bose_einstein(omega[nz], T)
    return out


@dataclass(frozen=True)
class WightmanSpectrum:
    """Evaluator for D+(omega), D-(omega) on a fixed worldline."""

    worldline: Worldline
    constants: PhysicalConstants = INTERNAL
    swapped: bool = field(default=False)

    def __post_init__(self):
        if self.worldline.kind is Kind.CIRCULAR:
            check_ultrarelativistic(self.worldline)
            _ = self.worldline.aux  # precompute R and C(R)

    @property
    def temperature(self) -> float | None:
        """Constant detailed-balance temperature, where one exists."""
        kind = self.worldline.kind
        if kind is Kind.HYPERBOLIC:
            return davies_unruh_temperature(self.worldline.accel)
        if kind is Kind.INERTIAL:
            return 0.0
        return None

    def _positive_branch(self, w):
        """(D+, D-) for w >= 0."""
        kind = self.worldline.kind
        if kind is Kind.INERTIAL:
            return np.zeros_like(w), -w / TWO_PI
        if kind is Kind.HYPERBOLIC:
            wn = _omega_n(w, self.temperature)
            return -wn / TWO_PI, -(w + wn) / TWO_PI
        wl = self.worldline
        aux = wl.aux
        thermal = aux.C_of_R * np.exp(-2.0 * w * aux.R / (wl.xi * wl.gamma))
        return thermal, w / TWO_PI + thermal

    def pair(self, omega):
        """Return ``(D+(omega), D-(omega))``."""
        omega = np.asarray(omega, dtype=float)
        scalar = omega.ndim == 0
        omega = np.atleast_1d(omega)
        w = np.abs(omega)
        dp, dm = self._positive_branch(w)
        neg = omega < 0
        d_plus = np.where(neg, dm, dp)
        d_minus = np.where(neg, dp, dm)
        if self.swapped:
            d_plus, d_minus = d_minus, d_plus
        if not (np.all(np.isfinite(d_plus)) and np.all(np.isfinite(d_minus))):
            raise NotFinite("non-finite Wightman spectrum value")
        if scalar:
            return float(d_plus[0]), float(d_minus[0])
        return d_plus, d_minus

    def d_plus(self, omega):
        return self.pair(omega)[0]

    def d_minus(self, omega):
        return self.pair(omega)[1]

    def product(self, omega):
        """D+ D-, the combination entering every decoherence rate (>= 0 for omega > 0)."""
        dp, dm = self.pair(omega)
        return dp * dm

    def vacuum_difference(self, omega):
        """D- - D+, the state-independent (vacuum) part of the spectrum.

        Evaluated from the closed forms, in which the two spectra differ by
        exactly +-omega/(2 pi), rather than by subtracting them.
        """
        omega = np.asarray(omega, dtype=float)
        sign = 1.0 if self.worldline.kind is Kind.CIRCULAR else -1.0
        if self.swapped:
            sign = -sign
        out = sign * omega / TWO_PI
        return out if out.ndim else float(out)

    def log_ratio(self, omega):
        """ln(D-/D+) evaluated without overflow, for omega > 0."""
        omega = np.asarray(omega, dtype=float)
        if np.any(omega <= 0):
            raise ZeroFrequency("log_ratio needs omega > 0")
        kind = self.worldline.kind
        if kind is Kind.INERTIAL:
            return np.full_like(omega, np.inf) if omega.ndim else math.inf
        if kind is Kind.HYPERBOLIC:
            n = bose_einstein(omega, self.temperature)
            with np.errstate(divide="ignore"):
                # ln(1 + 1/n); once n underflows the exponent itself is exact
                out = np.where(n > 0, np.log1p(1.0 / np.where(n > 0, n, 1.0)), omega / self.temperature)
            return out if out.ndim else float(out)
        wl = self.worldline
        aux = wl.aux
        x = 2.0 * omega * aux.R / (wl.xi * wl.gamma)
        out = np.logaddexp(0.0, np.log(omega / (TWO_PI * aux.C_of_R)) + x)
        return out if out.ndim else float(out)

    def ratio(self, omega):
        """D-/D+ (may be inf once D+ underflows)."""
        with np.errstate(over="ignore"):
            return np.exp(self.log_ratio(omega))

    def occupation(self, omega):
        """Effective occupation n = D+/(D- - D+)."""
        dp, dm = self.pair(omega)
        return dp / (dm - dp)

    def effective_temperature(self, omega):
        """Frequency-dependent temperature omega / ln(D-/D+); 0 for the vacuum."""
        lr = np.asarray(self.log_ratio(omega), dtype=float)
        if np.any(lr <= 0):
            raise DetailedBalanceViolation("D-/D+ <= 1; no positive effective temperature")
        with np.errstate(divide="ignore"):
            out = np.where(np.isinf(lr), 0.0, np.asarray(omega) / lr)
        return out if out.ndim else float(out)

    def swap(self) -> WightmanSpectrum:
        """Spectrum with D+ and D- exchanged everywhere (test harness)."""
        return WightmanSpectrum(self.worldline, self.constants, not self.swapped)


def wightman_pm(w: Worldline, omega):
    return WightmanSpectrum(w).pair(omega)


def effective_temperature(w: Worldline, omega):
    return WightmanSpectrum(w).effective_temperature(omega)
