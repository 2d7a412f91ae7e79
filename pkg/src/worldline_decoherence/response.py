"""Linear response of the internal oscillator.

All functions accept scalars or numpy arrays of (real) frequencies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PoleOnRealAxis, SuperpositionTooLarge
from .model import ModelParams


def _denominator(omega, p: ModelParams):
    omega = np.asarray(omega, dtype=float)
    # explicit products keep den(-w) == conj(den(w)) bit for bit
    w2 = omega * omega
    den = -w2 + p.omega_q**2 + 2j * p.beta * (w2 * omega)
    if p.beta == 0 and np.any(den == 0):
        raise PoleOnRealAxis("beta = 0 puts the oscillator pole on the real axis at omega = +-omega_q")
    return den


def alpha0(omega, p: ModelParams):
    """Bare rest-frame polarizability (e^2/m) / (omega_q^2 - omega^2 + 2i beta omega^3)."""
    return p.coupling / _denominator(omega, p)


def eta(omega, p: ModelParams):
    """Redshift correction (2i beta omega^3 + 2 omega_q^2) / (same denominator as alpha0)."""
    omega = np.asarray(omega, dtype=float)
    return (2j * p.beta * (omega * omega * omega) + 2 * p.omega_q**2) / _denominator(omega, p)


def alpha_redshifted(omega, aX_over_c2, p: ModelParams):
    """First-order red-shifted polarizability alpha0 * (1 - eta * a.X/c^2).

    ``aX_over_c2`` is the dimensionless displacement along the acceleration;
    the expansion is only meaningful well inside the Rindler length, so
    ``|aX_over_c2| >= 1`` is rejected.
    """
    if np.any(np.abs(aX_over_c2) >= 1):
        raise SuperpositionTooLarge("|a X / c^2| must be < 1")
    return alpha0(omega, p) * (1 - eta(omega, p) * aX_over_c2)


def s_weight(omega, p: ModelParams):
    """Dispersion weight S = Re[alpha0 (eta - 1)] / 2 (even in omega)."""
    a0 = alpha0(omega, p)
    return 0.5 * np.real(a0 * eta(omega, p) - a0)


def abs2_alpha0_eta_minus_1(omega, p: ModelParams):
    """|alpha0 (eta - 1)|^2, the time-dilation response weight."""
    a0 = alpha0(omega, p)
    return np.abs(a0 * (eta(omega, p) - 1)) ** 2


def abs2_one_minus_2eta(omega, p: ModelParams):
    """|1 - 2 eta|^2.  Squared modulus, since eta is complex."""
    return np.abs(1 - 2 * eta(omega, p)) ** 2


@dataclass(frozen=True)
class ResponseSample:
    omega: float
    alpha0: complex
    eta: complex

    @property
    def s(self) -> float:
        return 0.5 * (self.alpha0 * (self.eta - 1)).real


def sample(omega, p: ModelParams) -> ResponseSample:
    return ResponseSample(float(omega), complex(alpha0(omega, p)), complex(eta(omega, p)))
