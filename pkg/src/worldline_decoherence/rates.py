"""Decoherence, dissipation and momentum-diffusion coefficients.

Internal units.  Every rate is a frequency integral over (0, uv_cutoff] of
the polarizability weighted by the worldline's Wightman spectra:

    Lambda_DU = 1/(6 pi)   int w^6 |alpha0|^2 D+ D-
    Lambda_TD = a^2/(6 pi) int w^4 |alpha0|^2 |1 - 2 eta|^2 D+ D-
    Lambda_th = 1/(24 pi^3) int w^8 |alpha0|^2 n (n + 1)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import ValidationError, WrongKind, ZeroTemperature
from .model import ModelParams
from .quadrature import QuadConfig, QuadResult, integrate_semi_infinite
from .response import abs2_one_minus_2eta, alpha0
from .spectra import WightmanSpectrum, bose_einstein
from .worldlines import Worldline

DU_PREFACTOR = 1.0 / (6.0 * math.pi)
THERMAL_PREFACTOR = 1.0 / (3.0 * (2.0 * math.pi) ** 3)


class RateKind(str, Enum):
    DU = "DU"
    TD = "TD"
    THERMAL = "Thermal"
    GAMMA = "Gamma"
    MOMENTUM_DIFFUSION = "MomentumDiffusion"


@dataclass(frozen=True)
class RateResult:
    kind: RateKind
    value: float
    quad: QuadResult
    worldline: Optional[Worldline]
    params: ModelParams
    tensor_direction: Optional[tuple] = None
    temperature: Optional[float] = None

    def tensor(self) -> np.ndarray:
        """3x3 coefficient; isotropic for DU/thermal, a_i a_j / |a|^2 for TD."""
        if self.kind is RateKind.TD:
            if self.tensor_direction is None:
                return np.zeros((3, 3))
            n = np.asarray(self.tensor_direction, dtype=float)
            return self.value * np.outer(n, n)
        return self.value * np.eye(3)


def _check_internal(p: ModelParams):
    if not p.constants.is_internal:
        raise ValidationError("rate kernels expect parameters in internal units")


def _breakpoints(p: ModelParams):
    return (p.omega_q,)


def _direction(w: Worldline):
    # hyperbolic motion along x; circular acceleration is radial, taken as x
    return None if w.proper_acceleration == 0 else (1.0, 0.0, 0.0)


def du_integrand(spec: WightmanSpectrum, p: ModelParams):
    def f(w):
        return w**6 * np.abs(alpha0(w, p)) ** 2 * spec.product(w)

    return f


def td_integrand(spec: WightmanSpectrum, p: ModelParams):
    """Integrand of the time-dilation kernel, without the a^2 prefactor."""

    def f(w):
        return w**4 * np.abs(alpha0(w, p)) ** 2 * abs2_one_minus_2eta(w, p) * spec.product(w)

    return f


def thermal_integrand(T: float, p: ModelParams):
    def f(w):
        out = np.zeros_like(w)
        nz = w > 0
        n = bose_einstein(w[nz], T)
        out[nz] = w[nz] ** 8 * np.abs(alpha0(w[nz], p)) ** 2 * n * (n + 1)
        return out

    return f


def lambda_du(w: Worldline, p: ModelParams, cfg: QuadConfig = QuadConfig(), spectrum=None) -> RateResult:
    """Davies-Unruh decoherence coefficient."""
    _check_internal(p)
    spec = spectrum or WightmanSpectrum(w)
    q = integrate_semi_infinite(du_integrand(spec, p), cfg, _breakpoints(p), scale=p.omega_q)
    return RateResult(RateKind.DU, DU_PREFACTOR * q.value, _scaled(q, DU_PREFACTOR), w, p,
                      temperature=spec.temperature)


def td_kernel(w: Worldline, p: ModelParams, cfg: QuadConfig = QuadConfig(), spectrum=None) -> QuadResult:
    """(1/6 pi) int w^4 |alpha0|^2 |1-2eta|^2 D+ D-, i.e. Lambda_TD / a^2."""
    _check_internal(p)
    spec = spectrum or WightmanSpectrum(w)
    q = integrate_semi_infinite(td_integrand(spec, p), cfg, _breakpoints(p), scale=p.omega_q)
    return _scaled(q, DU_PREFACTOR)


def lambda_td(
    w: Worldline,
    p: ModelParams,
    cfg: QuadConfig = QuadConfig(),
    acceleration: Optional[float] = None,
    spectrum=None,
) -> RateResult:
    """Time-dilation decoherence along the acceleration direction.

    ``value`` is the ii-component a^2 * kernel; :meth:`RateResult.tensor`
    rebuilds a_i a_j * kernel.  ``acceleration`` overrides the a_i a_j
    prefactor while keeping the worldline's spectrum.
    """
    a = w.proper_acceleration if acceleration is None else float(acceleration)
    if a == 0:
        q = QuadResult(0.0, 0.0, 0, 0.0 if cfg.cutoff_doubling_check else None)
        return RateResult(RateKind.TD, 0.0, q, w, p, None)
    k = td_kernel(w, p, cfg, spectrum)
    return RateResult(RateKind.TD, a * a * k.value, _scaled(k, a * a), w, p, _direction(w) or (1.0, 0.0, 0.0))


def lambda_thermal(T: float, p: ModelParams, cfg: QuadConfig = QuadConfig()) -> RateResult:
    """Decoherence of a particle at rest in a thermal field at temperature T."""
    _check_internal(p)
    if T < 0:
        raise ValidationError("temperature must be >= 0")
    if T == 0:
        q = QuadResult(0.0, 0.0, 0, 0.0 if cfg.cutoff_doubling_check else None)
        return RateResult(RateKind.THERMAL, 0.0, q, None, p, temperature=0.0)
    q = integrate_semi_infinite(thermal_integrand(T, p), cfg, _breakpoints(p), scale=p.omega_q)
    return RateResult(RateKind.THERMAL, THERMAL_PREFACTOR * q.value, _scaled(q, THERMAL_PREFACTOR), None, p,
                      temperature=T)


def gamma_from_fdt(lam: RateResult, T: Optional[float] = None, M: Optional[float] = None) -> RateResult:
    """Dissipation Gamma = hbar^2 Lambda / (2 M kB T).

    ``T`` defaults to the temperature attached to ``lam`` (T_DU for
    hyperbolic motion, the bath temperature for thermal rates); circular
    motion has no single temperature and needs an explicit ``T``.
    """
    if lam.kind not in (RateKind.DU, RateKind.THERMAL):
        raise WrongKind(f"Gamma needs a DU or Thermal rate, got {lam.kind.value}")
    T = lam.temperature if T is None else T
    if T is None or not T > 0:
        raise ZeroTemperature("the fluctuation-dissipation relation needs a positive temperature")
    M = lam.params.M if M is None else M
    value = lam.value / (2.0 * M * T)
    return RateResult(RateKind.GAMMA, value, lam.quad, lam.worldline, lam.params, temperature=T)


def momentum_diffusion(lam_du: RateResult) -> RateResult:
    """<dP^2>/dt = 2 hbar^2 Lambda_DU."""
    if lam_du.kind is not RateKind.DU:
        raise WrongKind(f"momentum diffusion needs a DU rate, got {lam_du.kind.value}")
    return RateResult(RateKind.MOMENTUM_DIFFUSION, 2.0 * lam_du.value, lam_du.quad, lam_du.worldline,
                      lam_du.params, temperature=lam_du.temperature)


def _scaled(q: QuadResult, factor: float) -> QuadResult:
    return QuadResult(factor * q.value, abs(factor) * q.error_estimate, q.evaluations, q.cutoff_drift)
