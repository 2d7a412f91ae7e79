"""Dispersion-potential coefficients C1_TD, C2_DU and C2_TD.

Internal units.  The vacuum pieces of these coefficients grow with the UV
cutoff, so every result carries the cutoff it was computed with and the
relative drift when that cutoff is doubled.

    C1_TD = a/(2 pi) int_0^L S(w) w^2 (D+ + D-) dw
    C2_DU = -1/(24 pi^2)    PV int int w^4 w'^2/(w + w') |alpha0(w)|^2          [D+D+' - D-D-']
    C2_TD = -a^2/(32 pi^2)  PV int int w^4     /(w + w') |alpha0(w)(eta(w)-1)|^2 [D+D+' - D-D-']

The double integrals run over [-L, L]^2: the inner w' integral is a
principal value with its pole at w' = -w, the outer one is adaptive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import numpy as np

from .errors import ValidationError
from .model import ModelParams
from .quadrature import QuadConfig, QuadResult, adaptive_integrate, integrate_pv, integrate_semi_infinite
from .response import abs2_alpha0_eta_minus_1, alpha0, s_weight
from .spectra import WightmanSpectrum
from .worldlines import Worldline

#: cutoff_drift below which a dispersion value is reported as converged
CONVERGED_DRIFT = 1e-4

C2_DU_PREFACTOR = -1.0 / (24.0 * math.pi**2)
C2_TD_PREFACTOR = -1.0 / (32.0 * math.pi**2)


class DispersionKind(str, Enum):
    C1_TD = "C1_TD"
    C2_DU = "C2_DU"
    C2_TD = "C2_TD"


class Mode(str, Enum):
    THERMAL_ONLY = "thermal_only"
    FULL_WITH_CUTOFF = "full_with_cutoff"


@dataclass(frozen=True)
class DispersionResult:
    kind: DispersionKind
    value: float
    mode: Mode
    uv_cutoff_used: float
    cutoff_drift: Optional[float]
    error_estimate: float = 0.0
    evaluations: int = 0
    vacuum_subtracted: bool = False

    @property
    def converged(self) -> bool:
        return self.cutoff_drift is not None and self.cutoff_drift < CONVERGED_DRIFT

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "value": self.value,
            "mode": self.mode.value,
            "uv_cutoff_used": self.uv_cutoff_used,
            "cutoff_drift": self.cutoff_drift,
            "converged": self.converged,
            "error_estimate": self.error_estimate,
            "evaluations": self.evaluations,
            "vacuum_subtracted": self.vacuum_subtracted,
        }


def _drift(v1: float, v2: float) -> float:
    if v2 == 0:
        return 0.0 if v1 == 0 else math.inf
    return abs(v2 - v1) / abs(v2)


# -- C1 ----------------------------------------------------------------------


def c1_integrand(spec: WightmanSpectrum, p: ModelParams, mode: Mode):
    """S(w) w^2 times D+ + D- (full) or 2 D+ (thermal part only).

    D- - D+ is the state-independent vacuum part, so dropping it from
    D+ + D- leaves 2 D+.
    """

    def f(w):
        dp, dm = spec.pair(w)
        weight = 2.0 * dp if mode is Mode.THERMAL_ONLY else dp + dm
        return s_weight(w, p) * w**2 * weight

    return f


def c1_td(
    w: Worldline,
    p: ModelParams,
    cfg: QuadConfig = QuadConfig(),
    mode: Mode | str = Mode.THERMAL_ONLY,
    acceleration: Optional[float] = None,
    spectrum=None,
) -> DispersionResult:
    """Force-like coefficient along the acceleration direction."""
    mode = Mode(mode)
    a = w.proper_acceleration if acceleration is None else float(acceleration)
    spec = spectrum or WightmanSpectrum(w)
    f = c1_integrand(spec, p, mode)
    q = integrate_semi_infinite(f, replace(cfg, cutoff_doubling_check=True), (p.omega_q,), scale=p.omega_q)
    pref = a / (2.0 * math.pi)
    return DispersionResult(
        DispersionKind.C1_TD,
        pref * q.value,
        mode,
        cfg.uv_cutoff,
        q.cutoff_drift,
        abs(pref) * q.error_estimate,
        q.evaluations,
    )


# -- C2 ----------------------------------------------------------------------


def c2_bracket(spec: WightmanSpectrum, w, wp):
    """D+(w) D+(w') - D-(w) D-(w')."""
    dp, dm = spec.pair(w)
    dpp, dmp = spec.pair(wp)
    return dp * dpp - dm * dmp


def c2_du_kernel(spec: WightmanSpectrum, p: ModelParams, w, wp, vacuum: Optional[WightmanSpectrum] = None):
    """Full C2_DU integrand including the 1/(w + w') factor and prefactor."""
    w, wp = np.asarray(w, dtype=float), np.asarray(wp, dtype=float)
    br = c2_bracket(spec, w, wp)
    if vacuum is not None:
        br = br - c2_bracket(vacuum, w, wp)
    return C2_DU_PREFACTOR * w**4 * wp**2 * np.abs(alpha0(w, p)) ** 2 * br / (w + wp)


def c2_td_kernel(spec: WightmanSpectrum, p: ModelParams, w, wp, a: float, vacuum: Optional[WightmanSpectrum] = None):
    """Full C2_TD integrand including the 1/(w + w') factor and prefactor."""
    w, wp = np.asarray(w, dtype=float), np.asarray(wp, dtype=float)
    br = c2_bracket(spec, w, wp)
    if vacuum is not None:
        br = br - c2_bracket(vacuum, w, wp)
    return C2_TD_PREFACTOR * a * a * w**4 * abs2_alpha0_eta_minus_1(w, p) * br / (w + wp)


def _c2_double_integral(spec, vacuum, outer_weight, inner_power, L, cfg: QuadConfig):
    """PV int_{-L}^{L} dw outer_weight(w) int_{-L}^{L} dw' w'^p [..] / (w' + w)."""
    inner_cfg = replace(cfg, rel_tol=max(cfg.rel_tol * 1e-2, 1e-13), abs_tol=cfg.abs_tol * 1e-2)
    evaluations = [0]

    def bracket_at(w0):
        dp0, dm0 = spec.pair(w0)
        if vacuum is not None:
            vp0, vm0 = vacuum.pair(w0)

        def g(wp):
            dpp, dmp = spec.pair(wp)
            br = dp0 * dpp - dm0 * dmp
            if vacuum is not None:
                vpp, vmp = vacuum.pair(wp)
                br = br - (vp0 * vpp - vm0 * vmp)
            return wp**inner_power * br

        return g

    def outer(ws):
        out = np.empty_like(ws)
        for i, w0 in enumerate(ws):
            r = integrate_pv(bracket_at(float(w0)), -float(w0), -L, L, inner_cfg, points=(0.0,))
            evaluations[0] += r.evaluations
            out[i] = r.value
        return outer_weight(ws) * out

    res = adaptive_integrate(outer, -L, L, cfg, points=(0.0, -1.0, 1.0))
    return res.value, res.error_estimate, evaluations[0] + res.evaluations


def _c2(kind, w, p, cfg, vacuum_subtract, spectrum, outer_weight, inner_power, prefactor):
    if not math.isfinite(cfg.uv_cutoff):
        raise ValidationError("C2 needs a finite uv_cutoff")
    spec = spectrum or WightmanSpectrum(w)
    vacuum = WightmanSpectrum(Worldline.inertial()) if vacuum_subtract else None
    if prefactor == 0:
        return DispersionResult(kind, 0.0, Mode.FULL_WITH_CUTOFF, cfg.uv_cutoff, 0.0, 0.0, 0, vacuum_subtract)
    L = cfg.uv_cutoff
    v1, e1, n1 = _c2_double_integral(spec, vacuum, outer_weight, inner_power, L, cfg)
    v2, e2, n2 = _c2_double_integral(spec, vacuum, outer_weight, inner_power, 2.0 * L, cfg)
    return DispersionResult(
        kind,
        prefactor * v1,
        Mode.FULL_WITH_CUTOFF,
        L,
        _drift(v1, v2),
        abs(prefactor) * e1,
        n1 + n2,
        vacuum_subtract,
    )


def c2_du(
    w: Worldline,
    p: ModelParams,
    cfg: QuadConfig = QuadConfig(uv_cutoff=50.0),
    vacuum_subtract: bool = False,
    spectrum=None,
) -> DispersionResult:
    """Davies-Unruh second-order coefficient (multiplies delta_ij)."""
    return _c2(
        DispersionKind.C2_DU, w, p, cfg, vacuum_subtract, spectrum,
        lambda ws: ws**4 * np.abs(alpha0(ws, p)) ** 2, 2, C2_DU_PREFACTOR,
    )


def c2_td(
    w: Worldline,
    p: ModelParams,
    cfg: QuadConfig = QuadConfig(uv_cutoff=50.0),
    vacuum_subtract: bool = False,
    acceleration: Optional[float] = None,
    spectrum=None,
) -> DispersionResult:
    """Time-dilation second-order coefficient along the acceleration (a^2 included)."""
    a = w.proper_acceleration if acceleration is None else float(acceleration)
    return _c2(
        DispersionKind.C2_TD, w, p, cfg, vacuum_subtract, spectrum,
        lambda ws: ws**4 * abs2_alpha0_eta_minus_1(ws, p), 0, C2_TD_PREFACTOR * a * a,
    )
