"""Adaptive Gauss-Kronrod quadrature, Cauchy principal values and cutoff checks.

Integrands are called with a 1-D numpy array of nodes and must return an
array of the same shape.  Panels are refined in a fixed order, so results
are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import MaxSubdivisionsExceeded, NonFiniteIntegrand, PoleOutsideInterval, ValidationError

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15)
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
W_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes are the odd-indexed Kronrod nodes (0-based 1, 3, 5, 7, ...)
W_GAUSS = np.zeros(15)
W_GAUSS[[1, 3, 5]] = _WG[:3]
W_GAUSS[7] = _WG[3]
W_GAUSS[[9, 11, 13]] = _WG[2::-1]

_EPS = np.finfo(float).eps

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000
    uv_cutoff: float = 1e3
    cutoff_doubling_check: bool = False

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValidationError("quadrature tolerances must be positive")
        if not self.uv_cutoff > 0:
            raise ValidationError("uv_cutoff must be positive")
        if self.max_subdivisions < 1:
            raise ValidationError("max_subdivisions must be >= 1")

    def with_cutoff(self, uv_cutoff: float) -> QuadConfig:
        return replace(self, uv_cutoff=uv_cutoff)


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int
    cutoff_drift: Optional[float] = None

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "error_estimate": self.error_estimate,
            "evaluations": self.evaluations,
            "cutoff_drift": self.cutoff_drift,
        }


def _eval_panels(f: Integrand, lo: np.ndarray, hi: np.ndarray):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * NODES[None, :]
    fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        bad = np.argwhere(~np.isfinite(fx))[0]
        raise NonFiniteIntegrand(float(x[tuple(bad)]))
    kron = half * (fx @ W_KRONROD)
    gauss = half * (fx @ W_GAUSS)
    resabs = np.abs(half) * (np.abs(fx) @ W_KRONROD)
    err = np.maximum(np.abs(kron - gauss), 50.0 * _EPS * resabs)
    return kron, err, resabs


def adaptive_integrate(
    f: Integrand,
    a: float,
    b: float,
    cfg: QuadConfig = QuadConfig(),
    points: Sequence[float] = (),
) -> QuadResult:
    """Integrate ``f`` over [a, b] to max(rel_tol*|I|, abs_tol).

    ``points`` are interior breakpoints (kinks, peaks, removable
    singularities); they become panel edges and are never sampled.

    Each sweep bisects every panel whose error exceeds its length-weighted
    share of the tolerance.  Panels too narrow to split in floating point
    are frozen.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValidationError("integration limits must be finite")
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    edges = np.unique(np.array([a, b] + [p for p in points if a < p < b], dtype=float))
    lo, hi = edges[:-1], edges[1:]
    val, err, mag = _eval_panels(f, lo, hi)
    nevals = 15 * lo.size
    width = b - a
    frozen = np.zeros(lo.size, dtype=bool)
    while True:
        total, total_err = val.sum(), err.sum()
        # no estimate can beat the roundoff in summing |f| over the range
        tol = max(cfg.rel_tol * abs(total), cfg.abs_tol, 50.0 * _EPS * mag.sum())
        if total_err <= tol:
            break
        share = tol * (hi - lo) / width
        split = (err > share) & ~frozen
        if not split.any():
            # only frozen panels left over tolerance: accept at roundoff
            break
        if lo.size + split.sum() > cfg.max_subdivisions:
            raise MaxSubdivisionsExceeded(
                f"more than {cfg.max_subdivisions} panels on [{a}, {b}]; "
                f"estimate {total:.6g} +- {total_err:.2g}"
            )
        mid = 0.5 * (lo[split] + hi[split])
        keep = ~split
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        new_val, new_err, new_mag = _eval_panels(f, new_lo, new_hi)
        nevals += 15 * new_lo.size
        tiny = (new_hi - new_lo) <= 16 * _EPS * np.maximum(np.abs(new_lo), np.abs(new_hi))
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        val = np.concatenate([val[keep], new_val])
        err = np.concatenate([err[keep], new_err])
        mag = np.concatenate([mag[keep], new_mag])
        frozen = np.concatenate([frozen[keep], tiny])
        order = np.argsort(lo, kind="stable")
        lo, hi, val, err, mag, frozen = lo[order], hi[order], val[order], err[order], mag[order], frozen[order]
    return QuadResult(sign * float(val.sum()), float(err.sum()), nevals)


def geometric_edges(scale: float, cutoff: float) -> list:
    """Panel edges scale * 2**k (k >= -6) below ``cutoff``."""
    out = []
    x = scale / 64.0
    while x < cutoff:
        out.append(x)
        x *= 2.0
    return out


def integrate_semi_infinite(
    f: Integrand,
    cfg: QuadConfig = QuadConfig(),
    points: Sequence[float] = (),
    scale: float = 1.0,
) -> QuadResult:
    """Integrate ``f`` over (0, uv_cutoff].

    The integrands of interest decay exponentially, so the integral is
    truncated at ``cfg.uv_cutoff``.  With ``cutoff_doubling_check`` the tail
    up to twice the cutoff is added and its relative size reported as
    ``cutoff_drift``.
    """
    L = cfg.uv_cutoff
    edges = list(points) + geometric_edges(scale, L)
    res = adaptive_integrate(f, 0.0, L, cfg, edges)
    if not cfg.cutoff_doubling_check:
        return res
    tail = adaptive_integrate(f, L, 2.0 * L, replace(cfg, abs_tol=max(cfg.abs_tol, cfg.rel_tol * abs(res.value))))
    doubled = res.value + tail.value
    drift = abs(tail.value) / abs(doubled) if doubled != 0 else 0.0
    return QuadResult(res.value, res.error_estimate, res.evaluations + tail.evaluations, drift)


def integrate_pv(
    f: Integrand,
    pole: float,
    a: float,
    b: float,
    cfg: QuadConfig = QuadConfig(),
    points: Sequence[float] = (),
) -> QuadResult:
    """Cauchy principal value of the integral of f(x)/(x - pole) over [a, b].

    Uses the subtraction
    ``int (f(x) - f(pole))/(x - pole) dx + f(pole) * ln((b - pole)/(pole - a))``;
    ``f`` itself must be smooth at the pole.
    """
    if not a < pole < b:
        raise PoleOutsideInterval(f"pole {pole} not inside ({a}, {b})")
    f_pole = float(np.asarray(f(np.array([pole], dtype=float)))[0])
    if not math.isfinite(f_pole):
        raise NonFiniteIntegrand(pole)

    def subtracted(x):
        return (f(x) - f_pole) / (x - pole)

    res = adaptive_integrate(subtracted, a, b, cfg, list(points) + [pole])
    log_term = f_pole * math.log((b - pole) / (pole - a))
    return QuadResult(res.value + log_term, res.error_estimate, res.evaluations + 1)
