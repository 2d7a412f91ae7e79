import math

import numpy as np
import pytest
from scipy import integrate

import oracles
from worldline_decoherence.dispersion import (
    C2_DU_PREFACTOR, C2_TD_PREFACTOR, CONVERGED_DRIFT, c1_td, c2_du, c2_du_kernel, c2_td, c2_td_kernel,
)
from worldline_decoherence.errors import ValidationError
from worldline_decoherence.model import build_params
from worldline_decoherence.quadrature import QuadConfig
from worldline_decoherence.spectra import WightmanSpectrum
from worldline_decoherence.worldlines import Worldline

P = build_params(1, 1, 1, 1)
A = 2 * math.pi
HYP = Worldline.hyperbolic(A)  # T_DU = 1
CIRC = Worldline.circular_from_speed(0.99, 1.0)


def re_alpha_eta_minus_1(w):
    return (oracles.alpha0(w) * (oracles.eta(w) - 1)).real


# -- C1 ---------------------------------------------------------------------


def test_c1_inertial_zero():
    for mode in ("thermal_only", "full_with_cutoff"):
        assert c1_td(Worldline.inertial(), P, mode=mode).value == 0.0


def test_c1_hyperbolic_thermal_trapezoid():
    # thermal part of the Bose factor 2n + 1 is 2n
    f = lambda w: w**3 * re_alpha_eta_minus_1(w) * 2 * oracles.occupation(w, 1.0)  # noqa: E731
    ref = -A / (8 * math.pi**2) * oracles.trapezoid(f, 1e-6, 1e3)
    assert c1_td(HYP, P).value == pytest.approx(ref, rel=1e-5)


def test_c1_circular_thermal_trapezoid():
    R, gamma, C = oracles.c_of_r_direct(0.99, 1.0)
    f = lambda w: w**2 * re_alpha_eta_minus_1(w) * C * np.exp(-2 * w * R / gamma)  # noqa: E731
    ref = CIRC.proper_acceleration / (2 * math.pi) * oracles.trapezoid(f, 1e-6, 1e3)
    assert c1_td(CIRC, P).value == pytest.approx(ref, rel=1e-5)


def test_c1_full_mode_matches_general_formula():
    cfg = QuadConfig(uv_cutoff=50.0)
    f = lambda w: w**3 * re_alpha_eta_minus_1(w) * (2 * oracles.occupation(w, 1.0) + 1)  # noqa: E731
    ref = -A / (8 * math.pi**2) * oracles.trapezoid(f, 1e-6, 50.0)
    r = c1_td(HYP, P, cfg, mode="full_with_cutoff")
    assert r.value == pytest.approx(ref, rel=1e-5)
    assert r.cutoff_drift is not None and r.cutoff_drift > CONVERGED_DRIFT
    assert not r.converged


def test_c1_linear_in_prefactor():
    one = c1_td(HYP, P, acceleration=1.0).value
    assert c1_td(HYP, P, acceleration=2.0).value == 2 * one


def test_c1_thermal_converges():
    r = c1_td(HYP, P)
    assert r.cutoff_drift < 1e-8 and r.converged


def test_c1_thermal_sign_stable():
    signs = {math.copysign(1, c1_td(HYP, P, QuadConfig(uv_cutoff=L)).value) for L in (1e2, 1e3, 1e4)}
    assert len(signs) == 1


# -- C2 ---------------------------------------------------------------------


def test_c2_inertial_vacuum_subtracted_zero():
    w = Worldline.inertial()
    cfg = QuadConfig(uv_cutoff=20.0)
    assert c2_du(w, P, cfg, vacuum_subtract=True).value == 0.0
    assert c2_td(w, P, cfg).value == 0.0


@pytest.mark.parametrize("fn", [c2_du, c2_td])
def test_c2_swap_antisymmetry(fn):
    cfg = QuadConfig(uv_cutoff=10.0)
    spec = WightmanSpectrum(HYP)
    a = fn(HYP, P, cfg, spectrum=spec).value
    b = fn(HYP, P, cfg, spectrum=spec.swap()).value
    assert b == -a


def test_kernel_identity():
    rng = np.random.default_rng(3)
    w, wp = rng.uniform(-10, 10, 100), rng.uniform(-10, 10, 100)
    spec = WightmanSpectrum(HYP)
    du = c2_du_kernel(spec, P, w, wp)
    td = c2_td_kernel(spec, P, w, wp, A)
    resp = np.abs(oracles.alpha0(w) * (oracles.eta(w) - 1)) ** 2
    expect = du / C2_DU_PREFACTOR / (wp**2 * np.abs(oracles.alpha0(w)) ** 2) * resp * C2_TD_PREFACTOR * A**2
    np.testing.assert_allclose(td, expect, rtol=1e-12)


def _c2_scipy(pm, L, weight, inner_power):
    """Nested scipy oracle; the inner PV uses QUADPACK's QAWC (weight='cauchy')."""

    def D(x):
        dp, dm = pm(abs(x))
        return (dp, dm) if x >= 0 else (dm, dp)

    def inner(w):
        dp, dm = D(w)
        g = lambda u: u**inner_power * (dp * D(u)[0] - dm * D(u)[1])  # noqa: E731
        return integrate.quad(g, -L, L, weight="cauchy", wvar=-w, epsabs=1e-13, epsrel=1e-12, limit=400)[0]

    edges = [-L, -1.0, 0.0, 1.0, L]
    return sum(integrate.quad(lambda w: weight(w) * inner(w), lo, hi, epsabs=1e-12, epsrel=1e-10, limit=400)[0]
               for lo, hi in zip(edges, edges[1:]))


def _hyp_pm(w):
    if w == 0:
        T = A / (2 * math.pi)
        return -T / (2 * math.pi), -T / (2 * math.pi)
    return oracles.hyperbolic_pm(w, A)


def test_c2_du_hyperbolic_scipy_oracle():
    L = 5.0
    ref = C2_DU_PREFACTOR * _c2_scipy(_hyp_pm, L, lambda w: w**4 * abs(oracles.alpha0(w)) ** 2, 2)
    assert c2_du(HYP, P, QuadConfig(uv_cutoff=L)).value == pytest.approx(ref, rel=1e-8)


def test_c2_td_circular_scipy_oracle():
    L = 5.0
    weight = lambda w: w**4 * abs(oracles.alpha0(w) * (oracles.eta(w) - 1)) ** 2  # noqa: E731
    ref = _c2_scipy(lambda w: oracles.circular_pm(w, 0.99, 1.0), L, weight, 0)
    ref *= C2_TD_PREFACTOR * CIRC.proper_acceleration**2
    assert c2_td(CIRC, P, QuadConfig(uv_cutoff=L)).value == pytest.approx(ref, rel=1e-8)


@pytest.mark.parametrize("L", [5.0, 20.0, 50.0])
def test_c2_finite_with_drift(L):
    for fn in (c2_du, c2_td):
        r = fn(HYP, P, QuadConfig(uv_cutoff=L))
        assert math.isfinite(r.value)
        assert r.cutoff_drift is not None and math.isfinite(r.cutoff_drift)
        assert r.uv_cutoff_used == L


def test_c2_two_cutoffs_flagged():
    r50 = c2_du(HYP, P, QuadConfig(uv_cutoff=50.0))
    r100 = c2_du(HYP, P, QuadConfig(uv_cutoff=100.0))
    assert r50.value != r100.value
    assert not r50.converged and not r100.converged
    t50 = c2_td(HYP, P, QuadConfig(uv_cutoff=50.0))
    assert t50.cutoff_drift > CONVERGED_DRIFT


def test_c2_needs_finite_cutoff():
    with pytest.raises(ValidationError):
        c2_du(HYP, P, QuadConfig(uv_cutoff=math.inf))


def test_result_dict():
    d = c1_td(HYP, P).as_dict()
    assert d["kind"] == "C1_TD" and d["mode"] == "thermal_only" and d["converged"] is True
