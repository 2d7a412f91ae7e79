import math
import warnings

import numpy as np
import pytest

import oracles
from worldline_decoherence.errors import WrongKind, ZeroTemperature
from worldline_decoherence.model import build_params
from worldline_decoherence.quadrature import QuadConfig
from worldline_decoherence.rates import (
    RateKind, du_integrand, gamma_from_fdt, lambda_du, lambda_td, lambda_thermal, momentum_diffusion,
    td_integrand, td_kernel,
)
from worldline_decoherence.response import abs2_one_minus_2eta
from worldline_decoherence.spectra import WightmanSpectrum
from worldline_decoherence.worldlines import Worldline

P = build_params(1, 1, 1, 1)
HYP = Worldline.hyperbolic(2 * math.pi)  # T_DU = 1
CIRC = Worldline.circular_from_speed(0.99, 1.0)


def du_oracle(dpm, lo=1e-6, hi=1e3):
    def f(w):
        dp, dm = dpm(w)
        return w**6 * np.abs(oracles.alpha0(w)) ** 2 * dp * dm

    return oracles.trapezoid(f, lo, hi) / (6 * math.pi)


def td_oracle(dpm, lo=1e-6, hi=1e3):
    def f(w):
        dp, dm = dpm(w)
        return w**4 * np.abs(oracles.alpha0(w)) ** 2 * np.abs(1 - 2 * oracles.eta(w)) ** 2 * dp * dm

    return oracles.trapezoid(f, lo, hi) / (6 * math.pi)


def thermal_oracle(T):
    def f(w):
        n = oracles.occupation(w, T)
        return w**8 * np.abs(oracles.alpha0(w)) ** 2 * n * (n + 1)

    return oracles.trapezoid(f, 1e-6, 1e3) / (24 * math.pi**3)


@pytest.mark.parametrize("T", [0.1, 0.5, 1.0, 2.0])
def test_thermal_equivalence(T):
    du = lambda_du(Worldline.hyperbolic(2 * math.pi * T), P)
    th = lambda_thermal(T, P)
    assert abs(du.value - th.value) / th.value < 1e-6
    assert du.temperature == pytest.approx(T, rel=1e-15)


def test_du_hyperbolic_trapezoid():
    assert lambda_du(HYP, P).value == pytest.approx(du_oracle(lambda w: oracles.hyperbolic_pm(w, 2 * math.pi)), rel=1e-5)


def test_du_circular_trapezoid():
    v = lambda_du(CIRC, P).value
    assert v > 0
    assert v == pytest.approx(du_oracle(lambda w: oracles.circular_pm(w, 0.99, 1.0)), rel=1e-5)


def test_td_hyperbolic_trapezoid():
    r = lambda_td(HYP, P)
    ref = (2 * math.pi) ** 2 * td_oracle(lambda w: oracles.hyperbolic_pm(w, 2 * math.pi))
    assert r.value == pytest.approx(ref, rel=1e-5)
    assert r.kind is RateKind.TD


def test_td_circular_trapezoid():
    r = lambda_td(CIRC, P)
    ref = CIRC.proper_acceleration**2 * td_oracle(lambda w: oracles.circular_pm(w, 0.99, 1.0))
    assert r.value == pytest.approx(ref, rel=1e-5)


def test_thermal_trapezoid():
    assert lambda_thermal(1.0, P).value == pytest.approx(thermal_oracle(1.0), rel=1e-6)


def test_inertial_zero():
    w = Worldline.inertial()
    assert lambda_du(w, P).value == 0.0
    assert lambda_td(w, P).value == 0.0
    assert td_kernel(w, P).value == 0.0


def test_thermal_zero_temperature():
    assert lambda_thermal(0.0, P).value == 0.0


def test_thermal_monotone():
    vals = [lambda_thermal(T, P).value for T in (0.05, 0.1, 0.3, 1.0, 3.0)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_td_prefactor_scaling():
    one = lambda_td(HYP, P, acceleration=1.5).value
    two = lambda_td(HYP, P, acceleration=3.0).value
    assert two == 4 * one


def test_td_tensor():
    r = lambda_td(HYP, P)
    t = r.tensor()
    assert t[0, 0] == r.value and t[1, 1] == 0 and t[0, 1] == 0
    d = lambda_du(HYP, P)
    np.testing.assert_array_equal(d.tensor(), d.value * np.eye(3))


def test_integrand_relation_pointwise():
    # the two integrands differ by exactly a^2 |1 - 2 eta|^2 / w^2 (a^2 outside the kernel)
    spec = WightmanSpectrum(HYP)
    w = np.geomspace(1e-3, 1e2, 200)
    lhs = td_integrand(spec, P)(w)
    rhs = du_integrand(spec, P)(w) * abs2_one_minus_2eta(w, P) / w**2
    np.testing.assert_allclose(lhs, rhs, rtol=1e-13)


def test_gamma_identity():
    du = lambda_du(HYP, P)
    g = gamma_from_fdt(du)
    T = du.temperature
    assert 2 * P.M * g.value * T == pytest.approx(du.value, rel=4e-16)
    assert gamma_from_fdt(du, M=2 * P.M).value == g.value / 2


def test_gamma_zero_rate():
    assert gamma_from_fdt(lambda_du(Worldline.inertial(), P), T=1.0).value == 0.0


def test_gamma_errors():
    with pytest.raises(ZeroTemperature):
        gamma_from_fdt(lambda_du(Worldline.inertial(), P))
    with pytest.raises(ZeroTemperature):
        gamma_from_fdt(lambda_du(CIRC, P))  # no single temperature
    with pytest.raises(WrongKind):
        gamma_from_fdt(lambda_td(HYP, P))
    assert gamma_from_fdt(lambda_du(CIRC, P), T=0.3).value > 0


def test_momentum_diffusion():
    du = lambda_du(HYP, P)
    assert momentum_diffusion(du).value / du.value == 2.0
    assert momentum_diffusion(lambda_du(Worldline.inertial(), P)).value == 0.0
    with pytest.raises(WrongKind):
        momentum_diffusion(lambda_td(HYP, P))


def test_nonnegative_sweep():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for wq in (0.5, 1.0, 2.0):
            for bw in (0.001, 0.01, 0.05):
                e = math.sqrt(8 * math.pi * bw / wq)
                p = build_params(e, 1.0, wq, 1.0)
                for wl in (Worldline.hyperbolic(0.5), Worldline.hyperbolic(2.0), Worldline.hyperbolic(8.0),
                           Worldline.circular_from_speed(0.9, 1.0), Worldline.circular_from_speed(0.99, 1.0),
                           Worldline.circular_from_speed(0.999, 1.0)):
                    assert lambda_du(wl, p).value >= 0
                    assert lambda_td(wl, p).value >= 0
                assert lambda_thermal(wq, p).value >= 0


@pytest.mark.parametrize("wl", [HYP, CIRC], ids=["hyperbolic", "circular"])
def test_cutoff_robust(wl):
    cfg = QuadConfig(cutoff_doubling_check=True)
    for r in (lambda_du(wl, P, cfg), lambda_td(wl, P, cfg)):
        assert r.quad.cutoff_drift is not None and r.quad.cutoff_drift < 1e-8
    assert lambda_thermal(1.0, P, cfg).quad.cutoff_drift < 1e-8


def test_rejects_si_params():
    from worldline_decoherence.errors import ValidationError
    from worldline_decoherence.model import SI

    with pytest.raises(ValidationError):
        lambda_du(HYP, build_params(1e-19, 1e-30, 1e16, 1e-25, constants=SI))
