import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from worldline_decoherence.errors import PoleOnRealAxis, SuperpositionTooLarge
from worldline_decoherence.model import build_params
from worldline_decoherence.response import (
    abs2_alpha0_eta_minus_1, abs2_one_minus_2eta, alpha0, alpha_redshifted, eta, s_weight, sample,
)

P = build_params(1, 1, 1, 1)
P0 = build_params(0, 1, 1, 1)  # beta = 0, and with it alpha0 = 0
PW = build_params(1e-6, 1, 1, 1)  # beta ~ 4e-14: the undamped limit with a live coupling


def test_static_limits():
    assert alpha0(0.0, P) == 1.0
    assert eta(0.0, P) == 2.0
    assert abs2_one_minus_2eta(0.0, P) == 9.0
    assert s_weight(0.0, P) == 0.5


def test_undamped_values():
    k = PW.coupling
    assert alpha0(math.sqrt(2), PW) == pytest.approx(-k, rel=1e-12)
    assert eta(math.sqrt(3), P0) == pytest.approx(-1.0, rel=1e-15)
    assert eta(math.sqrt(3), PW) == pytest.approx(-1.0, rel=1e-12)
    # alpha0 = -k/2, eta - 1 = -2  ->  S = k/2
    assert s_weight(math.sqrt(3), PW) == pytest.approx(0.5 * k, rel=1e-12)


def test_resonance_is_imaginary():
    a = alpha0(1.0, P)
    assert a.real == 0.0
    assert a.imag == pytest.approx(-1 / (2 * P.beta), rel=1e-15)


def test_pole_on_axis():
    with pytest.raises(PoleOnRealAxis):
        alpha0(1.0, P0)
    with pytest.raises(PoleOnRealAxis):
        eta(-1.0, P0)


def test_matches_direct_formula():
    w = np.geomspace(1e-3, 1e3, 301)
    np.testing.assert_allclose(alpha0(w, P), oracles.alpha0(w), rtol=1e-14)
    np.testing.assert_allclose(eta(w, P), oracles.eta(w), rtol=1e-14)


def test_conjugate_symmetry():
    rng = np.random.default_rng(1)
    w = rng.uniform(-50, 50, 1000)
    assert np.array_equal(alpha0(-w, P), np.conj(alpha0(w, P)))
    assert np.array_equal(eta(-w, P), np.conj(eta(w, P)))
    assert np.array_equal(s_weight(-w, P), s_weight(w, P))


def test_passivity():
    w = np.geomspace(1e-3, 1e3, 500)
    assert np.all(alpha0(w, P).imag < 0)


def test_large_frequency_decay():
    p = build_params(math.sqrt(0.08 * math.pi), 1, 1, 1)  # beta = 0.01
    assert p.beta == pytest.approx(0.01)
    assert abs(alpha0(1e3, p)) < 1.1 * p.coupling / 1e6


def test_redshifted():
    assert alpha_redshifted(0.7, 0.0, P) == alpha0(0.7, P)
    assert alpha_redshifted(0.0, 0.1, P) == pytest.approx(0.8, rel=1e-15)
    with pytest.raises(SuperpositionTooLarge):
        alpha_redshifted(0.3, 1.0, P)


@given(st.floats(-20, 20), st.floats(-0.45, 0.45))
def test_redshifted_affine(w, x):
    base = alpha_redshifted(w, 0.0, P)
    d2 = alpha_redshifted(w, 2 * x, P) - base
    d1 = alpha_redshifted(w, x, P) - base
    assert abs(d2 - 2 * d1) <= 1e-12 * (abs(d2) + 1e-300) + 1e-15


def test_helper_moduli():
    w = np.linspace(-5, 5, 101)
    np.testing.assert_allclose(abs2_alpha0_eta_minus_1(w, P), np.abs(alpha0(w, P) * (eta(w, P) - 1)) ** 2, rtol=1e-14)
    s = sample(0.5, P)
    assert s.s == pytest.approx(float(s_weight(0.5, P)), rel=1e-15)
