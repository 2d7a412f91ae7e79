import math

import pytest
from hypothesis import given, strategies as st

from worldline_decoherence.errors import DampingTooLarge, NonPositiveParameter, UnknownConfigKey, UnknownDimensionTag
from worldline_decoherence.model import (
    DIMENSIONS, INTERNAL, SI, ModelParams, build_params, from_internal, params_from_mapping,
    params_from_si, read_config, to_internal,
)
from worldline_decoherence.spectra import davies_unruh_temperature


def test_internal_constants_are_one():
    assert (INTERNAL.hbar, INTERNAL.c, INTERNAL.eps0, INTERNAL.kB) == (1.0, 1.0, 1.0, 1.0)
    assert INTERNAL.is_internal and not SI.is_internal
    assert min(SI.hbar, SI.c, SI.eps0, SI.kB) > 0


def test_beta_unit_parameters():
    p = build_params(1, 1, 1, 1)
    assert p.beta == pytest.approx(1 / (8 * math.pi), rel=1e-15)
    assert round(p.beta, 6) == 0.039789


def test_zero_coupling():
    assert build_params(0, 1, 1, 1).beta == 0.0


def test_damping_guard():
    # e^2/(8 pi m) * omega_q = 0.5
    e = math.sqrt(0.5 * 8 * math.pi)
    with pytest.raises(DampingTooLarge):
        build_params(e, 1, 1, 1)


@pytest.mark.parametrize("args", [(1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 0), (1, -1, 1, 1)])
def test_nonpositive(args):
    with pytest.raises(NonPositiveParameter):
        build_params(*args)


def test_beta_not_settable():
    with pytest.raises(TypeError):
        ModelParams(1.0, 1.0, 1.0, 1.0, beta=0.3)


@given(st.floats(0.01, 0.5), st.floats(0.5, 5.0))
def test_beta_scales_as_e_squared(e, m):
    assert build_params(2 * e, m, 0.1, 1).beta == 4 * build_params(e, m, 0.1, 1).beta


def test_build_params_deterministic():
    assert build_params(0.3, 1.7, 0.9, 2.0) == build_params(0.3, 1.7, 0.9, 2.0)


def test_frequency_scale():
    assert to_internal(2 * 3.0e15, "frequency", 3.0e15) == 2.0


@pytest.mark.parametrize("kind", sorted(DIMENSIONS))
@given(value=st.floats(1e-30, 1e30), scale=st.floats(1e3, 1e18))
def test_round_trip_every_kind(kind, value, scale):
    back = from_internal(to_internal(value, kind, scale), kind, scale)
    assert back == pytest.approx(value, rel=1e-12)


def test_unknown_tag():
    with pytest.raises(UnknownDimensionTag):
        to_internal(1.0, "furlongs", 1.0)


def test_unruh_temperature_units():
    # internal a = 1 (a = c omega_q) -> T = 1/(2 pi)
    assert davies_unruh_temperature(1.0) == 1 / (2 * math.pi)
    wq = 2.0e15
    a_si = SI.c * wq
    t_si = SI.hbar * a_si / (2 * math.pi * SI.kB * SI.c)
    assert to_internal(t_si, "temperature", wq) == pytest.approx(1 / (2 * math.pi), rel=1e-12)
    assert to_internal(a_si, "acceleration", wq) == pytest.approx(1.0, rel=1e-12)


def test_params_from_si_electron_like():
    e, m = 1.602176634e-19, 9.1093837e-31
    p = params_from_si(e, m, 1e16, 1e-25)
    assert p.omega_q == 1.0
    # beta omega_q = e^2 omega_q / (8 pi m c^3 eps0), dimensionless
    expect = e**2 * 1e16 / (8 * math.pi * m * SI.c**3 * SI.eps0)
    assert p.beta == pytest.approx(expect, rel=1e-12)


def test_config_file(tmp_path):
    f = tmp_path / "p.cfg"
    f.write_text("# particle\ne = 0.5\nm=2\nomega_q = 1\nM = 3\nunit_system = internal\n")
    vals = read_config(f)
    assert vals == {"e": 0.5, "m": 2.0, "omega_q": 1.0, "M": 3.0, "unit_system": "internal"}
    p = params_from_mapping(vals)
    assert (p.e, p.m, p.M) == (0.5, 2.0, 3.0)


def test_config_unknown_key(tmp_path):
    f = tmp_path / "p.cfg"
    f.write_text("e = 1\ncolour = red\n")
    with pytest.raises(UnknownConfigKey):
        read_config(f)
