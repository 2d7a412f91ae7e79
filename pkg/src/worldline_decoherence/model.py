"""Physical parameters, the internal natural-unit system and SI conversion.

All kernels work in natural units with hbar = c = eps0 = kB = 1 and the
internal oscillator frequency ``omega_q`` as the unit of frequency.  A
quantity of kind ``k`` is converted by dividing its SI value by the SI
value of the corresponding internal unit, which is a monomial in
``hbar, c, eps0, kB`` and the frequency scale.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from pathlib import Path

import scipy.constants as const

from .errors import (
    DampingTooLarge,
    NonPositiveParameter,
    UnknownConfigKey,
    UnknownDimensionTag,
    ValidationError,
)

#: Largest allowed beta * omega_q (weak-damping regime).
MAX_DAMPING = 0.1


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float
    c: float
    eps0: float
    kB: float

    def __post_init__(self):
        for name in ("hbar", "c", "eps0", "kB"):
            if not getattr(self, name) > 0:
                raise NonPositiveParameter(f"{name} must be positive")

    @property
    def is_internal(self) -> bool:
        return self.hbar == self.c == self.eps0 == self.kB == 1.0


INTERNAL = PhysicalConstants(hbar=1.0, c=1.0, eps0=1.0, kB=1.0)
SI = PhysicalConstants(hbar=const.hbar, c=const.c, eps0=const.epsilon_0, kB=const.k)


# Exponents of (hbar, c, eps0, kB, omega) making up the internal unit of
# each kind of quantity.
DIMENSIONS: dict[str, tuple[float, float, float, float, float]] = {
    "dimensionless": (0, 0, 0, 0, 0),
    "frequency": (0, 0, 0, 0, 1),
    "rate": (0, 0, 0, 0, 1),
    "time": (0, 0, 0, 0, -1),
    "length": (0, 1, 0, 0, -1),
    "velocity": (0, 1, 0, 0, 0),
    "acceleration": (0, 1, 0, 0, 1),
    "mass": (1, -2, 0, 0, 1),
    "energy": (1, 0, 0, 0, 1),
    "temperature": (1, 0, 0, -1, 1),
    "momentum": (1, -1, 0, 0, 1),
    "force": (1, -1, 0, 0, 2),
    "action": (1, 0, 0, 0, 0),
    "charge": (0.5, 0.5, 0.5, 0, 0),
    "polarizability": (0, 3, 1, 0, -3),
    "spectral_density": (1, -3, -1, 0, 1),
    # Lambda: 1 / (length^2 time)
    "decoherence_rate": (0, -2, 0, 0, 3),
    # <dP^2>/dt: momentum^2 / time
    "momentum_diffusion": (2, -2, 0, 0, 3),
    # C2: energy / length^2
    "stiffness": (1, -2, 0, 0, 3),
}


def unit_value(kind: str, scale: float, constants: PhysicalConstants = SI) -> float:
    """SI value of one internal unit of ``kind`` for frequency scale ``scale``."""
    try:
        ph, pc, pe, pk, pw = DIMENSIONS[kind]
    except KeyError:
        raise UnknownDimensionTag(f"unknown dimension tag {kind!r}") from None
    if not scale > 0:
        raise NonPositiveParameter("frequency scale must be positive")
    return (
        constants.hbar**ph
        * constants.c**pc
        * constants.eps0**pe
        * constants.kB**pk
        * scale**pw
    )


def to_internal(value: float, kind: str, scale: float) -> float:
    """Nondimensionalize an SI ``value`` of the given kind.

    Examples
    --------
    >>> to_internal(2 * 3.0e15, "frequency", 3.0e15)
    2.0
    """
    return value / unit_value(kind, scale)


def from_internal(value: float, kind: str, scale: float) -> float:
    """Inverse of :func:`to_internal`."""
    return value * unit_value(kind, scale)


@dataclass(frozen=True)
class ModelParams:
    """Internal-oscillator and mass parameters.

    ``beta`` is derived from ``e`` and ``m`` and cannot be passed in.
    """

    e: float
    m: float
    omega_q: float
    M: float
    constants: PhysicalConstants = INTERNAL
    beta: float = field(init=False)

    def __post_init__(self):
        for name in ("m", "omega_q", "M"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise NonPositiveParameter(f"{name} must be positive and finite, got {value!r}")
        if not math.isfinite(self.e):
            raise NonPositiveParameter("e must be finite")
        k = self.constants
        beta = self.e**2 / (8.0 * math.pi * self.m * k.c**3 * k.eps0)
        if beta * self.omega_q >= MAX_DAMPING:
            raise DampingTooLarge(
                f"beta*omega_q = {beta * self.omega_q:.4g} violates the weak-damping "
                f"requirement beta*omega_q < {MAX_DAMPING}"
            )
        object.__setattr__(self, "beta", beta)

    @property
    def coupling(self) -> float:
        """e^2/m, the numerator of the polarizability."""
        return self.e**2 / self.m


def build_params(e, m, omega_q, M, constants: PhysicalConstants = INTERNAL) -> ModelParams:
    """Validate parameters and derive the damping time beta = e^2/(8 pi m c^3 eps0)."""
    return ModelParams(float(e), float(m), float(omega_q), float(M), constants)


def params_from_si(e, m, omega_q, M) -> ModelParams:
    """Convert SI parameters to internal units with ``omega_q`` as the scale.

    The returned parameters always have ``omega_q == 1``.
    """
    if not omega_q > 0:
        raise NonPositiveParameter("omega_q must be positive")
    return build_params(
        to_internal(e, "charge", omega_q),
        to_internal(m, "mass", omega_q),
        1.0,
        to_internal(M, "mass", omega_q),
    )


DEFAULT_PARAMS = {"e": 1.0, "m": 1.0, "omega_q": 1.0, "M": 1.0, "unit_system": "internal"}
CONFIG_KEYS = frozenset(DEFAULT_PARAMS)


def read_config(path) -> dict:
    """Read a flat ``key=value`` parameter file.

    Recognised keys are ``e, m, omega_q, M, unit_system``; anything else is
    rejected.  Lines starting with ``#`` or ``;`` are comments.
    """
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keys are case sensitive (m vs M)
    text = Path(path).read_text(encoding="utf-8")
    try:
        parser.read_string("[params]\n" + text)
    except configparser.Error as exc:
        raise ValidationError(f"cannot parse config file {path}: {exc}") from None
    raw = dict(parser["params"])
    unknown = sorted(set(raw) - CONFIG_KEYS)
    if unknown:
        raise UnknownConfigKey(f"unknown config key(s): {', '.join(unknown)}")
    out = {}
    for key, value in raw.items():
        if key == "unit_system":
            if value not in ("internal", "si"):
                raise ValidationError(f"unit_system must be 'internal' or 'si', got {value!r}")
            out[key] = value
        else:
            try:
                out[key] = float(value)
            except ValueError:
                raise ValidationError(f"config key {key!r} is not a number: {value!r}") from None
    return out


def params_from_mapping(values: dict) -> ModelParams:
    merged = {**DEFAULT_PARAMS, **values}
    if merged["unit_system"] == "si":
        return params_from_si(merged["e"], merged["m"], merged["omega_q"], merged["M"])
    return build_params(merged["e"], merged["m"], merged["omega_q"], merged["M"])
