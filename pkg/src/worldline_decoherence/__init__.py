"""Decoherence, dissipation and dispersion coefficients of a polarizable
particle on stationary worldlines, and position-basis master-equation
evolution of its center of mass.

Internal units: hbar = c = eps0 = kB = 1, with the oscillator frequency
omega_q setting the frequency scale.
"""

__version__ = "0.1.0"

from .dispersion import DispersionResult, c1_td, c2_du, c2_td
from .errors import ConvergenceError, ValidationError
from .model import INTERNAL, SI, ModelParams, build_params, from_internal, params_from_si, to_internal
from .qbm import Grid1D, GridState, QbmCoefficients, build_superposition, coherence_norm, evolve
from .quadrature import QuadConfig, QuadResult, adaptive_integrate, integrate_pv, integrate_semi_infinite
from .rates import RateResult, gamma_from_fdt, lambda_du, lambda_td, lambda_thermal, momentum_diffusion
from .response import alpha0, alpha_redshifted, eta
from .spectra import WightmanSpectrum, bose_einstein, davies_unruh_temperature, effective_temperature, wightman_pm
from .worldlines import Kind, Worldline, solve_R

__all__ = [
    "DispersionResult", "c1_td", "c2_du", "c2_td",
    "ConvergenceError", "ValidationError",
    "INTERNAL", "SI", "ModelParams", "build_params", "from_internal", "params_from_si", "to_internal",
    "Grid1D", "GridState", "QbmCoefficients", "build_superposition", "coherence_norm", "evolve",
    "QuadConfig", "QuadResult", "adaptive_integrate", "integrate_pv", "integrate_semi_infinite",
    "RateResult", "gamma_from_fdt", "lambda_du", "lambda_td", "lambda_thermal", "momentum_diffusion",
    "alpha0", "alpha_redshifted", "eta",
    "WightmanSpectrum", "bose_einstein", "davies_unruh_temperature", "effective_temperature", "wightman_pm",
    "Kind", "Worldline", "solve_R",
]
