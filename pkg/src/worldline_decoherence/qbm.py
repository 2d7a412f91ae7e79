"""Position-basis evolution of a 1-D center-of-mass density matrix.

The generator, with internal units and x, x' the row and column coordinates:

    d rho/dt = - Lambda (x - x')^2 rho
               - Gamma (x - x') (d_x - d_x') rho
               + i C1 (x - x') rho
               - i C2 (x^2 - x'^2) rho
             [ + i/(2M) (d_x^2 - d_x'^2) rho - i M a (x - x') rho ]   (include_kinetic)

Derivatives are central differences with rho = 0 outside the grid.  Every
term maps Hermitian matrices to Hermitian matrices and has a vanishing
diagonal contribution to the trace, so both are conserved up to roundoff.
Time stepping is classical fixed-step RK4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np

from .errors import GridTooSmall, NonFiniteState, StabilityViolation, ValidationError

#: dt times the stiffest rate must stay below this
STABILITY_LIMIT = 0.1
MIN_POINTS = 64


@dataclass(frozen=True)
class Grid1D:
    n_points: int
    x_max: float

    def __post_init__(self):
        if self.n_points < MIN_POINTS or self.n_points % 2:
            raise ValidationError(f"n_points must be even and >= {MIN_POINTS}, got {self.n_points}")
        if not self.x_max > 0:
            raise ValidationError("x_max must be positive")

    @property
    def dx(self) -> float:
        return 2.0 * self.x_max / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(-self.x_max, self.x_max, self.n_points)


@dataclass
class GridState:
    rho: np.ndarray
    grid: Grid1D
    time: float = 0.0
    separation: Optional[float] = None

    def trace(self) -> float:
        return float(np.real(np.trace(self.rho)) * self.grid.dx)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.rho - self.rho.conj().T)))

    def purity(self) -> float:
        dx = self.grid.dx
        return float(np.real(np.vdot(self.rho.conj().T, self.rho)) * dx * dx)

    def copy(self) -> GridState:
        return replace(self, rho=self.rho.copy())


@dataclass(frozen=True)
class QbmCoefficients:
    lambda_: float = 0.0
    gamma: float = 0.0
    c1: float = 0.0
    c2: float = 0.0
    M: float = 1.0
    a: float = 0.0
    include_kinetic: bool = False

    def __post_init__(self):
        if not self.lambda_ >= 0:
            raise ValidationError("lambda must be >= 0")
        if not self.M > 0:
            raise ValidationError("M must be positive")
        vals = (self.lambda_, self.gamma, self.c1, self.c2, self.M, self.a)
        if not all(math.isfinite(v) for v in vals):
            raise ValidationError("QBM coefficients must be finite")


@dataclass
class TimeSeries:
    t: List[float] = field(default_factory=list)
    trace: List[float] = field(default_factory=list)
    coherence_norm: List[float] = field(default_factory=list)
    snapshots: List[np.ndarray] = field(default_factory=list)

    def record(self, state: GridState, separation: float, keep_matrix: bool):
        self.t.append(state.time)
        self.trace.append(state.trace())
        self.coherence_norm.append(coherence_norm(state, separation))
        if keep_matrix:
            self.snapshots.append(np.abs(state.rho))

    def as_arrays(self):
        return np.array(self.t), np.array(self.trace), np.array(self.coherence_norm)


def gaussian(x, center, sigma):
    """Normalized (in L2) real Gaussian wavefunction."""
    return (2.0 * math.pi * sigma**2) ** -0.25 * np.exp(-((x - center) ** 2) / (4.0 * sigma**2))


def build_superposition(x0: float, separation: float, sigma: float, grid: Grid1D) -> GridState:
    """Equal-weight cat state of two Gaussians at x0 +- separation/2."""
    if not sigma > 0:
        raise ValidationError("sigma must be positive")
    if separation < 0:
        raise ValidationError("separation must be >= 0")
    reach = abs(x0) + separation / 2.0 + 4.0 * sigma
    if reach > grid.x_max:
        raise GridTooSmall(f"state reaches |x| = {reach:.6g} beyond x_max = {grid.x_max:.6g}")
    x = grid.x
    psi = gaussian(x, x0 - separation / 2.0, sigma) + gaussian(x, x0 + separation / 2.0, sigma)
    psi = psi / math.sqrt(np.sum(psi**2) * grid.dx)
    rho = np.outer(psi, psi.conj()).astype(complex)
    return GridState(rho, grid, 0.0, separation)


def coherence_norm(state: GridState, separation: float) -> float:
    """Far-off-diagonal mass: sum of |rho| dx^2 over |x - x'| > separation/2."""
    x = state.grid.x
    far = np.abs(x[:, None] - x[None, :]) > separation / 2.0
    return float(np.sum(np.abs(state.rho[far])) * state.grid.dx**2)


def stiffness(k: QbmCoefficients, grid: Grid1D) -> float:
    """Largest rate in the generator, used for the explicit-step check."""
    L, dx = 2.0 * grid.x_max, grid.dx
    rates = [k.lambda_ * L**2, abs(k.gamma) * L / dx, abs(k.c1) * L + abs(k.c2) * grid.x_max**2]
    if k.include_kinetic:
        rates += [1.0 / (k.M * dx**2), abs(k.M * k.a) * L]
    return max(rates)


class Generator:
    """Right-hand side of the master equation on a fixed grid."""

    def __init__(self, k: QbmCoefficients, grid: Grid1D):
        self.k = k
        self.dx = grid.dx
        x = grid.x
        d = x[:, None] - x[None, :]
        phase = k.c1 * d - k.c2 * (x[:, None] ** 2 - x[None, :] ** 2)
        if k.include_kinetic:
            phase = phase - k.M * k.a * d
        self.diag = -k.lambda_ * d**2 + 1j * phase
        self.gamma_weight = -k.gamma * d if k.gamma else None
        self.kinetic = 1j / (2.0 * k.M * self.dx**2) if k.include_kinetic else None

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        out = self.diag * rho
        if self.gamma_weight is not None:
            # (d_x - d_x') rho with central differences, Dirichlet edges
            g = np.zeros_like(rho)
            g[1:-1, :] += rho[2:, :] - rho[:-2, :]
            g[-1, :] -= rho[-2, :]
            g[0, :] += rho[1, :]
            g[:, 1:-1] -= rho[:, 2:] - rho[:, :-2]
            g[:, -1] += rho[:, -2]
            g[:, 0] -= rho[:, 1]
            out += self.gamma_weight * g / (2.0 * self.dx)
        if self.kinetic is not None:
            # (d_x^2 - d_x'^2) rho; the -2 rho centre terms cancel
            lap = np.zeros_like(rho)
            lap[1:, :] += rho[:-1, :]
            lap[:-1, :] += rho[1:, :]
            lap[:, 1:] -= rho[:, :-1]
            lap[:, :-1] -= rho[:, 1:]
            out += self.kinetic * lap
        return out


def rk4_step(f, rho: np.ndarray, dt: float) -> np.ndarray:
    k1 = f(rho)
    k2 = f(rho + 0.5 * dt * k1)
    k3 = f(rho + 0.5 * dt * k2)
    k4 = f(rho + dt * k3)
    return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def evolve(
    state: GridState,
    k: QbmCoefficients,
    dt: float,
    steps: int,
    snapshot_every: Optional[int] = None,
    separation: Optional[float] = None,
    keep_matrices: bool = False,
):
    """Integrate ``steps`` RK4 steps of size ``dt``.

    Returns the final :class:`GridState` and a :class:`TimeSeries` sampled at
    t = 0, every ``snapshot_every`` steps, and at the final step.
    """
    if not dt > 0:
        raise ValidationError("dt must be positive")
    if steps < 0:
        raise ValidationError("steps must be >= 0")
    grid = state.grid
    s = stiffness(k, grid)
    if dt * s >= STABILITY_LIMIT:
        raise StabilityViolation(
            f"dt * stiffness = {dt * s:.3g} >= {STABILITY_LIMIT}; reduce dt below {STABILITY_LIMIT / s:.3g}"
        )
    sep = separation if separation is not None else state.separation
    if sep is None:
        raise ValidationError("separation needed for the coherence norm")
    every = snapshot_every or max(steps, 1)
    f = Generator(k, grid)
    cur = state.copy()
    series = TimeSeries()
    series.record(cur, sep, keep_matrices)
    rho = cur.rho
    t0 = cur.time
    for n in range(1, steps + 1):
        rho = rk4_step(f, rho, dt)
        if n % every == 0 or n == steps:
            if not np.all(np.isfinite(rho)):
                raise NonFiniteState(f"non-finite density matrix at step {n}")
            cur = GridState(rho, grid, t0 + n * dt, sep)
            series.record(cur, sep, keep_matrices)
    if not np.all(np.isfinite(rho)):
        raise NonFiniteState("non-finite density matrix")
    return GridState(rho, grid, t0 + steps * dt, sep), series


def pure_dephasing(state: GridState, lambda_: float, t: float) -> np.ndarray:
    """Closed-form rho(x, x', t) = rho(x, x', 0) exp(-Lambda (x - x')^2 t)."""
    x = state.grid.x
    return state.rho * np.exp(-lambda_ * (x[:, None] - x[None, :]) ** 2 * t)
