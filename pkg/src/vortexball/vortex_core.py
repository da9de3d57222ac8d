"""Oscillating-viscosity Gaussian vortex.

The kinematic viscosity oscillates as ``nu * cos(Omega t)``, so the Gaussian
spread accumulates as ``Sigma(t) = (nu / Omega) * (sin(Omega t) + n)`` and never
decays on average.  Vorticity and orbital speed keep the Lamb-Oseen shape with
``Sigma`` in place of ``nu * t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

FieldKind = Literal["vorticity", "speed"]

# below this r / sqrt(Sigma) the speed is taken from its series expansion
_SERIES_CUTOFF = 1e-8


@dataclass(frozen=True)
class VortexParams:
    """Parameters of the oscillating vortex.

    gamma: circulation constant [length^2/time], either sign.
    nu: viscosity amplitude [length^2/time].
    omega_cap: viscosity oscillation frequency [1/time].
    n_offset: dimensionless offset, ``sigma^2 = n * nu / omega_cap``.
    """

    gamma: float = 1.0
    nu: float = 1.0
    omega_cap: float = 2 * math.pi
    n_offset: float = 16.0

    def __post_init__(self):
        for name in ("gamma", "nu", "omega_cap", "n_offset"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.nu <= 0:
            raise ValueError("nu must be positive")
        if self.omega_cap <= 0:
            raise ValueError("omega_cap must be positive")
        if self.gamma == 0:
            raise ValueError("gamma must be nonzero")
        if self.n_offset <= 1:
            raise ValueError("n_offset must exceed 1 to keep the spread positive")

    @property
    def sigma_sq(self) -> float:
        """Initial spread ``sigma^2 = n * nu / Omega``."""
        return self.n_offset * self.nu / self.omega_cap

    @property
    def period(self) -> float:
        return 2 * math.pi / self.omega_cap

    def spread(self, t):
        return sigma_at(t, self)

    def viscosity(self, t):
        return viscosity_at(t, self)


@dataclass(frozen=True)
class LambOseenParams:
    """Constant-viscosity vortex with spread ``nu t + sigma_sq``; ``nu = 0`` freezes it."""

    gamma: float = 1.0
    nu: float = 1.0
    sigma_sq: float = 1.0

    def __post_init__(self):
        if self.nu < 0:
            raise ValueError("nu must be nonnegative")
        if self.sigma_sq <= 0:
            raise ValueError("sigma_sq must be positive")
        if self.gamma == 0:
            raise ValueError("gamma must be nonzero")

    def spread(self, t):
        return lamb_oseen_spread(t, self.nu, self.sigma_sq)

    def viscosity(self, t):
        return (self.nu * np.ones_like(np.asarray(t, dtype=float)))[()]


# the figure-2 parameter set, reused by the CLI and the verification suite
FIG2_PARAMS = VortexParams(gamma=1.0, nu=1.0, omega_cap=2 * math.pi, n_offset=16.0)


@dataclass(frozen=True)
class RadialProfile:
    """A radial field sampled at one instant."""

    radii: np.ndarray
    values: np.ndarray
    time: float
    kind: str

    def __post_init__(self):
        radii = np.asarray(self.radii, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if radii.ndim != 1 or radii.size == 0:
            raise ValueError("radii must be a non-empty 1-D sequence")
        if values.shape != radii.shape:
            raise ValueError("values and radii must have the same length")
        if radii[0] < 0 or np.any(np.diff(radii) <= 0):
            raise ValueError("radii must be nonnegative and strictly increasing")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class WallConstant:
    a0: float
    residual: float


def viscosity_at(t, p: VortexParams):
    return p.nu * np.cos(p.omega_cap * np.asarray(t, dtype=float))[()]


def sigma_at(t, p: VortexParams):
    """Effective spread ``(nu/Omega) (sin(Omega t) + n)``."""
    t = np.asarray(t, dtype=float)
    return (p.nu / p.omega_cap * (np.sin(p.omega_cap * t) + p.n_offset))[()]


def lamb_oseen_spread(t, nu: float, sigma_sq: float = 0.0):
    """Spread of the constant-viscosity vortex, ``nu t + sigma^2``."""
    return (nu * np.asarray(t, dtype=float) + sigma_sq)[()]


def vorticity_from_spread(r, spread, gamma: float):
    """Gaussian vorticity ``gamma/(4 S) exp(-r^2/(4 S))`` for a given spread ``S``."""
    r = np.asarray(r, dtype=float)
    spread = np.asarray(spread, dtype=float)
    return (gamma / (4 * spread) * np.exp(-(r**2) / (4 * spread)))[()]


def velocity_from_spread(r, spread, gamma: float):
    """Orbital speed ``gamma/(2 r) (1 - exp(-r^2/(4 S)))`` with its regular limit at 0."""
    r, spread = np.broadcast_arrays(
        np.asarray(r, dtype=float), np.asarray(spread, dtype=float)
    )
    x = r**2 / (4 * spread)
    small = r < _SERIES_CUTOFF * np.sqrt(spread)
    safe_r = np.where(small, 1.0, r)
    out = np.where(
        small,
        gamma * r / (8 * spread),
        gamma / (2 * safe_r) * -np.expm1(-x),
    )
    return out[()]


def vorticity_at(r, t, p: VortexParams):
    return vorticity_from_spread(r, sigma_at(t, p), p.gamma)


def velocity_at(r, t, p: VortexParams):
    return velocity_from_spread(r, sigma_at(t, p), p.gamma)


def _wall_residual(a: float) -> float:
    return math.log1p(2 * a) - a


def solve_wall_constant(tol: float = 1e-12) -> WallConstant:
    """Positive root of ``ln(2a + 1) - a = 0``.

    Bisection on (1, 2) down to a 1e-12 bracket, then a single Newton step.
    """
    if not 0 < tol <= 1e-6:
        raise ValueError("tol must lie in (0, 1e-6]")
    lo, hi = 1.0, 2.0
    f_lo, f_hi = _wall_residual(lo), _wall_residual(hi)
    if not (f_lo > 0 > f_hi):
        raise ArithmeticError("wall-constant bracket does not change sign")
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if _wall_residual(mid) > 0:
            lo = mid
        else:
            hi = mid
    a = 0.5 * (lo + hi)
    a -= _wall_residual(a) / (2 / (1 + 2 * a) - 1)
    res = _wall_residual(a)
    if abs(res) > tol:
        raise ArithmeticError(f"wall constant residual {res:.3e} exceeds {tol:.1e}")
    return WallConstant(a0=a, residual=res)


WALL_CONSTANT = solve_wall_constant().a0


def core_radius_at(t, p: VortexParams, a0: float | None = None):
    """Radius of maximum orbital speed, ``2 sqrt(a0 Sigma(t))``."""
    a0 = WALL_CONSTANT if a0 is None else a0
    return (2 * np.sqrt(a0 * np.asarray(sigma_at(t, p))))[()]


def sample_radial_field(
    kind: FieldKind, grid: Sequence[float], t: float, p: VortexParams
) -> RadialProfile:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("grid must be a non-empty 1-D sequence")
    if grid[0] < 0 or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be nonnegative and strictly increasing")
    if kind == "vorticity":
        values = vorticity_at(grid, t, p)
    elif kind == "speed":
        values = velocity_at(grid, t, p)
    else:
        raise ValueError(f"unknown field kind {kind!r}")
    return RadialProfile(radii=grid, values=np.atleast_1d(values), time=float(t), kind=kind)
