"""Independent numerical checks of the closed-form vortex.

* finite-difference residual of the radial vorticity diffusion equation
* planar divergence / curl of the assembled velocity field
* a Fourier-Bessel evolver that advances each radial mode exactly through the
  spread difference, usable as an evolution oracle even while the viscosity is
  negative
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Protocol, Sequence

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import j0, j1, jn_zeros

from .vortex_core import (
    RadialProfile,
    velocity_from_spread,
    vorticity_from_spread,
)

# coefficients below this fraction of the largest are round-off and get dropped
NOISE_FLOOR = 64 * np.finfo(float).eps
DECAY_TOL = 1e-10
UNRESOLVED_TOL = 1e-8


class SpreadModel(Protocol):
    gamma: float

    def spread(self, t): ...

    def viscosity(self, t): ...


class SpreadExceedsDomainError(ValueError):
    pass


class NonDecayingProfileError(ValueError):
    pass


@dataclass(frozen=True)
class ResidualReport:
    grid: np.ndarray
    residuals: np.ndarray
    norm_inf: float
    scale: float

    @property
    def normalized(self) -> float:
        return self.norm_inf / self.scale if self.scale > 0 else math.inf


@dataclass(frozen=True)
class PlanarField:
    """Velocity on a uniform Cartesian grid; ``vx[j, i]`` sits at ``(x[i], y[j])``."""

    x: np.ndarray
    y: np.ndarray
    vx: np.ndarray
    vy: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        vx = np.asarray(self.vx, dtype=float)
        vy = np.asarray(self.vy, dtype=float)
        if x.size < 3 or y.size < 3:
            raise ValueError("planar grids need at least 3 points per axis")
        if vx.shape != (y.size, x.size) or vy.shape != vx.shape:
            raise ValueError("velocity arrays must have shape (len(y), len(x))")
        for name, g in (("x", x), ("y", y)):
            d = np.diff(g)
            if np.any(d <= 0) or not np.allclose(d, d[0], rtol=1e-9, atol=0):
                raise ValueError(f"{name}-grid must be uniform and increasing")
        for name, val in (("x", x), ("y", y), ("vx", vx), ("vy", vy)):
            object.__setattr__(self, name, val)


@dataclass(frozen=True)
class TransformEvolverSpec:
    r_max: float = 40.0
    modes: int = 256
    quadrature: str = "gauss_legendre"
    nodes: int = 2048

    def __post_init__(self):
        if self.modes < 16:
            raise ValueError("modes must be at least 16")
        if self.r_max <= 0:
            raise ValueError("r_max must be positive")
        if self.quadrature != "gauss_legendre":
            raise ValueError(f"unknown quadrature rule {self.quadrature!r}")
        if self.nodes < 2 * self.modes:
            raise ValueError("nodes must be at least twice the mode count")


@dataclass(frozen=True)
class ProfileErrors:
    sup: float
    l2: float
    rel_peak: float


def _vorticity(model: SpreadModel, r, t):
    return vorticity_from_spread(r, model.spread(t), model.gamma)


def pde_residual(
    model: SpreadModel,
    grid: Sequence[float],
    t: float,
    h_r: float,
    h_t: float,
) -> ResidualReport:
    """Pointwise residual of ``w_t = nu(t) (w_rr + w_r / r)`` by central differences.

    The residual is normalised by the largest finite-difference ``|w_t|`` on the
    grid.  The grid must start at ``max(2 h_r, 1e-3 sqrt(Sigma))`` or later.
    """
    r = np.asarray(grid, dtype=float)
    if r.ndim != 1 or r.size == 0 or np.any(np.diff(r) <= 0):
        raise ValueError("grid must be a non-empty increasing sequence")
    if h_r <= 0 or h_t <= 0:
        raise ValueError("steps must be positive")
    r_min = max(2 * h_r, 1e-3 * math.sqrt(float(model.spread(t))))
    if r[0] < r_min:
        raise ValueError(f"grid must start at r >= {r_min:.3g}; the 1/r term is singular at 0")
    if r.size > 1 and h_r > np.min(np.diff(r)):
        raise ValueError("h_r exceeds the grid spacing")

    w = _vorticity(model, r, t)
    w_t = (_vorticity(model, r, t + h_t) - _vorticity(model, r, t - h_t)) / (2 * h_t)
    w_p = _vorticity(model, r + h_r, t)
    w_m = _vorticity(model, r - h_r, t)
    w_rr = (w_p - 2 * w + w_m) / h_r**2
    w_r = (w_p - w_m) / (2 * h_r)
    res = w_t - model.viscosity(t) * (w_rr + w_r / r)
    res = np.atleast_1d(res)
    return ResidualReport(
        grid=r,
        residuals=res,
        norm_inf=float(np.max(np.abs(res))),
        scale=float(np.max(np.abs(w_t))),
    )


def vortex_planar_field(model: SpreadModel, t: float, x, y) -> PlanarField:
    """Azimuthal velocity of the vortex laid out on a Cartesian grid."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xx, yy = np.meshgrid(x, y)
    r = np.hypot(xx, yy)
    spread = float(model.spread(t))
    # v(r)/r is regular at the centre
    with np.errstate(invalid="ignore", divide="ignore"):
        v_over_r = np.where(
            r > 0,
            velocity_from_spread(r, spread, model.gamma) / np.where(r > 0, r, 1.0),
            model.gamma / (8 * spread),
        )
    return PlanarField(x=x, y=y, vx=-v_over_r * yy, vy=v_over_r * xx)


def planar_divergence_curl(f: PlanarField) -> tuple[np.ndarray, np.ndarray]:
    """Second-order divergence and z-curl (one-sided second order at the edges)."""
    hx = f.x[1] - f.x[0]
    hy = f.y[1] - f.y[0]
    dvx_dy, dvx_dx = np.gradient(f.vx, hy, hx, edge_order=2)
    dvy_dy, dvy_dx = np.gradient(f.vy, hy, hx, edge_order=2)
    return dvx_dx + dvy_dy, dvy_dx - dvx_dy


def _max_spread(model: SpreadModel, t0: float, t1: float) -> float:
    ts = np.linspace(t0, t1, 4097)
    return float(np.max(model.spread(ts)))


def fourier_bessel_basis(spec: TransformEvolverSpec):
    """Zeros-scaled wavenumbers and normalisation of the J0 basis on [0, r_max]."""
    zeros = jn_zeros(0, spec.modes)
    k = zeros / spec.r_max
    norm = 2.0 / (spec.r_max**2 * j1(zeros) ** 2)
    return zeros, k, norm


@lru_cache(maxsize=8)
def _legendre(n: int):
    return np.polynomial.legendre.leggauss(n)


def _project(func, spec: TransformEvolverSpec):
    nodes, weights = _legendre(spec.nodes)
    r = 0.5 * spec.r_max * (nodes + 1)
    w = 0.5 * spec.r_max * weights
    zeros, k, norm = fourier_bessel_basis(spec)
    vals = func(r)
    coeffs = norm * (j0(np.outer(k, r)) @ (w * vals * r))
    return coeffs


def spectral_evolve(
    initial: RadialProfile,
    model: SpreadModel,
    t1: float,
    spec: TransformEvolverSpec | None = None,
) -> RadialProfile:
    """Advance a vorticity profile from ``initial.time`` to ``t1``.

    Each J0 mode (zero value at ``r_max``) is multiplied by
    ``exp(-k^2 (Sigma(t1) - Sigma(t0)))``.  The sampled initial profile must
    cover ``[0, r_max]``; it is interpolated by a cubic spline with zero slope at
    both ends.  Coefficients under the round-off floor are dropped so the
    backward (negative-viscosity) stretch does not amplify noise.
    """
    spec = spec or TransformEvolverSpec()
    t0 = initial.time
    if t1 < t0:
        raise ValueError("t1 must not precede the initial time")
    radii, values = initial.radii, initial.values
    if radii[0] > 0 or radii[-1] < spec.r_max:
        raise ValueError("initial profile must cover [0, r_max]")
    peak = float(np.max(np.abs(values)))
    if peak == 0:
        return RadialProfile(radii, np.zeros_like(values), float(t1), "vorticity")
    tail = np.abs(values[radii >= spec.r_max])
    if tail.max() > DECAY_TOL * peak:
        raise NonDecayingProfileError(
            f"profile has not decayed at r_max: |w| = {tail.max():.3e}, peak {peak:.3e}"
        )
    s_max = _max_spread(model, t0, t1)
    if 2 * math.sqrt(s_max) > spec.r_max / 5:
        raise SpreadExceedsDomainError(
            f"core width {2 * math.sqrt(s_max):.3g} exceeds r_max/5 = {spec.r_max / 5:.3g}"
        )

    spline = CubicSpline(radii, values, bc_type=((1, 0.0), (1, 0.0)))
    coeffs = _project(spline, spec)
    mag = np.abs(coeffs)
    # the top quarter of the spectrum holds only interpolation and quadrature noise
    noise = float(mag[3 * spec.modes // 4 :].max())
    if noise > UNRESOLVED_TOL * mag.max():
        raise ValueError("initial profile is not resolved by the mode basis")
    coeffs[mag < max(NOISE_FLOOR * mag.max(), 10 * noise)] = 0.0

    _, k, _ = fourier_bessel_basis(spec)
    d_spread = float(model.spread(t1)) - float(model.spread(t0))
    coeffs = coeffs * np.exp(-(k**2) * d_spread)

    inside = radii <= spec.r_max
    out = np.zeros_like(values)
    out[inside] = j0(np.outer(radii[inside], k)) @ coeffs
    return RadialProfile(radii, out, float(t1), "vorticity")


def profile_circulation(profile: RadialProfile, r_max: float | None = None) -> float:
    """``integral_0^r_max w 2 pi r dr`` via a spline of ``w r``."""
    r_max = profile.radii[-1] if r_max is None else r_max
    spline = CubicSpline(profile.radii, profile.values * profile.radii)
    return float(2 * math.pi * spline.integrate(profile.radii[0], r_max))


def compare_profiles(a: RadialProfile, b: RadialProfile) -> ProfileErrors:
    if a.kind != b.kind:
        raise ValueError("profiles have different kinds")
    if a.radii.shape != b.radii.shape or not np.array_equal(a.radii, b.radii):
        raise ValueError("profiles are sampled on different grids")
    d = a.values - b.values
    sup = float(np.max(np.abs(d)))
    l2 = float(math.sqrt(np.trapezoid(d**2, a.radii))) if d.size > 1 else 0.0
    peak = max(float(np.max(np.abs(a.values))), float(np.max(np.abs(b.values))))
    rel = sup / peak if peak > 0 else (0.0 if sup == 0 else math.inf)
    return ProfileErrors(sup=sup, l2=l2, rel_peak=rel)
