"""Angular velocity on the vortex ball and two-level spinor evolution.

The spinor obeys ``i hbar dpsi/dt = (theta . sigma) psi``.  Each step applies the
exact exponential of the Hamiltonian frozen at the step midpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import constants as _sc

from .ring_geometry import RingParams, ring_position, ring_velocity

HBAR_SI = _sc.hbar
NORM_TOL = 1e-12


@dataclass(frozen=True)
class DriveField:
    theta_x: float = 0.0
    theta_y: float = 0.0
    theta_z: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in self.as_array()):
            raise ValueError("drive components must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.theta_x, self.theta_y, self.theta_z], dtype=float)

    @property
    def magnitude(self) -> float:
        return float(np.linalg.norm(self.as_array()))


@dataclass(frozen=True)
class Spinor:
    up: complex = 1.0 + 0.0j
    down: complex = 0.0 + 0.0j

    def __post_init__(self):
        if abs(self.norm() - 1.0) > NORM_TOL:
            raise ValueError(f"spinor is not normalized (norm {self.norm()!r})")

    def norm(self) -> float:
        return math.sqrt(abs(self.up) ** 2 + abs(self.down) ** 2)

    def as_array(self) -> np.ndarray:
        return np.array([self.up, self.down], dtype=complex)


@dataclass(frozen=True)
class EvolutionTrace:
    times: np.ndarray
    spinors: np.ndarray  # shape (steps + 1, 2)
    norms: np.ndarray


@dataclass(frozen=True)
class OmegaComparison:
    times: np.ndarray
    from_ring: np.ndarray  # cross-product route
    closed_form: np.ndarray
    deviation: np.ndarray  # |from_ring - closed_form| per component
    max_deviation: np.ndarray


def angular_velocity(t, p: RingParams) -> np.ndarray:
    """``(r x v) / |r|^2`` along the ring."""
    r = ring_position(t, p)
    v = ring_velocity(t, p)
    r2 = np.einsum("...i,...i->...", r, r)
    if np.any(r2 == 0):
        raise ValueError("angular velocity is undefined at the origin")
    return np.cross(r, v) / r2[..., None]


def omega_closed_form(t, omega: float) -> np.ndarray:
    """Angular velocity from the printed complex pair ``Omega_x +/- i Omega_y`` and ``Omega_z``."""
    t = np.asarray(t, dtype=float)
    plus = -0.5 * omega * np.exp(0.5j * omega * t) * (2 * np.sin(omega * t) - 1j * np.cos(omega * t))
    return np.stack([plus.real, plus.imag, omega * np.cos(omega * t)], axis=-1)


def omega_minus_closed_form(t, omega: float) -> np.ndarray:
    """The printed ``Omega_x - i Omega_y``; equals the conjugate of the plus form."""
    t = np.asarray(t, dtype=float)
    return -0.5 * omega * np.exp(-0.5j * omega * t) * (2 * np.sin(omega * t) + 1j * np.cos(omega * t))


def compare_omega(omega0: float, times) -> OmegaComparison:
    """Tabulate the cross-product route (``b1 = 0``, ``omega1 = omega0/2``) against the closed form.

    No verdict is made; the two routes are known to differ.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    ring = RingParams(a0=1.0, b1=0.0, omega0=omega0, omega1=omega0 / 2)
    a = angular_velocity(times, ring)
    b = omega_closed_form(times, omega0)
    dev = np.abs(a - b)
    return OmegaComparison(times, a, b, dev, dev.max(axis=0))


def drive_from_omega(omegavec, hbar: float = 1.0) -> DriveField:
    x, y, z = (float(c) * hbar for c in np.asarray(omegavec, dtype=float))
    return DriveField(x, y, z)


def hamiltonian(drive: DriveField) -> np.ndarray:
    tx, ty, tz = drive.theta_x, drive.theta_y, drive.theta_z
    return np.array([[tz, tx - 1j * ty], [tx + 1j * ty, -tz]], dtype=complex)


def _unitaries(theta: np.ndarray, dt: np.ndarray, hbar: float) -> np.ndarray:
    """Stack of ``exp(-i (theta . sigma) dt / hbar)``, theta shape ``(m, 3)``."""
    mag = np.linalg.norm(theta, axis=-1)
    safe = np.where(mag > 0, mag, 1.0)
    nx, ny, nz = (theta / safe[:, None]).T
    phi = mag * dt / hbar
    c, s = np.cos(phi), np.sin(phi)
    u = np.empty((len(theta), 2, 2), dtype=complex)
    u[:, 0, 0] = c - 1j * s * nz
    u[:, 0, 1] = -1j * s * (nx - 1j * ny)
    u[:, 1, 0] = -1j * s * (nx + 1j * ny)
    u[:, 1, 1] = c + 1j * s * nz
    return u


def step_unitary(drive: DriveField, dt: float, hbar: float = 1.0) -> np.ndarray:
    """``exp(-i (theta . sigma) dt / hbar)`` in closed form."""
    return _unitaries(drive.as_array()[None, :], np.array([dt]), hbar)[0]


def bloch_rotation_time(drive: DriveField, angle: float, hbar: float = 1.0) -> float:
    """Time for a constant drive to turn the Bloch vector by ``angle``.

    The Bloch vector precesses at ``2 |theta| / hbar``.
    """
    if drive.magnitude == 0:
        raise ValueError("zero drive does not rotate")
    return angle * hbar / (2 * drive.magnitude)


def evolve_spinor(
    psi0: Spinor,
    drive: DriveField | Callable[[float], DriveField],
    t_span: tuple[float, float],
    steps: int,
    hbar: float = 1.0,
) -> EvolutionTrace:
    """Piecewise-constant midpoint propagation; second order for smooth drives."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    t0, t1 = (float(v) for v in t_span)
    if not (math.isfinite(t0) and math.isfinite(t1)):
        raise ValueError("t_span must be finite")
    if abs(psi0.norm() - 1.0) > NORM_TOL:
        raise ValueError("psi0 must be normalized")
    times = np.linspace(t0, t1, steps + 1)
    mids = 0.5 * (times[:-1] + times[1:])
    if isinstance(drive, DriveField):
        theta = np.broadcast_to(drive.as_array(), (steps, 3))
    else:
        theta = np.array([drive(t).as_array() for t in mids])
    units = _unitaries(theta, np.diff(times), hbar)
    states = np.empty((steps + 1, 2), dtype=complex)
    states[0] = psi0.as_array()
    up, down = states[0]
    for k, u in enumerate(units.tolist()):
        up, down = u[0][0] * up + u[0][1] * down, u[1][0] * up + u[1][1] * down
        states[k + 1] = up, down
    norms = np.sqrt(np.sum(np.abs(states) ** 2, axis=1))
    return EvolutionTrace(times=times, spinors=states, norms=norms)


def closed_form_drive(omega: float, hbar: float = 1.0) -> Callable[[float], DriveField]:
    """Drive ``hbar * Omega(t)`` built from :func:`omega_closed_form`."""
    return lambda t: drive_from_omega(omega_closed_form(t, omega), hbar)
