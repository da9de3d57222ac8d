"""Canonical invariant checks run by ``vortexball verify``.

Every check returns a :class:`Check` with the measured quantity and the bound
it was held to.  ``fault`` names a deliberately corrupted input, used to prove
the report actually fails when something is wrong.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np
from scipy.integrate import quad

from . import field_verify as fv
from . import moment as mm
from . import ring_geometry as rg
from . import spin_dynamics as sd
from . import vortex_core as vc

FAULTS = ("wall_constant",)


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    measured: Any
    bound: Any

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _le(name, measured, bound) -> Check:
    ok = bool(np.isfinite(measured) and measured <= bound)
    return Check(name, "pass" if ok else "fail", float(measured), bound)


def _ge(name, measured, bound) -> Check:
    ok = bool(np.isfinite(measured) and measured >= bound)
    return Check(name, "pass" if ok else "fail", float(measured), bound)


def _within(name, measured, lo, hi) -> Check:
    ok = bool(lo <= measured <= hi)
    return Check(name, "pass" if ok else "fail", float(measured), [lo, hi])


def _equal(name, measured, expected) -> Check:
    return Check(name, "pass" if measured == expected else "fail", measured, expected)


def vortex_checks(fault: str | None = None) -> list[Check]:
    p = vc.FIG2_PARAMS
    wall = vc.solve_wall_constant(1e-12)
    a0 = 1.2 if fault == "wall_constant" else wall.a0
    out = [
        _le("wall_constant.quoted_digits", abs(round(a0, 4) - 1.2564), 0.0),
        _le("wall_constant.residual", abs(math.log(2 * a0 + 1) - a0), 1e-12),
    ]

    rng = np.random.default_rng(20240501)
    worst = 0.0
    for _ in range(8):
        q = vc.VortexParams(1.0, rng.uniform(0.2, 3), rng.uniform(0.5, 10), rng.uniform(1.5, 32))
        t = rng.uniform(0, q.period)
        sig = float(vc.sigma_at(t, q))
        r = np.linspace(0.5, 4.0, 20001) * math.sqrt(sig)
        v = vc.velocity_at(r, t, q)
        i = int(np.argmax(v))
        # parabola through the three samples around the discrete maximum
        y0, y1, y2 = v[i - 1], v[i], v[i + 1]
        h = r[1] - r[0]
        r_peak = r[i] + 0.5 * h * (y0 - y2) / (y0 - 2 * y1 + y2)
        worst = max(worst, abs(vc.core_radius_at(t, q, a0) / r_peak - 1))
    out.append(_le("vortex.core_radius_vs_argmax", worst, 1e-6))

    err = 0.0
    for t in np.linspace(0, 1, 5):
        sig = float(vc.sigma_at(t, p))
        for r in np.linspace(0.05, 20, 10) * math.sqrt(sig):
            integral, _ = quad(lambda s: vc.vorticity_at(s, t, p) * s, 0, r, epsabs=1e-14, epsrel=1e-13)
            err = max(err, abs(vc.velocity_at(r, t, p) - integral / r))
    out.append(_le("vortex.quadrature_identity", err / abs(p.gamma), 1e-8))

    r = np.linspace(0, 12, 97)
    ts = np.linspace(0, 1, 7)
    w0 = vc.vorticity_at(r[:, None], ts[None, :], p)
    w1 = vc.vorticity_at(r[:, None], ts[None, :] + p.period, p)
    mask = w0 > 1e-200
    out.append(_le("vortex.periodicity", np.max(np.abs(w1[mask] / w0[mask] - 1)), 1e-12))
    return out


def field_checks() -> list[Check]:
    p = vc.FIG2_PARAMS
    grid = np.linspace(0.1, 8, 80)
    coarse = fv.pde_residual(p, grid, 0.37, 1e-3, 1e-3)
    fine = fv.pde_residual(p, grid, 0.37, 5e-4, 5e-4)
    out = [
        _le("field.pde_residual", coarse.normalized, 1e-4),
        _within("field.pde_convergence_ratio", coarse.normalized / fine.normalized, 3.5, 4.5),
    ]
    x = np.linspace(-8, 8, 256)
    div, curl = fv.planar_divergence_curl(fv.vortex_planar_field(p, 0.0, x, x))
    out.append(_le("field.planar_divergence", np.max(np.abs(div)) / np.max(np.abs(curl)), 1e-3))

    radii = np.linspace(0, 40, 4001)
    init = vc.sample_radial_field("vorticity", radii, 0.0, p)
    c0 = fv.profile_circulation(init)
    sup = circ = 0.0
    for t1 in np.linspace(0.05, 0.95, 10) * p.period:
        evolved = fv.spectral_evolve(init, p, t1)
        exact = vc.sample_radial_field("vorticity", radii, t1, p)
        sup = max(sup, fv.compare_profiles(evolved, exact).rel_peak)
        circ = max(circ, abs(fv.profile_circulation(evolved) / c0 - 1))
    out.append(_le("field.spectral_sup_error", sup, 1e-6))
    out.append(_le("field.spectral_circulation", circ, 1e-6))
    return out


def ring_checks() -> list[Check]:
    rng = np.random.default_rng(7)
    out = []
    t = rng.uniform(-20, 20, 500)
    ball = rg.RingParams(a0=2.5, b1=0.0, omega0=1.3, omega1=0.7, phi0=0.4, phi1=1.1)
    radius = np.linalg.norm(rg.ring_position(t, ball), axis=-1)
    out.append(_le("ring.sphere_confinement", np.max(np.abs(radius / ball.a0 - 1)), 1e-12))

    worst = 0.0
    for _ in range(200):
        q = rg.RingParams(
            rng.uniform(0.5, 4), rng.uniform(0, 4), rng.uniform(-3, 3), rng.uniform(-3, 3),
            rng.uniform(0, 6.28), rng.uniform(0, 6.28),
        )
        tt = rng.uniform(-10, 10)
        h = 1e-6 / max(abs(q.omega0), abs(q.omega1))
        fd = (rg.ring_position(tt + h, q) - rg.ring_position(tt - h, q)) / (2 * h)
        v = rg.ring_velocity(tt, q)
        worst = max(worst, np.linalg.norm(fd - v) / max(np.linalg.norm(v), 1e-300))
    out.append(_le("ring.derivative_consistency", worst, 1e-8))

    closure = 0.0
    for den in range(1, 9):
        for num in range(1, 9):
            q = rg.RingParams(a0=1.5, b1=0.4, omega0=1.0, omega1=num / den, phi0=0.3, phi1=0.2)
            period = rg.loop_period(q)
            gap = np.linalg.norm(rg.ring_position(0.0, q) - rg.ring_position(period, q))
            closure = max(closure, gap / q.a0)
    out.append(_le("ring.closure", closure, 1e-10))

    counts, z_max = [], 0.0
    for n in (1, 2, 3):
        pts = rg.find_self_intersections(rg.RingParams(a0=4.0, omega0=1.0, omega1=1.0 / n))
        counts.append(len(pts))
        z_max = max([z_max] + [abs(ip.point[2]) / 4.0 for ip in pts])
    out.append(_equal("ring.self_intersection_counts", counts, [1, 0, 3]))
    out.append(_le("ring.equatorial_intersections", z_max, 1e-8))

    pa = rg.RingParams(a0=1.0, omega0=1.0, omega1=0.5)
    pb = rg.RingParams(a0=1.0, omega0=1.0, omega1=0.5, phi1=math.pi / 2)
    pts = rg.find_pair_intersections(pa, pb)
    out.append(_ge("ring.pair_intersections_found", len(pts), 1))
    vz = radial = 0.0
    for ip in pts:
        v = rg.summary_velocity(pa, pb, ip).v_star
        speed = np.linalg.norm(v)
        vz = max(vz, abs(v[2]) / speed)
        radial = max(radial, abs(v[0] * ip.point[0] + v[1] * ip.point[1]) / (speed * pa.a0))
    out.append(_le("ring.summary_velocity_vertical", vz, 1e-6))
    out.append(_le("ring.summary_velocity_radial", radial, 1e-6))
    return out


def spin_checks() -> list[Check]:
    rng = np.random.default_rng(11)
    out = []
    worst_norm = worst_flip = worst_herm = 0.0
    for _ in range(5):
        drive = sd.DriveField(*rng.normal(size=3))
        vec = rng.normal(size=2) + 1j * rng.normal(size=2)
        vec /= np.linalg.norm(vec)
        psi = sd.Spinor(complex(vec[0]), complex(vec[1]))
        t2 = sd.bloch_rotation_time(drive, 2 * math.pi)
        tr = sd.evolve_spinor(psi, drive, (0.0, 2 * t2), 400)
        worst_norm = max(worst_norm, np.max(np.abs(tr.norms - 1)))
        worst_flip = max(
            worst_flip,
            np.max(np.abs(tr.spinors[200] + vec)),
            np.max(np.abs(tr.spinors[400] - vec)),
        )
        h = sd.hamiltonian(drive)
        worst_herm = max(worst_herm, np.max(np.abs(h - h.conj().T)))
    tr = sd.evolve_spinor(sd.Spinor(), sd.closed_form_drive(1.0), (0, 4 * math.pi), 2000)
    worst_norm = max(worst_norm, np.max(np.abs(tr.norms - 1)))
    out.append(_le("spin.unitarity", worst_norm, 1e-9))
    out.append(_le("spin.double_cover", worst_flip, 1e-9))
    out.append(_le("spin.hermiticity", worst_herm, 0.0))

    ring = rg.RingParams(a0=1.0, omega0=1.0, omega1=0.5)
    t = np.linspace(0, 4 * math.pi, 1001)
    om = sd.angular_velocity(t, ring)
    r = rg.ring_position(t, ring)
    dots = np.abs(np.einsum("ij,ij->i", om, r)) / (np.linalg.norm(om, axis=1) * np.linalg.norm(r, axis=1))
    out.append(_le("spin.angular_velocity_orthogonal", np.max(dots), 1e-12))
    return out


def moment_checks() -> list[Check]:
    c = mm.PhysConstants.quoted()
    s = mm.PhysConstants.standard_tables()

    def rel(a, b):
        return abs(a / b - 1)

    return [
        _le("moment.schwinger", rel(mm.schwinger_mu(c), mm.QUOTED_SCHWINGER), 1e-5),
        _le("moment.sommerfield", rel(mm.sommerfield_mu(c), mm.QUOTED_SOMMERFIELD), 1e-6),
        _le(
            "moment.fraction_18",
            rel(mm.continued_fraction_mu(mm.FractionSpec(18), c).value, mm.QUOTED_FRACTION_18),
            1e-6,
        ),
        _le(
            "moment.fraction_6",
            rel(mm.continued_fraction_mu(mm.FractionSpec(6), c).value, mm.QUOTED_FRACTION_6),
            1e-6,
        ),
        _equal(
            "moment.sign_ledger",
            list(mm.continued_fraction_mu(mm.FractionSpec(18), c).signs),
            [-1, 1, -1, -1, 1, -1, -1, 1, -1, -1],
        ),
        _within("moment.term_growth_6", mm.term_growth(6, s), 0.8, 1.0),
        _ge("moment.term_growth_7", mm.term_growth(7, s), 1.0),
        _equal("moment.limiting_index", mm.limiting_index(s), 6),
    ]


SUITES: dict[str, Callable[..., list[Check]]] = {
    "vortex_core": vortex_checks,
    "field_verify": field_checks,
    "ring_geometry": ring_checks,
    "spin_dynamics": spin_checks,
    "moment": moment_checks,
}


def run_all(fault: str | None = None) -> list[Check]:
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}; choose from {FAULTS}")
    checks = vortex_checks(fault)
    for name, suite in SUITES.items():
        if name != "vortex_core":
            checks.extend(suite())
    return checks
