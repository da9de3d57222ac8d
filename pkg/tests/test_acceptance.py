"""Acceptance criteria 1-10, each with its numeric tolerance and runtime budget.

One PASS/FAIL line per criterion is printed in the pytest terminal summary.
"""

import math
import time

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from conftest import record_acceptance
from vortexball import field_verify as fv
from vortexball import moment as mm
from vortexball import ring_geometry as rg
from vortexball import spin_dynamics as sd
from vortexball import vortex_core as vc


def timed(fn, repeats=1):
    """Return (result, best wall time in seconds)."""
    best, out = math.inf, None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def test_criterion_01_wall_constant():
    wall, secs = timed(vc.solve_wall_constant, repeats=5)
    residual = abs(math.log(2 * wall.a0 + 1) - wall.a0)
    ok = round(wall.a0, 4) == 1.2564 and residual <= 1e-12 and secs < 1e-3
    record_acceptance(1, "wall constant", ok, f"a0={wall.a0:.12f} residual={residual:.1e} time={secs * 1e3:.3f} ms")
    assert round(wall.a0, 4) == 1.2564
    assert residual <= 1e-12
    assert secs < 1e-3


def _numeric_core_radius(t, p):
    sig = float(vc.sigma_at(t, p))
    s = math.sqrt(sig)
    res = minimize_scalar(
        lambda r: -vc.velocity_at(r, t, p),
        bounds=(0.5 * s, 5.0 * s),
        method="bounded",
        options={"xatol": 1e-12 * s},
    )
    return res.x


def test_criterion_02_core_radius_brute_force():
    rng = np.random.default_rng(2)
    draws = [
        vc.VortexParams(1.0, rng.uniform(0.1, 5), rng.uniform(0.3, 20), rng.uniform(1.5, 32))
        for _ in range(20)
    ]
    times = [rng.uniform(-5, 5) * p.period for p in draws]

    def run():
        return max(abs(vc.core_radius_at(t, p) / _numeric_core_radius(t, p) - 1) for p, t in zip(draws, times))

    worst, secs = timed(run)
    ok = worst <= 1e-6 and secs < 1.0
    record_acceptance(2, "core radius vs argmax", ok, f"max rel dev={worst:.2e} over 20 draws, time={secs:.3f} s")
    assert worst <= 1e-6
    assert secs < 1.0


def test_criterion_03_quadrature_identity():
    p = vc.FIG2_PARAMS

    def run():
        worst = 0.0
        for t in np.linspace(0, p.period, 5):
            s = math.sqrt(float(vc.sigma_at(t, p)))
            for r in np.linspace(0.1, 6.0, 10) * s:
                val, _ = quad(lambda x: vc.vorticity_at(x, t, p) * x, 0, r, epsabs=1e-14, epsrel=1e-13)
                worst = max(worst, abs(val / r - vc.velocity_at(r, t, p)))
        return worst / abs(p.gamma)

    worst, secs = timed(run)
    ok = worst <= 1e-8 and secs < 1.0
    record_acceptance(3, "quadrature identity", ok, f"max |dv|/gamma={worst:.2e}, time={secs:.3f} s")
    assert worst <= 1e-8
    assert secs < 1.0


def test_criterion_04_pde_residual():
    p = vc.FIG2_PARAMS
    grid = np.linspace(0.1, 8.0, 80)

    def run():
        coarse = fv.pde_residual(p, grid, 0.37, 1e-3, 1e-3).normalized
        fine = fv.pde_residual(p, grid, 0.37, 5e-4, 5e-4).normalized
        return coarse, fine

    (coarse, fine), secs = timed(run)
    ratio = coarse / fine
    ok = coarse <= 1e-4 and 3.5 <= ratio <= 4.5 and secs < 5.0
    record_acceptance(4, "PDE residual", ok, f"residual={coarse:.2e} ratio={ratio:.4f}, time={secs:.3f} s")
    assert coarse <= 1e-4
    assert 3.5 <= ratio <= 4.5
    assert secs < 5.0


def test_criterion_05_spectral_oracle():
    p = vc.FIG2_PARAMS
    radii = np.linspace(0, 40, 4001)
    init = vc.sample_radial_field("vorticity", radii, 0.0, p)

    def run():
        c0 = fv.profile_circulation(init)
        sup = circ = 0.0
        for t1 in np.arange(1, 11) * p.period / 10:
            out = fv.spectral_evolve(init, p, t1)
            exact = vc.sample_radial_field("vorticity", radii, t1, p)
            sup = max(sup, fv.compare_profiles(out, exact).rel_peak)
            circ = max(circ, abs(fv.profile_circulation(out) / c0 - 1))
        return sup, circ

    (sup, circ), secs = timed(run)
    ok = sup <= 1e-6 and circ <= 1e-6 and secs < 5.0
    record_acceptance(5, "spectral oracle", ok, f"sup/peak={sup:.2e} circulation={circ:.2e}, time={secs:.3f} s")
    assert sup <= 1e-6
    assert circ <= 1e-6
    assert secs < 5.0


def test_criterion_06_loop_combinatorics():
    a0 = 4.0

    def run():
        return [rg.find_self_intersections(rg.RingParams(a0=a0, omega0=1.0, omega1=1.0 / n)) for n in (1, 2, 3)]

    found, secs = timed(run)
    counts = [len(f) for f in found]
    z_max = max(abs(ip.point[2]) for f in (found[0], found[2]) for ip in f) / a0
    ok = counts == [1, 0, 3] and z_max <= 1e-8 and secs < 5.0
    record_acceptance(6, "loop combinatorics", ok, f"counts={counts} max|z|/a0={z_max:.1e}, time={secs:.3f} s")
    assert counts == [1, 0, 3]
    assert z_max <= 1e-8
    assert secs < 5.0


def test_criterion_07_summary_velocity():
    pa = rg.RingParams(a0=1.0, b1=0.0, omega0=1.0, omega1=0.5)
    pb = rg.RingParams(a0=1.0, b1=0.0, omega0=1.0, omega1=0.5, phi1=math.pi / 2)

    def run():
        pts = rg.find_pair_intersections(pa, pb)
        return pts, [rg.summary_velocity(pa, pb, ip).v_star for ip in pts]

    (pts, vels), secs = timed(run)
    vz = max(abs(v[2]) / np.linalg.norm(v) for v in vels)
    radial = max(abs(v[0] * ip.point[0] + v[1] * ip.point[1]) / (np.linalg.norm(v) * np.hypot(*ip.point[:2]))
                 for v, ip in zip(vels, pts))
    ok = len(pts) > 0 and vz <= 1e-6 and radial <= 1e-6 and secs < 2.0
    record_acceptance(
        7, "summary velocity", ok, f"{len(pts)} crossings, |v_z|/|v|={vz:.1e} radial/|v|={radial:.1e}, time={secs:.3f} s"
    )
    assert len(pts) > 0
    assert vz <= 1e-6
    assert radial <= 1e-6
    assert secs < 2.0


def test_criterion_08_spinor_double_cover():
    rng = np.random.default_rng(8)

    def run():
        flip = back = norm = 0.0
        for _ in range(5):
            drive = sd.DriveField(*rng.normal(size=3))
            vec = rng.normal(size=2) + 1j * rng.normal(size=2)
            vec /= np.linalg.norm(vec)
            psi = sd.Spinor(complex(vec[0]), complex(vec[1]))
            t_half = sd.bloch_rotation_time(drive, 2 * math.pi)
            tr = sd.evolve_spinor(psi, drive, (0.0, 2 * t_half), 200)
            flip = max(flip, np.max(np.abs(tr.spinors[100] + vec)))
            back = max(back, np.max(np.abs(tr.spinors[200] - vec)))
            norm = max(norm, np.max(np.abs(tr.norms - 1)))
        return flip, back, norm

    (flip, back, norm), secs = timed(run)
    ok = flip <= 1e-9 and back <= 1e-9 and norm <= 1e-9 and secs < 1.0
    record_acceptance(
        8, "spinor double cover", ok, f"|psi(2pi)+psi0|={flip:.1e} |psi(4pi)-psi0|={back:.1e} norm={norm:.1e}, time={secs:.3f} s"
    )
    assert flip <= 1e-9
    assert back <= 1e-9
    assert norm <= 1e-9
    assert secs < 1.0


def test_criterion_09_moment_values():
    c = mm.PhysConstants.quoted()

    def run():
        return (
            mm.schwinger_mu(c),
            mm.sommerfield_mu(c),
            mm.continued_fraction_mu(mm.FractionSpec(18), c).value,
            mm.continued_fraction_mu(mm.FractionSpec(6), c).value,
        )

    (sch, som, f18, f6), secs = timed(run, repeats=5)
    errs = [
        abs(sch / mm.QUOTED_SCHWINGER - 1),
        abs(som / mm.QUOTED_SOMMERFIELD - 1),
        abs(f18 / mm.QUOTED_FRACTION_18 - 1),
        abs(f6 / mm.QUOTED_FRACTION_6 - 1),
    ]
    bounds = [1e-5, 1e-6, 1e-6, 1e-6]
    ok = all(e <= b for e, b in zip(errs, bounds)) and secs < 1e-3
    record_acceptance(
        9, "moment values", ok,
        "rel errs " + " ".join(f"{e:.1e}" for e in errs) + f", time={secs * 1e3:.3f} ms",
    )
    for e, b in zip(errs, bounds):
        assert e <= b
    assert secs < 1e-3


def test_criterion_10_limiting_index():
    s = mm.PhysConstants.standard_tables()

    def run():
        return mm.term_growth(6, s), mm.term_growth(7, s), mm.limiting_index(s)

    (g6, g7, idx), secs = timed(run, repeats=5)
    ok = 0.8 < g6 < 1.0 and g7 > 1.0 and idx == 6 and secs < 1e-3
    record_acceptance(10, "term growth cutoff", ok, f"6!a/2pi={g6:.4f} 7!a/2pi={g7:.4f} limit={idx}, time={secs * 1e3:.3f} ms")
    assert 0.8 < g6 < 1.0
    assert g7 > 1.0
    assert idx == 6
    assert secs < 1e-3


@pytest.mark.parametrize("preset", ["quoted", "standard_tables"])
def test_limiting_index_same_for_both_presets(preset):
    assert mm.limiting_index(mm.PhysConstants.preset(preset)) == 6
