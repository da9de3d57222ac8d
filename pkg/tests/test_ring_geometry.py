import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vortexball import ring_geometry as rg

angles = st.floats(0, 2 * math.pi)
freqs = st.floats(-3, 3).filter(lambda w: abs(w) > 1e-2)
rings = st.builds(
    rg.RingParams, a0=st.floats(0.2, 5), b1=st.floats(0, 5), omega0=freqs, omega1=freqs, phi0=angles, phi1=angles
)


def test_position_at_origin_of_time():
    p = rg.RingParams(a0=2, b1=3, omega0=1, omega1=1)
    np.testing.assert_allclose(rg.ring_position(0.0, p), [5, 0, 0])
    assert rg.ring_position(np.zeros((4, 2)), p).shape == (4, 2, 3)


@given(rings, st.floats(-20, 20))
def test_torus_confinement(p, t):
    x, y, z = rg.ring_position(t, p)
    b = p.omega1 * t + p.phi1
    # offset from the tube centre circle, measured in the rotating meridian plane
    rho = x * math.cos(b) + y * math.sin(b)
    assert math.hypot(rho - p.b1, z) == pytest.approx(p.a0, rel=1e-12, abs=1e-12)


@given(rings.map(lambda p: rg.RingParams(p.a0, 0.0, p.omega0, p.omega1, p.phi0, p.phi1)), st.floats(-20, 20))
def test_ball_lies_on_sphere(p, t):
    assert np.linalg.norm(rg.ring_position(t, p)) == pytest.approx(p.a0, rel=1e-13)


@given(rings, st.floats(-10, 10))
def test_velocity_matches_finite_difference(p, t):
    h = 1e-6 / max(abs(p.omega0), abs(p.omega1))
    fd = (rg.ring_position(t + h, p) - rg.ring_position(t - h, p)) / (2 * h)
    v = rg.ring_velocity(t, p)
    assert np.linalg.norm(fd - v) <= 1e-7 * max(np.linalg.norm(v), 1.0)


@pytest.mark.parametrize(
    "omega1, tag, n",
    [(1.0, "n_associated", 1), (0.5, "n_associated", 2), (1 / 3, "n_associated", 3), (-0.25, "n_associated", 4),
     (2 / 3, "closed", None), (2.0, "closed", None), (math.sqrt(2), "non_closing", None)],
)
def test_classification(omega1, tag, n):
    c = rg.classify_loop(rg.RingParams(omega0=1.0, omega1=omega1))
    assert c.tag == tag and c.n == n


def test_degenerate_and_invalid():
    p = rg.RingParams(omega0=0.0, omega1=2.0)
    assert rg.classify_loop(p).tag == "degenerate"
    assert rg.loop_period(p) == pytest.approx(math.pi)
    for kw in (dict(a0=0), dict(b1=-1), dict(omega0=0, omega1=0), dict(phi0=math.inf)):
        with pytest.raises(ValueError):
            rg.RingParams(**kw)
    assert rg.RingParams(phi0=7.0).phi0 == pytest.approx(7.0 - 2 * math.pi)


@given(st.integers(1, 8), st.integers(1, 8), st.floats(0.3, 3), angles, angles)
def test_rational_loops_close(num, den, omega0, phi0, phi1):
    p = rg.RingParams(a0=1.5, b1=0.4, omega0=omega0, omega1=omega0 * num / den, phi0=phi0, phi1=phi1)
    period = rg.loop_period(p)
    frac = Fraction(num, den)
    assert period == pytest.approx(2 * math.pi * frac.denominator / omega0, rel=1e-12)
    np.testing.assert_allclose(rg.ring_position(period, p), rg.ring_position(0.0, p), atol=1e-10 * p.a0)


def test_irrational_loop_never_closes():
    p = rg.RingParams(omega0=1.0, omega1=math.sqrt(2))
    assert rg.loop_period(p) is None
    with pytest.raises(rg.NonClosingLoopError):
        rg.find_self_intersections(p)
    samples = rg.sample_loop(p, 16)
    assert not samples.closed and samples.points.shape == (16, 3)


def test_sample_loop():
    p = rg.RingParams(a0=2, b1=3, omega0=12, omega1=1)
    s = rg.sample_loop(p, 100)
    assert s.closed and s.times[0] == 0 and s.times[-1] < rg.loop_period(p)
    with pytest.raises(ValueError):
        rg.sample_loop(p, 1)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 0), (3, 3), (5, 5)])
def test_self_intersection_counts(n, count):
    p = rg.RingParams(a0=4.0, omega0=1.0, omega1=1.0 / n)
    pts = rg.find_self_intersections(p)
    assert len(pts) == count
    for ip in pts:
        assert abs(ip.point[2]) <= 1e-8 * p.a0
        assert ip.gap <= 1e-10 * p.a0
        assert ip.t1 < ip.t2
        np.testing.assert_allclose(rg.ring_position(ip.t1, p), rg.ring_position(ip.t2, p), atol=1e-9)


def test_axis_points_appear_only_when_requested():
    p = rg.RingParams(a0=4.0, omega0=1.0, omega1=1 / 3)
    with_axis = rg.find_self_intersections(p, exclude_axis=False)
    assert len(with_axis) > 3
    extra = [ip for ip in with_axis if math.hypot(*ip.point[:2]) < 1e-6]
    assert extra and all(abs(abs(ip.point[2]) - 4.0) < 1e-6 for ip in extra)


def test_torus_with_wide_hole_has_no_self_crossings():
    p = rg.RingParams(a0=1.0, b1=3.0, omega0=5.0, omega1=1.0)
    assert rg.find_self_intersections(p) == []


@settings(max_examples=10)
@given(st.sampled_from([1, 3, 5]), angles)
def test_counts_invariant_under_rotation_phase(n, phi1):
    p = rg.RingParams(a0=2.0, omega0=1.0, omega1=1.0 / n, phi1=phi1)
    assert len(rg.find_self_intersections(p)) == n


def test_search_is_deterministic():
    p = rg.RingParams(a0=4.0, omega0=1.0, omega1=1 / 3)
    a = rg.find_self_intersections(p)
    b = rg.find_self_intersections(p)
    assert [(q.t1, q.t2) for q in a] == [(q.t1, q.t2) for q in b]


def test_samples_floor():
    with pytest.raises(ValueError):
        rg.find_self_intersections(rg.RingParams(), samples=100)


def test_pair_intersections_and_summary_velocity():
    pa = rg.RingParams(a0=1.0, omega0=1.0, omega1=0.5)
    pb = rg.RingParams(a0=1.0, omega0=1.0, omega1=0.5, phi1=math.pi / 2)
    pts = rg.find_pair_intersections(pa, pb)
    assert len(pts) == 4
    for ip in pts:
        np.testing.assert_allclose(rg.ring_position(ip.t1, pa), rg.ring_position(ip.t2, pb), atol=1e-9)
        sv = rg.summary_velocity(pa, pb, ip)
        np.testing.assert_allclose(sv.v_star, sv.v_plus + sv.v_minus)
        speed = np.linalg.norm(sv.v_star)
        assert abs(sv.v_star[2]) <= 1e-6 * speed
        assert abs(np.dot(sv.v_star[:2], ip.point[:2])) <= 1e-6 * speed


def test_identical_or_retraced_loops_coincide():
    p = rg.RingParams(a0=1.0, omega0=1.0, omega1=0.5)
    with pytest.raises(rg.LoopsCoincideError):
        rg.find_pair_intersections(p, p)
    # a time shift retraces the same curve
    t_shift = 0.7
    shifted = rg.RingParams(a0=1.0, omega0=1.0, omega1=0.5, phi0=t_shift, phi1=0.5 * t_shift)
    with pytest.raises(rg.LoopsCoincideError):
        rg.find_pair_intersections(p, shifted)


@settings(max_examples=12)
@given(st.floats(0.1, math.pi - 0.1))
def test_summary_velocity_follows_latitudes_for_any_shift(shift):
    pa = rg.RingParams(a0=1.0, omega0=1.0, omega1=0.5)
    pb = rg.RingParams(a0=1.0, omega0=1.0, omega1=0.5, phi1=shift)
    pts = rg.find_pair_intersections(pa, pb)
    assert pts
    senses = set()
    for ip in pts:
        v = rg.summary_velocity(pa, pb, ip).v_star
        speed = np.linalg.norm(v)
        assert abs(v[2]) <= 1e-6 * speed
        assert abs(np.dot(v[:2], ip.point[:2])) <= 1e-6 * speed
        senses.add(np.sign(np.cross(ip.point, v)[2]))
    assert len(senses) == 1
