"""Helicoidal vortex rings and vortex balls.

A point on the ring winds around the tube (radius ``a0``) at ``omega0`` while
the tube centre revolves around the z-axis at radius ``b1`` with ``omega1``.
With ``b1 = 0`` the curve lies on a sphere of radius ``a0`` (the vortex ball).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

TWO_PI = 2 * math.pi
RATIONAL_TOL = 1e-9
MAX_DENOMINATOR = 64
DEFAULT_SAMPLES = 4096


class NonClosingLoopError(ValueError):
    pass


class LoopsCoincideError(ValueError):
    pass


@dataclass(frozen=True)
class RingParams:
    a0: float = 1.0
    b1: float = 0.0
    omega0: float = 1.0
    omega1: float = 1.0
    phi0: float = 0.0
    phi1: float = 0.0

    def __post_init__(self):
        for name in ("a0", "b1", "omega0", "omega1", "phi0", "phi1"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.a0 <= 0:
            raise ValueError("a0 must be positive")
        if self.b1 < 0:
            raise ValueError("b1 must be nonnegative")
        if self.omega0 == 0 and self.omega1 == 0:
            raise ValueError("omega0 and omega1 cannot both vanish")
        object.__setattr__(self, "phi0", self.phi0 % TWO_PI)
        object.__setattr__(self, "phi1", self.phi1 % TWO_PI)


@dataclass(frozen=True)
class LoopClass:
    """``tag`` is one of degenerate, n_associated, closed, non_closing.

    ``closed`` covers rational ratios ``omega1/omega0 = p/q`` with ``|p| != 1``.
    """

    tag: str
    n: int | None = None
    ratio: Fraction | None = None


@dataclass(frozen=True)
class IntersectionPoint:
    t1: float
    t2: float
    point: np.ndarray
    gap: float


@dataclass(frozen=True)
class SummaryVelocity:
    v_star: np.ndarray
    v_plus: np.ndarray
    v_minus: np.ndarray


@dataclass(frozen=True)
class LoopSamples:
    times: np.ndarray
    points: np.ndarray
    closed: bool


def ring_position(t, p: RingParams) -> np.ndarray:
    """Point(s) on the ring, shape ``(..., 3)``."""
    t = np.asarray(t, dtype=float)
    a = p.omega0 * t + p.phi0
    b = p.omega1 * t + p.phi1
    rho = p.b1 + p.a0 * np.cos(a)
    return np.stack([rho * np.cos(b), rho * np.sin(b), p.a0 * np.sin(a)], axis=-1)


def ring_velocity(t, p: RingParams) -> np.ndarray:
    """Analytic time derivative of :func:`ring_position`."""
    t = np.asarray(t, dtype=float)
    a = p.omega0 * t + p.phi0
    b = p.omega1 * t + p.phi1
    sa, ca = np.sin(a), np.cos(a)
    sb, cb = np.sin(b), np.cos(b)
    vx = -p.a0 * p.omega0 * sa * cb - p.a0 * p.omega1 * ca * sb - p.b1 * p.omega1 * sb
    vy = -p.a0 * p.omega0 * sa * sb + p.a0 * p.omega1 * ca * cb + p.b1 * p.omega1 * cb
    vz = p.a0 * p.omega0 * ca
    return np.stack([vx, vy, vz], axis=-1)


def classify_loop(p: RingParams) -> LoopClass:
    if p.omega0 == 0:
        return LoopClass("degenerate")
    ratio = p.omega1 / p.omega0
    frac = Fraction(ratio).limit_denominator(MAX_DENOMINATOR)
    if abs(ratio - float(frac)) > RATIONAL_TOL * max(1.0, abs(ratio)):
        return LoopClass("non_closing")
    if abs(frac.numerator) == 1:
        return LoopClass("n_associated", n=frac.denominator, ratio=frac)
    return LoopClass("closed", ratio=frac)


def loop_period(p: RingParams) -> float | None:
    """Smallest closing time of the curve, or None when it never closes."""
    cls = classify_loop(p)
    if cls.tag == "degenerate":
        return TWO_PI / abs(p.omega1)
    if cls.tag == "non_closing":
        return None
    return TWO_PI * cls.ratio.denominator / abs(p.omega0)


def _require_period(p: RingParams) -> float:
    period = loop_period(p)
    if period is None:
        raise NonClosingLoopError(
            f"omega1/omega0 = {p.omega1 / p.omega0!r} is not a rational with denominator <= {MAX_DENOMINATOR}"
        )
    return period


def sample_loop(p: RingParams, count: int) -> LoopSamples:
    """``count`` points at uniform parameter spacing over one period.

    Non-closing curves are sampled over ``[0, 2 pi / omega1)`` and flagged.
    """
    if count < 2:
        raise ValueError("count must be at least 2")
    period = loop_period(p)
    closed = period is not None
    span = period if closed else TWO_PI / abs(p.omega1 or p.omega0)
    times = span * np.arange(count) / count
    return LoopSamples(times=times, points=ring_position(times, p), closed=closed)


def _max_speed(p: RingParams) -> float:
    return p.a0 * abs(p.omega0) + (p.a0 + p.b1) * abs(p.omega1)


def _circular_sep(t1, t2, period):
    d = np.mod(t1 - t2, period)
    return np.minimum(d, period - d)


def _candidate_pairs(ta, pa_pts, tb, pb_pts, thresh, same, band):
    """Index pairs whose sampled points lie within ``thresh``."""
    sq_b = np.einsum("ij,ij->i", pb_pts, pb_pts)
    n_b = len(tb)
    out_i, out_j = [], []
    block = 512
    for i0 in range(0, len(ta), block):
        blk = pa_pts[i0 : i0 + block]
        d2 = np.einsum("ij,ij->i", blk, blk)[:, None] + sq_b[None, :] - 2 * blk @ pb_pts.T
        mask = d2 < thresh**2
        if same:
            ii = np.arange(i0, i0 + len(blk))[:, None]
            jj = np.arange(n_b)[None, :]
            k = jj - ii
            mask &= (k > band) & (n_b - k > band)
        i, j = np.nonzero(mask)
        out_i.append(i + i0)
        out_j.append(j)
    return np.concatenate(out_i), np.concatenate(out_j)


def _refine(t1, t2, pa, pb, iters=60):
    """Damped Gauss-Newton on ``pos_a(t1) - pos_b(t2) = 0``, vectorised over candidates."""
    t1 = t1.astype(float).copy()
    t2 = t2.astype(float).copy()

    def resid(u, w):
        f = ring_position(u, pa) - ring_position(w, pb)
        return f, np.einsum("ij,ij->i", f, f)

    f, r2 = resid(t1, t2)
    for _ in range(iters):
        va = ring_velocity(t1, pa)
        vb = -ring_velocity(t2, pb)
        a11 = np.einsum("ij,ij->i", va, va)
        a22 = np.einsum("ij,ij->i", vb, vb)
        a12 = np.einsum("ij,ij->i", va, vb)
        g1 = np.einsum("ij,ij->i", va, f)
        g2 = np.einsum("ij,ij->i", vb, f)
        mu = 1e-12 * (a11 + a22)
        a11 = a11 + mu
        a22 = a22 + mu
        det = a11 * a22 - a12 * a12
        d1 = -(a22 * g1 - a12 * g2) / det
        d2 = -(a11 * g2 - a12 * g1) / det
        done = np.zeros(len(t1), dtype=bool)
        step = 1.0
        for _ in range(12):
            n1, n2 = t1 + step * d1, t2 + step * d2
            nf, nr2 = resid(n1, n2)
            ok = ~done & (nr2 < r2)
            t1 = np.where(ok, n1, t1)
            t2 = np.where(ok, n2, t2)
            f = np.where(ok[:, None], nf, f)
            r2 = np.where(ok, nr2, r2)
            done |= ok
            if done.all():
                break
            step *= 0.5
        if not done.any() or np.all(r2 == 0):
            break
    return t1, t2, np.sqrt(r2)


def _canonical(t, period):
    t = np.mod(t, period)
    near_zero = (t < 1e-12 * period) | (period - t < 1e-12 * period)
    return np.where(near_zero, 0.0, t)


def _sin_angle(u, v):
    cross = np.linalg.norm(np.cross(u, v), axis=-1)
    norms = np.linalg.norm(u, axis=-1) * np.linalg.norm(v, axis=-1)
    return np.where(norms > 0, cross / np.where(norms > 0, norms, 1.0), 0.0)


def _search(pa, pb, tol, samples, same, exclude_axis):
    per_a = _require_period(pa)
    per_b = _require_period(pb)
    if tol is None:
        tol = 1e-10 * max(pa.a0, pb.a0)
    ta = per_a * np.arange(samples) / samples
    tb = per_b * np.arange(samples) / samples
    pts_a = ring_position(ta, pa)
    pts_b = ring_position(tb, pb)
    ds = max(_max_speed(pa) * per_a, _max_speed(pb) * per_b) / samples
    band = max(1, samples // 1000)
    i, j = _candidate_pairs(ta, pts_a, tb, pts_b, 2 * ds, same, band)
    if i.size == 0:
        return []
    t1, t2, gap = _refine(ta[i], tb[j], pa, pb)
    t1 = _canonical(t1, per_a)
    t2 = _canonical(t2, per_b)
    keep = gap <= tol
    if same:
        keep &= _circular_sep(t1, t2, per_a) > per_a / 1000
    # tangential contacts are touching passes, not crossings
    keep &= _sin_angle(ring_velocity(t1, pa), ring_velocity(t2, pb)) > 1e-6
    pts = ring_position(t1, pa)
    if exclude_axis:
        keep &= np.hypot(pts[:, 0], pts[:, 1]) > 10 * tol
    order = np.argsort(gap[keep], kind="stable")
    t1, t2, gap, pts = t1[keep][order], t2[keep][order], gap[keep][order], pts[keep][order]

    found: list[IntersectionPoint] = []
    for k in range(len(t1)):
        if any(np.linalg.norm(pts[k] - q.point) < 10 * tol for q in found):
            continue
        u, w = float(t1[k]), float(t2[k])
        if same and u > w:
            u, w = w, u
        found.append(IntersectionPoint(u, w, pts[k].copy(), float(gap[k])))
    found.sort(key=lambda q: (q.t1, q.t2))
    return found


def find_self_intersections(
    p: RingParams,
    tol: float | None = None,
    samples: int = DEFAULT_SAMPLES,
    exclude_axis: bool = True,
) -> list[IntersectionPoint]:
    """Points where distinct passes of one closed loop cross.

    Candidates come from a dense scan of pairwise sample distances over the
    parameter torus, excluding the band ``|t1 - t2| < T/1000``, and are polished
    by damped Gauss-Newton.  Tangential touches are dropped, and so are
    crossings on the z-axis unless ``exclude_axis`` is False: there the
    revolution angle is undefined and every pole pass lands on the same point.
    ``tol`` defaults to ``1e-10 * a0``.
    """
    if samples < DEFAULT_SAMPLES:
        raise ValueError(f"samples must be at least {DEFAULT_SAMPLES}")
    return _search(p, p, tol, samples, True, exclude_axis)


def _loops_coincide(pa: RingParams, pb: RingParams, tol: float) -> bool:
    if pa == pb:
        return True
    per_a = _require_period(pa)
    per_b = _require_period(pb)
    ta = per_a * np.arange(DEFAULT_SAMPLES) / DEFAULT_SAMPLES
    pts_a = ring_position(ta, pa)
    probe_t = per_b * np.arange(64) / 64
    probe = ring_position(probe_t, pb)
    nearest = np.argmin(
        np.linalg.norm(probe[:, None, :] - pts_a[None, :, :], axis=-1), axis=1
    )
    t = ta[nearest]
    for _ in range(30):
        f = ring_position(t, pa) - probe
        v = ring_velocity(t, pa)
        vv = np.einsum("ij,ij->i", v, v)
        t = t - np.einsum("ij,ij->i", v, f) / np.where(vv > 0, vv, 1.0)
    gap = np.linalg.norm(ring_position(t, pa) - probe, axis=-1)
    return bool(np.all(gap <= tol))


def find_pair_intersections(
    pa: RingParams,
    pb: RingParams,
    tol: float | None = None,
    samples: int = DEFAULT_SAMPLES,
    exclude_axis: bool = True,
) -> list[IntersectionPoint]:
    """Crossings between two distinct closed loops; ``t1`` is on ``pa``, ``t2`` on ``pb``."""
    if samples < DEFAULT_SAMPLES:
        raise ValueError(f"samples must be at least {DEFAULT_SAMPLES}")
    tol_eff = 1e-10 * max(pa.a0, pb.a0) if tol is None else tol
    if _loops_coincide(pa, pb, tol_eff):
        raise LoopsCoincideError("loops coincide")
    return _search(pa, pb, tol_eff, samples, False, exclude_axis)


def summary_velocity(pa: RingParams, pb: RingParams, ip: IntersectionPoint) -> SummaryVelocity:
    v_plus = ring_velocity(ip.t1, pa)
    v_minus = ring_velocity(ip.t2, pb)
    return SummaryVelocity(v_star=v_plus + v_minus, v_plus=v_plus, v_minus=v_minus)

