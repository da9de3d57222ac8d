"""Self-intersection counts of n-associated vortex-ball loops for n = 1..N.

    python3 scripts/loop_intersections.py --max-n 7
"""

import argparse
import time

from vortexball import ring_geometry as rg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--a0", type=float, default=4.0)
    ap.add_argument("--with-axis", action="store_true", help="keep crossings on the z-axis")
    args = ap.parse_args()

    print(f"{'n':>3} {'count':>6} {'max |z|/a0':>12} {'seconds':>8}")
    for n in range(1, args.max_n + 1):
        p = rg.RingParams(a0=args.a0, omega0=1.0, omega1=1.0 / n)
        t0 = time.perf_counter()
        pts = rg.find_self_intersections(p, exclude_axis=not args.with_axis)
        dt = time.perf_counter() - t0
        z = max((abs(ip.point[2]) / args.a0 for ip in pts), default=0.0)
        print(f"{n:>3} {len(pts):>6} {z:>12.2e} {dt:>8.3f}")


if __name__ == "__main__":
    main()
