"""Error of the Fourier-Bessel evolver against the closed form as the mode count grows.

    python3 scripts/spectral_convergence.py
"""

import argparse

import numpy as np

from vortexball import field_verify as fv
from vortexball import vortex_core as vc


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t1", type=float, default=0.37)
    args = ap.parse_args()

    p = vc.FIG2_PARAMS
    radii = np.linspace(0, 40, 4001)
    init = vc.sample_radial_field("vorticity", radii, 0.0, p)
    exact = vc.sample_radial_field("vorticity", radii, args.t1, p)
    print(f"{'modes':>6} {'sup/peak':>10} {'circulation drift':>18}")
    c0 = fv.profile_circulation(init)
    for modes in (32, 64, 96, 128, 192, 256, 384):
        spec = fv.TransformEvolverSpec(modes=modes, nodes=max(2048, 2 * modes))
        try:
            out = fv.spectral_evolve(init, p, args.t1, spec)
        except ValueError as exc:
            print(f"{modes:>6}   {exc}")
            continue
        err = fv.compare_profiles(out, exact).rel_peak
        drift = abs(fv.profile_circulation(out) / c0 - 1)
        print(f"{modes:>6} {err:>10.2e} {drift:>18.2e}")


if __name__ == "__main__":
    main()
