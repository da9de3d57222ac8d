"""Term growth n! alpha/2pi and the continued fraction at every truncation depth.

    python3 scripts/moment_cutoff.py --preset standard_tables
"""

import argparse

from vortexball import moment as mm


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--preset", choices=("quoted", "standard_tables"), default="quoted")
    args = ap.parse_args()
    c = mm.PhysConstants.preset(args.preset)

    print(f"alpha = {c.alpha!r}  mu_B = {c.mu_b!r}")
    print("\n n   n! alpha/2pi")
    for n in range(1, 11):
        print(f"{n:>2}   {mm.term_growth(n, c):.6e}")
    print(f"limiting index: {mm.limiting_index(c)}")

    print("\ndepth   continued fraction      rel. to Schwinger")
    ref = mm.schwinger_mu(c)
    for k in mm.FractionSpec().factorial_args:
        v = mm.continued_fraction_mu(mm.FractionSpec(k), c).value
        print(f"{k:>5}   {v:.12e}   {v / ref - 1:+.3e}")
    print(f"\nSommerfield: {mm.sommerfield_mu(c):.12e}")


if __name__ == "__main__":
    main()
