"""Scan cutoff and theta for the truncated torus triple.

Prints the isometry residuals, ||[D, pi(u)]|| and ||[D, pi(v)]|| on the
valid window, and the torus-relation residual. The norms should sit at 1
for every theta; a drift with N would mean the window is leaking.

    python3 scripts/spectral_scan.py --cutoffs 4 8 16 --thetas 0 1/5 1/3 2/7
"""

import argparse
from fractions import Fraction

from isotwist.parsing import fixture_path, load_presentation
from isotwist.spectral import SpectralModel, check_isometry, check_torus_relation, commutator_norm


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cutoffs", type=int, nargs="+", default=[4, 8, 16])
    ap.add_argument("--thetas", type=Fraction, nargs="+", default=[Fraction(0), Fraction(1, 5), Fraction(1, 3)])
    args = ap.parse_args()

    p = load_presentation(fixture_path("T2.alg")).source
    u, v = p.gen("u"), p.gen("v")
    print(f"{'N':>3} {'theta':>6} {'iso':>8} {'|[D,u]|':>18} {'|[D,v]|':>18} {'torus':>9}")
    for theta in args.thetas:
        for n in args.cutoffs:
            model = SpectralModel(p, n, theta)
            iso = max(r.residual for r in check_isometry(model) if "negative" not in r.id)
            torus = check_torus_relation(model)[0].residual
            nu, nv = commutator_norm(model, u), commutator_norm(model, v)
            print(f"{n:>3} {str(theta):>6} {iso:>8.1e} {nu:>18.15f} {nv:>18.15f} {torus:>9.1e}")


if __name__ == "__main__":
    main()
