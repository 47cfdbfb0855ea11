"""Reproduce the x^4 + y^4 = 1 example over F_5 and print the mu values,
gamma classes and the adelic construction from P_f and the twin point."""
import argparse

from frobdescent.adelic import check_survival, construct_unobstructed, trichotomy_report
from frobdescent.curves import places_up_to
from frobdescent.descent import mu_sym2
from frobdescent.differentials import holomorphic_basis
from frobdescent.quartic import example_quartic
from frobdescent.symsq import classify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--places", type=int, default=2)
    args = ap.parse_args()

    ex = example_quartic(args.p)
    print("basis:", ", ".join(holomorphic_basis(ex.C).labels()))
    for name in ("P_f", "P_g", "P_g_twin", "P_h"):
        P = getattr(ex, name)
        lab = classify(P)
        print(f"{P.name:5s} mu = {mu_sym2(P).comps}  {lab}  gamma = {lab.gamma.constant_point()}")

    x = construct_unobstructed(ex.P_f, ex.P_g_twin, places_up_to(ex.D, args.places))
    cert = check_survival(x, mu_sym2(ex.P_f))
    rep = trichotomy_report(x, cert, ex.D)
    print(f"adelic point over {len(x.places)} places: survival {cert.passed}, outcome {rep.outcome}")
    for line in rep.details:
        print("  ", line)


if __name__ == "__main__":
    main()
