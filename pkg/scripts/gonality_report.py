"""Print the g^1_d report (d = 2, 3, 4) for a curve file or the Fermat quartic."""
import argparse

from frobdescent.curves import parse_curve
from frobdescent.quartic import fermat_quartic
from frobdescent.secant import has_g1d


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("curve", nargs="?")
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--places", type=int, default=2)
    args = ap.parse_args()
    C = parse_curve(open(args.curve).read(), args.curve) if args.curve else fermat_quartic(args.p)
    for d in (2, 3, 4):
        print(has_g1d(C, d, args.places).to_text())


if __name__ == "__main__":
    main()
