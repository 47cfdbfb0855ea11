"""Compare l(D) from the adjoint evaluation matrix with the line-count
oracle over every effective divisor of a given degree on the quartic."""
import argparse
import sys
import time
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from frobdescent.curves import places_up_to  # noqa: E402
from frobdescent.quartic import fermat_quartic  # noqa: E402
from frobdescent.secant import effective_divisors, riemann_roch_dim  # noqa: E402
from oracles import rr_dim_oracle  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--places", type=int, default=2)
    args = ap.parse_args()

    C = fermat_quartic(args.p)
    pls = places_up_to(C, args.places)
    t0 = time.perf_counter()
    dims, bad = Counter(), 0
    for D in effective_divisors(pls, args.degree):
        l = riemann_roch_dim(C, D)
        dims[l] += 1
        bad += l != rr_dim_oracle(C, D)
    print(f"{sum(dims.values())} divisors of degree {args.degree}; l distribution {dict(sorted(dims.items()))}; "
          f"{bad} disagreements; {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
