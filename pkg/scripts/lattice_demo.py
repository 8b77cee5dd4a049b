#!/usr/bin/env python3
"""Walk the blow-up lattices and print the counting data behind the bounds.

For each number of blown-up points d the script builds the optimality
configuration on both base surfaces, partitions the degree-zero classes,
and reports the Picard rank, the attained count against the applicable
bound, the Hodge signature, and the chain-length bound for the negative
part.  A second table shows the brute-force extremal counts for families
of pairwise non-positive (resp. negative) directions in dimensions 1..3.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from nefcert.lattice import (
    P1XP1,
    P2,
    exceptional_curves,
    hodge_signature,
    l_equivalence_bound,
    rankin_extremal_search,
    standard_example,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dmax", type=int, default=6, help="largest point count")
    args = ap.parse_args()

    print(f"{'base':8} {'d':>2} {'rho':>3} {'negative':>8} {'bound':>5} "
          f"{'signature':>9} {'chain':>5}")
    for base in (P1XP1, P2):
        for d in range(1, args.dmax + 1):
            lat, ref, curves = standard_example(base, d)
            part = exceptional_curves(lat, ref, curves)
            sig = hodge_signature(lat)
            chain = l_equivalence_bound(lat, part.negative, ref)
            star = " *" if len(part.negative) == part.bound else ""
            print(f"{base:8} {d:>2} {part.rho:>3} {len(part.negative):>8} "
                  f"{part.bound:>5} {str(sig):>9} {chain:>5}{star}")
    print()
    print("extremal direction families (exhaustive grid search):")
    print(f"{'dim':>3} {'non-strict':>10} {'2*dim':>5} {'strict':>6} {'dim+1':>5}")
    for dim in (1, 2, 3):
        loose = rankin_extremal_search(dim, strict=False)
        strict = rankin_extremal_search(dim, strict=True)
        print(f"{dim:>3} {loose:>10} {2 * dim:>5} {strict:>6} {dim + 1:>5}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
