"""Desk check of Gouvea-Mazur local constancy.

Compares d(k, alpha), the number of overconvergent slopes equal to alpha, at two
weights k, k2 with k = k2 mod (p-1)p^n.  Discrepancies are printed, not raised.

    python3 scripts/gouvea_mazur.py --p 5 --k 12 --k2 112 --alpha-max 1
"""

import argparse
import json
from fractions import Fraction

from padicmf.overconvergent import gouvea_mazur_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--k", type=int, default=12)
    ap.add_argument("--k2", type=int, default=112)
    ap.add_argument("--alpha-max", type=Fraction, default=Fraction(1))
    ap.add_argument("--A", type=int, default=8)
    ap.add_argument("--N", type=int, default=6)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    r = gouvea_mazur_report(args.k, args.k2, args.alpha_max, args.p, A=args.A, N=args.N)
    if args.json:
        print(json.dumps({k: v for k, v in r.items() if k != "reports"}, indent=2, default=str))
        return
    print(f"p = {r['p']}, k = {r['k']}, k2 = {r['k2']}, v_p(k - k2) = {r['v_p(k - k2)']}")
    print(f"slopes certified below {r['certified_slope_bound']}")
    for row in r["rows"]:
        print(f"  alpha = {row['alpha']:>4}:  d(k) = {row['d_k']}, d(k2) = {row['d_k2']}  {row['status']}")
    if r["discrepancies"]:
        print(f"{len(r['discrepancies'])} discrepancies")
    else:
        print("no discrepancy")


if __name__ == "__main__":
    main()
