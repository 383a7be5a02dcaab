"""Certified U_p slopes on overconvergent forms for a range of weights.

    python3 scripts/slopes_table.py --p 5 --weights 0,4,8,12,16 --A 8 --N 6
"""

import argparse
import time

from padicmf.overconvergent import classical_slopes, slopes


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--weights", default="0,4,8,12,16,20,24")
    ap.add_argument("--A", type=int, default=8)
    ap.add_argument("--M", type=int, default=None, help="q-adic order (default 25 * (A + 1))")
    ap.add_argument("--N", type=int, default=6)
    args = ap.parse_args()

    print(f"p = {args.p}, A = {args.A}, N = {args.N}")
    print(f"{'k':>4}  {'bound':>6}  {'certified slopes (mult)':<32}  {'classical (level 1)':<24}  time")
    for k in (int(w) for w in args.weights.split(",")):
        t = time.perf_counter()
        M = args.M or 25 * (args.A + 1)
        rep = slopes(k, args.p, args.A, M, args.N)
        poly = rep.polygon
        cert = ", ".join(f"{s}({m})" for s, m in poly.slopes) or "-"
        try:
            cls = ", ".join(str(s) for s in classical_slopes(k, args.p)) or "-"
        except Exception as exc:  # weights without a classical cusp space
            cls = type(exc).__name__
        print(f"{k:>4}  {str(poly.certified_bound):>6}  {cert:<32}  {cls:<24}  {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
