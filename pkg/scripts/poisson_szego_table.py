"""Poisson-Szego expansion coefficients S(r) and reconstruction error against the cutoff.

    python3 scripts/poisson_szego_table.py --n 2 --r 0.3 0.5 0.7 --max 4
"""
import argparse

import numpy as np

from czonal import expansion as ex
from czonal.verify import disc_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--r", type=float, nargs="+", default=[0.3, 0.5, 0.7, 0.9, 1.0])
    ap.add_argument("--max", type=int, default=4, help="largest p and q in the coefficient table")
    ap.add_argument("--cutoffs", type=int, nargs="+", default=[10, 20, 40])
    args = ap.parse_args()

    print("# coefficients")
    print("r,p,q,S")
    for r in args.r:
        for p in range(args.max + 1):
            for q in range(args.max + 1):
                print(f"{r},{p},{q},{ex.poisson_szego_coefficient(r, p, q, args.n)!r}")

    print("# reconstruction error on the disc grid")
    print("r,L,max_abs_err")
    w = disc_grid(50)
    for r in args.r:
        if r >= 1:
            continue
        exact = ex.poisson_szego_closed_form(r, w, args.n)
        for L in args.cutoffs:
            err = np.max(np.abs(ex.poisson_szego_reconstruct(r, w, args.n, L) - exact))
            print(f"{r},{L},{err:.3e}")


if __name__ == "__main__":
    main()
