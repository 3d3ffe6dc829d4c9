"""Truncation error of the plane-wave expansion exp(i r Re w) against the cutoff L.

    python3 scripts/plane_wave_convergence.py --r 1 2 5 --n 2 3 --max 40
"""
import argparse

import numpy as np

from czonal import expansion as ex
from czonal.verify import disc_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r", type=float, nargs="+", default=[1.0, 2.0, 5.0])
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--max", type=int, default=40)
    ap.add_argument("--step", type=int, default=5)
    ap.add_argument("--points", type=int, default=50)
    args = ap.parse_args()

    w = disc_grid(args.points)
    print("n,r,L,max_abs_err")
    for n in args.n:
        for r in args.r:
            target = np.exp(1j * r * w.real)
            full = ex.plane_wave_table(r, n, args.max)
            for L in range(0, args.max + 1, args.step):
                # truncating the full table is the same as building a smaller one
                sub = ex.ExpansionTable(n, L, {pq: c for pq, c in full.coeffs.items() if sum(pq) <= L}, {})
                err = np.max(np.abs(ex.evaluate_expansion(sub, w) - target))
                print(f"{n},{r},{L},{err:.3e}")


if __name__ == "__main__":
    main()
