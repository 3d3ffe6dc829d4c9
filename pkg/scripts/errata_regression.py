"""Compare a known-wrong decomposition-of-unity formula with the correct gamma sum.

The wrong formula takes (m, q, n) meaning bidegree (m, n) on C^q, so the
matching correct sum is over gamma_coefficient(m, n, k, q).

    python3 scripts/errata_regression.py --max 4
"""
import argparse

from czonal import zonal as zn
from czonal.errata import erroneous_unity_sum


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=4)
    args = ap.parse_args()
    print("m,q,n,erroneous_sum,correct_sum")
    for q in range(2, 5):
        for m in range(args.max + 1):
            for n in range(args.max + 1):
                right = sum(zn.gamma_coefficient(m, n, k, q) for k in range(min(m, n) + 1))
                print(f"{m},{q},{n},{erroneous_unity_sum(m, q, n)},{right}")


if __name__ == "__main__":
    main()
