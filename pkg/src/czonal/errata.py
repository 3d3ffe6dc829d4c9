"""Known-incorrect formulas from the literature, kept as regression witnesses.

Nothing here is a usable API; these functions exist so tests can pin the
wrong value and show it differs from the correct one in :mod:`czonal.zonal`.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial as f


def erroneous_unity_sum(m: int, q: int, n: int) -> Fraction:
    """Decomposition-of-unity sum as printed by Menegatto, Peron and Oliveira.

    Their notation: bidegree ``(m, n)`` on the sphere of C^q.  The factor
    ``(m+n-2k+q-1)`` carries a spurious factorial, so the sum is not 1.
    ``erroneous_unity_sum(2, 2, 3) == 149/10``; the correct sum for the same
    case is ``sum(gamma_coefficient(2, 3, k, 2))`` which is 1.
    """
    return sum(erroneous_unity_terms(m, q, n), Fraction(0))


def erroneous_unity_terms(m: int, q: int, n: int) -> list[Fraction]:
    out = []
    for k in range(min(m, n) + 1):
        num = f(m) * f(n) * f(m - k + q - 2) * f(n - k + q - 2) * f(m + n - 2 * k + q - 1)
        den = f(q - 2) * f(k) * f(m - k) * f(n - k) * f(m + n - k + q - 1)
        out.append(Fraction(num, den))
    return out
