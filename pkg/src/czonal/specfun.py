"""Pochhammer symbols, terminating hypergeometric sums, Jacobi polynomials
and integer-order Bessel functions.

Everything combinatorial is done in exact rationals (``fractions.Fraction``);
floating point only appears when the caller passes a float argument.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import numpy as np

Number = Union[int, Fraction, float, complex]

BESSEL_RTOL = 1e-17
BESSEL_MAX_TERMS = 200


class PochhammerPoleError(ZeroDivisionError):
    """A denominator Pochhammer symbol vanished before the series terminated."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def csum(terms: Iterable[Number]) -> Number:
    """Compensated sum of floats or complex numbers (exact for Fractions)."""
    if isinstance(terms, np.ndarray):
        terms = terms.ravel()
        if np.iscomplexobj(terms):
            return complex(math.fsum(terms.real), math.fsum(terms.imag))
        return math.fsum(terms)
    terms = list(terms)
    if all(isinstance(t, (int, Fraction)) for t in terms):
        return sum(terms, Fraction(0))
    if any(isinstance(t, complex) for t in terms):
        re = math.fsum(complex(t).real for t in terms)
        im = math.fsum(complex(t).imag for t in terms)
        return complex(re, im)
    return math.fsum(float(t) for t in terms)


def pochhammer(r, j: int):
    """Rising factorial (r)_j = r (r+1) ... (r+j-1), with (r)_0 = 1.

    Exact when ``r`` is an int or Fraction, otherwise float.
    """
    if j < 0:
        raise ValueError("pochhammer order must be non-negative")
    if isinstance(r, (int, Fraction)):
        out = Fraction(1)
        r = Fraction(r)
    else:
        out = 1.0
    for i in range(j):
        out *= r + i
    return out


def factorial_ratio(num: Sequence[int], den: Sequence[int]) -> Fraction:
    """prod(num_i!) / prod(den_i!) as an exact Fraction."""
    top = math.prod(math.factorial(a) for a in num)
    bottom = math.prod(math.factorial(b) for b in den)
    return Fraction(top, bottom)


def _nonpositive_integer(x) -> bool:
    return isinstance(x, (int, Fraction)) and Fraction(x).denominator == 1 and x <= 0


def termination_order(numer: Sequence) -> int:
    """Largest index j for which the term of a terminating series can be nonzero."""
    orders = [-int(a) for a in numer if _nonpositive_integer(a)]
    if not orders:
        raise ValueError("series does not terminate: no non-positive integer numerator parameter")
    return min(orders)


def hyp_terminating(numer: Sequence, denom: Sequence, t):
    """Terminating generalized hypergeometric sum pFq(numer; denom; t).

    Terms are generated by forward recurrence on the term ratio. Exact when
    every parameter and ``t`` are rationals.
    """
    numer = [as_rational(a) for a in numer]
    denom = [as_rational(b) for b in denom]
    exact = isinstance(t, (int, Fraction))
    t = Fraction(t) if exact else t
    top = termination_order(numer)
    term = Fraction(1) if exact else 1.0
    terms = [term]
    for j in range(top):
        num = math.prod(a + j for a in numer)
        den = math.prod(b + j for b in denom) * (j + 1)
        if num == 0:
            break
        if den == 0:
            raise PochhammerPoleError(
                f"denominator Pochhammer vanishes at index {j + 1} before termination"
            )
        ratio = Fraction(num, 1) / den
        term = term * (ratio if exact else float(ratio)) * t
        terms.append(term)
    return csum(terms)


def hyp2f1_terminating(a: int, b, c, t):
    """2F1(a, b; c; t) for a non-positive integer ``a``."""
    if not _nonpositive_integer(a):
        raise ValueError("hyp2f1_terminating needs a non-positive integer first parameter")
    return hyp_terminating([a, b], [c], t)


def chu_vandermonde(k: int, j: int, alpha: int) -> Fraction:
    """Closed form of 2F1(-k, -j; -alpha-k-j; 1)."""
    a1 = Fraction(alpha + 1)
    return pochhammer(a1, k) * pochhammer(a1, j) / pochhammer(a1, k + j)


def saalschutz_sides(n: int, a, b, c) -> tuple[Fraction, Fraction]:
    """Both sides of the Pfaff-Saalschutz summation, evaluated exactly.

    Left: 3F2(-n, a, b; c, 1+a+b-n-c; 1).  Right: (c-a)_n (c-b)_n / ((c)_n (c-a-b)_n).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    d = 1 + a + b - n - c
    lhs = hyp_terminating([-n, a, b], [c, d], Fraction(1))
    den = pochhammer(c, n) * pochhammer(c - a - b, n)
    if den == 0:
        raise PochhammerPoleError("closed-form side has a vanishing denominator")
    rhs = pochhammer(c - a, n) * pochhammer(c - b, n) / den
    return lhs, rhs


def pfaff_saalschutz_check(n: int, a, b, c) -> bool:
    lhs, rhs = saalschutz_sides(n, a, b, c)
    return lhs == rhs


def jacobi_p(mu, nu, m: int, t: float) -> float:
    """Jacobi polynomial P_m^{(mu, nu)}(t) by the three-term recurrence."""
    if m < 0:
        raise ValueError("degree must be non-negative")
    a, b = float(mu), float(nu)
    if a <= -1:
        raise ValueError("mu must exceed -1")
    p_prev, p = 1.0, 0.5 * (a - b + (a + b + 2.0) * t)
    if m == 0:
        return 1.0
    ab = a + b
    for k in range(2, m + 1):
        c = 2.0 * k + ab
        a1 = 2.0 * k * (k + ab) * (c - 2.0)
        a2 = (c - 1.0) * (a * a - b * b)
        a3 = (c - 2.0) * (c - 1.0) * c
        a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c
        p_prev, p = p, ((a2 + a3 * t) * p - a4 * p_prev) / a1
    return p


def jacobi_p_hypergeometric(mu, nu, m: int, t):
    """P_m^{(mu, nu)}(t) = (mu+1)_m / m! * 2F1(-m, m+mu+nu+1; mu+1; (1-t)/2).

    Independent of :func:`jacobi_p`; exact when all arguments are rational.
    """
    mu, nu = as_rational(mu), as_rational(nu)
    exact = isinstance(t, (int, Fraction))
    x = (1 - Fraction(t)) / 2 if exact else (1.0 - t) / 2.0
    lead = pochhammer(mu + 1, m) / math.factorial(m)
    val = hyp2f1_terminating(-m, m + mu + nu + 1, mu + 1, x)
    return lead * val if exact else float(lead) * val


def bessel_series(nu: int, r: float) -> Fraction:
    """sum_k (-1)^k (r/2)^(2k) / (k! (k+nu)!), exactly, on the binary value of r.

    J_nu(r) = (r/2)^nu times this.  Truncated once a term drops below
    BESSEL_RTOL of the partial sum.
    """
    if nu < 0 or r < 0:
        raise ValueError("bessel series needs nu >= 0 and r >= 0")
    half = Fraction(r) / 2
    x2 = -half * half
    term = Fraction(1, math.factorial(nu))
    total = term
    for k in range(1, BESSEL_MAX_TERMS):
        term = term * x2 / (k * (k + nu))
        total += term
        if abs(term) < BESSEL_RTOL * abs(total):
            break
    return total


def bessel_j(nu: int, r: float) -> float:
    """J_nu(r) for integer nu >= 0 from its power series.

    The series alternates with terms up to ~e^r, so it is summed exactly on
    the binary value of r and rounded once at the end.
    """
    if nu < 0 or r < 0:
        raise ValueError("bessel_j needs nu >= 0 and r >= 0")
    if r == 0:
        return 1.0 if nu == 0 else 0.0
    return float((Fraction(r) / 2) ** nu * bessel_series(nu, r))
