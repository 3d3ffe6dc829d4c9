"""Disc polynomials, zonal reproducing kernels and the coefficient tables
tying them to monomials on the disc.

Orientation: the kernel with pole ``eta`` is ``Z(xi) = W((eta|xi))`` where
``(u|v) = sum u_j conj(v_j)``.  The profile variable throughout the package
is ``w = (eta|xi)``.  Use :func:`disc_poly_eval` with ``(q, p)`` or take the
conjugate to switch to the other orientation.
"""
from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import errata  # noqa: F401  known-wrong formulas, regression only
from .polyalg import check_dimension
from .specfun import jacobi_p, pochhammer

log = logging.getLogger(__name__)


def dim_h(p: int, q: int, n: int) -> int:
    """Dimension of the space of harmonics of bidegree (p, q) on C^n."""
    check_dimension(n)
    if p < 0 or q < 0:
        raise ValueError("bidegree must be non-negative")
    num = (n + p + q - 1) * math.factorial(n - 2 + p) * math.factorial(n - 2 + q)
    den = math.factorial(p) * math.factorial(q) * math.factorial(n - 1) * math.factorial(n - 2)
    out, rem = divmod(num, den)
    assert rem == 0
    return out


def gamma_coefficient(p: int, q: int, k: int, n: int) -> Fraction:
    """Weight of W_{p-k, q-k} in the expansion of w^p conj(w)^q."""
    check_dimension(n)
    if not 0 <= k <= min(p, q):
        raise ValueError(f"k={k} outside 0..{min(p, q)}")
    a = n - 2
    f = math.factorial
    num = f(p) * f(q) * (a + 1 + p + q - 2 * k) * f(a + p - k) * f(a + q - k)
    den = f(k) * f(a) * f(a + 1 + p + q - k) * f(p - k) * f(q - k)
    return Fraction(num, den)


def monomial_expansion(p: int, q: int, n: int) -> list[tuple[tuple[int, int], Fraction]]:
    """[((p-k, q-k), gamma_k)] with w^p conj(w)^q = sum_k gamma_k W_{p-k, q-k}(w)."""
    check_dimension(n)
    return [((p - k, q - k), gamma_coefficient(p, q, k, n)) for k in range(min(p, q) + 1)]


@dataclass(frozen=True)
class DiscPolyTable:
    """W(w) = sum_j coeffs[j] * w^(p-j) * conj(w)^(q-j)."""

    p: int
    q: int
    alpha: int
    coeffs: tuple

    def __call__(self, w):
        return disc_poly_eval(self, w)


@lru_cache(maxsize=4096)
def disc_poly(p: int, q: int, alpha: int) -> DiscPolyTable:
    if p < 0 or q < 0 or alpha < 0:
        raise ValueError("disc_poly needs p, q, alpha >= 0")
    a1 = Fraction(alpha + 1)
    c = pochhammer(a1, p + q) / (pochhammer(a1, p) * pochhammer(a1, q))
    coeffs = [c]
    for j in range(min(p, q)):
        # ratio of consecutive terms of 2F1(-p, -q; -alpha-p-q; .)
        c = c * Fraction((j - p) * (j - q), (j - alpha - p - q) * (j + 1))
        coeffs.append(c)
    return DiscPolyTable(p, q, alpha, tuple(coeffs))


def _is_exact(w) -> bool:
    return isinstance(w, (int, Fraction))


def disc_poly_eval(table: DiscPolyTable, w):
    """Evaluate a disc polynomial at ``w`` (complex scalar or ndarray).

    Integer or Fraction (real) input is evaluated exactly.
    """
    p, q = table.p, table.q
    m = min(p, q)
    if _is_exact(w):
        w = Fraction(w)
        return sum(c * w ** (p + q - 2 * j) for j, c in enumerate(table.coeffs))
    w = np.asarray(w, dtype=complex)
    if log.isEnabledFor(logging.DEBUG) and np.any(np.abs(w) > 1 + 1e-12):
        log.debug("disc polynomial W_%d,%d evaluated outside the closed disc", p, q)
    s = (w * w.conj()).real
    # quadrature grids repeat |w|^2 heavily; evaluate each distinct value once
    uniq, inverse = np.unique(s.ravel(), return_inverse=True)
    ref = disc_poly(p, q, table.alpha)
    if table is ref or table.coeffs == ref.coeffs:
        ints, den = _integer_coeffs(p, q, table.alpha)
    else:
        ints, den = _scaled_integers(table.coeffs)
    vals = np.fromiter((_radial_exact(ints, den, x) for x in uniq), dtype=float, count=uniq.size)
    radial = vals[inverse].reshape(s.shape)
    out = radial * w ** (p - m) * w.conj() ** (q - m)
    return out[()] if out.ndim == 0 else out


def _scaled_integers(coeffs) -> tuple[tuple[int, ...], int]:
    coeffs = [Fraction(c) for c in coeffs]
    den = math.lcm(*(c.denominator for c in coeffs))
    return tuple(int(c * den) for c in coeffs), den


@lru_cache(maxsize=4096)
def _integer_coeffs(p: int, q: int, alpha: int) -> tuple[tuple[int, ...], int]:
    return _scaled_integers(disc_poly(p, q, alpha).coeffs)


def _radial_exact(ints: tuple, den: int, s: float) -> float:
    """sum_j c_j s^(m-j) evaluated exactly at the binary value of s, rounded once.

    The coefficients alternate in sign and grow like binomials, so a float
    Horner loop loses several digits; integer Horner does not.
    """
    num, pow2 = float(s).as_integer_ratio()
    acc = ints[0]
    scale = 1
    for c in ints[1:]:
        scale *= pow2
        acc = acc * num + c * scale
    return acc / (den * scale)


def disc_poly_via_jacobi(p: int, q: int, alpha: int, w):
    """Same function as :func:`disc_poly_eval`, through a Jacobi polynomial in 2|w|^2-1."""
    m = min(p, q)
    d = abs(p - q)
    norm = jacobi_p(alpha, d, m, 1.0)
    w = np.asarray(w, dtype=complex)
    t = 2.0 * (w * w.conj()).real - 1.0
    jac = np.vectorize(lambda x: jacobi_p(alpha, d, m, x), otypes=[float])(t)
    out = w ** (p - m) * w.conj() ** (q - m) * jac / norm
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class ZonalKernelSpec:
    p: int
    q: int
    n: int
    pole: tuple

    def __post_init__(self):
        check_dimension(self.n)
        eta = np.asarray(self.pole, dtype=complex)
        if eta.shape != (self.n,):
            raise ValueError("pole has the wrong dimension")
        if abs(np.linalg.norm(eta) - 1.0) > 1e-12:
            raise ValueError("pole must be a unit vector")
        object.__setattr__(self, "pole", tuple(complex(x) for x in eta))


def zonal_kernel_eval(spec: ZonalKernelSpec, xi):
    """Z_eta^{(p,q)}(xi) = W_{p,q}((eta|xi)) for xi of shape (n,) or (N, n)."""
    xi = np.asarray(xi, dtype=complex)
    if xi.shape[-1] != spec.n:
        raise ValueError("point has the wrong dimension")
    w = xi.conj() @ np.asarray(spec.pole)
    return disc_poly_eval(disc_poly(spec.p, spec.q, spec.n - 2), w)


def real_zonal_sum(l: int, n: int, w):
    """sum_{p+q=l} dim_h(p, q, n) W_{p,q}(w); a function of Re(w) alone."""
    check_dimension(n)
    terms = [dim_h(p, l - p, n) * disc_poly_eval(disc_poly(p, l - p, n - 2), w) for p in range(l + 1)]
    if _is_exact(w):
        return sum(terms)
    return np.sum(np.real(terms), axis=0)


def gamma_table_csv(max_bidegree: int, n: int) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["p", "q", "k", "gamma_num", "gamma_den"])
    for p in range(max_bidegree + 1):
        for q in range(max_bidegree + 1):
            for k in range(min(p, q) + 1):
                g = gamma_coefficient(p, q, k, n)
                out.writerow([p, q, k, g.numerator, g.denominator])
    return buf.getvalue()


def disc_poly_csv(table: DiscPolyTable) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["j", "c_num", "c_den"])
    for j, c in enumerate(table.coeffs):
        out.writerow([j, c.numerator, c.denominator])
    return buf.getvalue()
