"""Spherical harmonic expansions of zonal functions from Taylor data.

A zonal function with pole ``eta`` is ``f(xi) = phi((eta|xi))`` for a profile
``phi`` on the closed unit disc.  Its expansion

    f = sum_{p,q} d_{p,q} dim_h(p,q,n) Z^{(p,q)}_eta

has coefficients computed here from the mixed derivatives
``T(j,k) = d^j dbar^k phi(0)``:

    d_{p,q} = (n-1)! sum_k T(p+k, q+k) / (k! (n-1+p+q+k)!).
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Optional

import numpy as np

from .polyalg import BiPoly, NotBihomogeneousError, check_dimension, is_harmonic
from .specfun import bessel_series, csum
from .zonal import dim_h, disc_poly, disc_poly_eval

SERIES_RTOL = 1e-16
STOP_RUN = 3
MAX_TERMS = 5000
PS_RTOL = 1e-15
PS_MAX_TERMS = 1_000_000


class ConvergenceError(RuntimeError):
    """Series convergence could not be certified."""


@dataclass(frozen=True)
class TailBound:
    """Certificate |T(j,k)| / (j! k!) <= C * rho^(j+k)."""

    C: float
    rho: float

    def __post_init__(self):
        if not (self.C >= 0 and 0 <= self.rho < 1):
            raise ValueError("tail certificate needs C >= 0 and 0 <= rho < 1")


@dataclass(frozen=True)
class ProfileTaylor:
    """Mixed Wirtinger derivatives T(j, k) of a profile at the origin.

    Either a finite ``table`` or a ``generator``.  A table marked
    ``polynomial`` is the complete Taylor data (all other entries are zero);
    otherwise entries beyond ``j_max`` are unknown and a ``tail`` certificate
    is needed to bound them.  ``value`` is an optional closed form of the
    profile itself, used by the quadrature cross-checks.
    """

    table: Optional[Mapping] = None
    generator: Optional[Callable[[int, int], complex]] = None
    j_max: Optional[int] = None
    polynomial: bool = False
    tail: Optional[TailBound] = None
    value: Optional[Callable] = field(default=None, compare=False)
    name: str = "custom"

    def __post_init__(self):
        if (self.table is None) == (self.generator is None):
            raise ValueError("give exactly one of table or generator")
        if self.table is not None:
            clean = {(int(j), int(k)): v for (j, k), v in self.table.items() if v != 0}
            object.__setattr__(self, "table", clean)
            if self.j_max is None:
                top = max((max(j, k) for j, k in clean), default=0)
                object.__setattr__(self, "j_max", top)

    @classmethod
    def from_table(cls, table: Mapping, *, polynomial: bool = True, j_max=None, tail=None, name="table"):
        return cls(table=dict(table), polynomial=polynomial, j_max=j_max, tail=tail, name=name)

    def known(self, j: int, k: int) -> bool:
        if self.generator is not None or self.polynomial:
            return True
        return max(j, k) <= self.j_max

    def __call__(self, j: int, k: int):
        if self.generator is not None:
            return self.generator(j, k)
        if not self.known(j, k):
            raise KeyError(f"T({j},{k}) lies beyond the table")
        return self.table.get((j, k), 0)

    def is_hermitian(self, order: int = 8) -> bool:
        """T(k, j) == conj(T(j, k)) on the first ``order`` indices (real profiles)."""
        for j in range(order + 1):
            for k in range(order + 1):
                if self.known(j, k) and self.known(k, j):
                    if abs(complex(self(k, j)) - complex(self(j, k)).conjugate()) > 1e-14 * (
                        1 + abs(complex(self(j, k)))
                    ):
                        return False
        return True

    def to_dict(self) -> dict:
        if self.table is None:
            raise ValueError("only tabulated profiles serialize")
        out = {
            "polynomial": self.polynomial,
            "j_max": self.j_max,
            "taylor": [
                {"j": j, "k": k, "re": _num_str(complex(v).real if not isinstance(v, Fraction) else v),
                 "im": _num_str(0 if isinstance(v, Fraction) else complex(v).imag)}
                for (j, k), v in sorted(self.table.items())
            ],
        }
        if self.tail is not None:
            out["tail"] = {"C": self.tail.C, "rho": self.tail.rho}
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ProfileTaylor":
        table = {}
        for t in data["taylor"]:
            re_, im_ = _parse_num(t.get("re", 0)), _parse_num(t.get("im", 0))
            table[(int(t["j"]), int(t["k"]))] = re_ if im_ == 0 else complex(re_, im_)
        tail = data.get("tail")
        return cls.from_table(
            table,
            polynomial=bool(data.get("polynomial", True)),
            j_max=data.get("j_max"),
            tail=TailBound(float(tail["C"]), float(tail["rho"])) if tail else None,
        )


def _num_str(x) -> str:
    if isinstance(x, (int, Fraction)):
        return str(x)
    return repr(float(x))


def _parse_num(x):
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            return float(x)
    if isinstance(x, int):
        return Fraction(x)
    return float(x)


@lru_cache(maxsize=None)
def _weight(n: int, s: int, k: int) -> Fraction:
    """(n-1)! / (k! (n-1+s+k)!) with s = p+q."""
    return Fraction(math.factorial(n - 1), math.factorial(k) * math.factorial(n - 1 + s + k))


def _as_number(v, w: Fraction):
    if isinstance(v, (int, Fraction)):
        return v * w
    return complex(v) * float(w)


def expansion_coefficient_with_error(profile: ProfileTaylor, p: int, q: int, n: int) -> tuple[complex, float]:
    """d_{p,q} and a bound on the truncation error."""
    check_dimension(n)
    s = p + q
    if profile.polynomial:
        top = profile.j_max - max(p, q)
        terms = [_as_number(profile(p + k, q + k), _weight(n, s, k)) for k in range(max(top + 1, 0))]
        total = csum(terms) if terms else 0
        return complex(total), 0.0

    terms = []
    running = 0j
    bound_sum = 0.0
    quiet = 0
    for k in range(MAX_TERMS):
        if not profile.known(p + k, q + k):
            if profile.tail is None:
                raise ConvergenceError(
                    f"Taylor table exhausted at k={k} for (p,q)=({p},{q}) without a tail certificate"
                )
            return complex(csum(terms)), _tail_sum(profile.tail, p, q, n, k)
        if profile.generator is not None and profile.tail is None:
            raise ConvergenceError("generator profiles need a tail certificate")
        term = _as_number(profile(p + k, q + k), _weight(n, s, k))
        terms.append(term)
        running += complex(term)
        bound = _term_bound(profile.tail, p, q, n, k) if profile.tail else abs(term)
        bound_sum += bound
        # an identically zero coefficient is measured against the bound scale
        scale = max(abs(running), SERIES_RTOL * bound_sum)
        quiet = quiet + 1 if bound <= SERIES_RTOL * scale else 0
        if quiet >= STOP_RUN:
            err = _tail_sum(profile.tail, p, q, n, k + 1) if profile.tail else bound
            return complex(csum(terms)), err
    raise ConvergenceError(f"no convergence within {MAX_TERMS} terms for (p,q)=({p},{q})")


def _term_bound(tail: TailBound, p: int, q: int, n: int, k: int) -> float:
    f = math.factorial
    w = _weight(n, p + q, k) * f(p + k) * f(q + k)
    if tail.rho == 0:
        return 0.0 if p + q + 2 * k > 0 else tail.C * float(w)
    return tail.C * math.exp((p + q + 2 * k) * math.log(tail.rho)) * float(w)


def _tail_sum(tail: TailBound, p: int, q: int, n: int, k0: int) -> float:
    """Sum of term bounds for k >= k0, summed until it stops changing."""
    total, k = 0.0, k0
    while k < k0 + MAX_TERMS:
        b = _term_bound(tail, p, q, n, k)
        total += b
        if b <= 1e-20 * total or b == 0:
            break
        k += 1
    return total


def expansion_coefficient(profile: ProfileTaylor, p: int, q: int, n: int) -> complex:
    return expansion_coefficient_with_error(profile, p, q, n)[0]


@dataclass(frozen=True)
class ExpansionTable:
    n: int
    p_max: int
    coeffs: dict
    errors: dict

    def __getitem__(self, pq):
        return self.coeffs.get(pq, 0j)

    def cells(self):
        """(p, q) keys in total-degree-major, p-minor order."""
        return sorted(self.coeffs, key=lambda pq: (pq[0] + pq[1], pq[0]))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "entries": [
                {"p": p, "q": q, "re": self.coeffs[(p, q)].real, "im": self.coeffs[(p, q)].imag,
                 "trunc_err": self.errors.get((p, q), 0.0)}
                for p, q in self.cells()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExpansionTable":
        coeffs, errors = {}, {}
        for e in data["entries"]:
            key = (int(e["p"]), int(e["q"]))
            coeffs[key] = complex(float(e["re"]), float(e["im"]))
            errors[key] = float(e.get("trunc_err", 0.0))
        p_max = max((p + q for p, q in coeffs), default=0)
        return cls(int(data["n"]), p_max, coeffs, errors)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["p", "q", "re", "im", "trunc_err"])
        for e in self.to_dict()["entries"]:
            out.writerow([e["p"], e["q"], repr(e["re"]), repr(e["im"]), repr(e["trunc_err"])])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, n: int) -> "ExpansionTable":
        rows = list(csv.DictReader(io.StringIO(text)))
        return cls.from_dict({"n": n, "entries": rows})


def default_threads() -> int:
    try:
        return max(int(os.environ.get("CZONAL_THREADS", "0")), 0)
    except ValueError:
        return 0


def expand_profile(profile: ProfileTaylor, n: int, p_max: int, threads: Optional[int] = None) -> ExpansionTable:
    """All d_{p,q} with p+q <= p_max.

    ``threads`` (default: the CZONAL_THREADS environment variable, 0 meaning
    sequential) only changes scheduling; each cell is computed independently,
    so the table is identical either way.
    """
    check_dimension(n)
    if p_max < 0:
        raise ValueError("p_max must be non-negative")
    cells = [(p, s - p) for s in range(p_max + 1) for p in range(s + 1)]
    threads = default_threads() if threads is None else threads
    job = lambda pq: expansion_coefficient_with_error(profile, pq[0], pq[1], n)
    if threads > 0:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(job, cells))
    else:
        results = [job(pq) for pq in cells]
    coeffs = {pq: r[0] for pq, r in zip(cells, results)}
    errors = {pq: r[1] for pq, r in zip(cells, results)}
    return ExpansionTable(n, p_max, coeffs, errors)


def evaluate_expansion(table: ExpansionTable, w):
    """sum d_{p,q} dim_h(p,q,n) W_{p,q}(w) in total-degree-major order."""
    w = np.asarray(w, dtype=complex)
    parts = []
    for p, q in table.cells():
        d = table.coeffs[(p, q)]
        if d == 0:
            continue
        parts.append(d * dim_h(p, q, table.n) * disc_poly_eval(disc_poly(p, q, table.n - 2), w))
    if not parts:
        return np.zeros_like(w)[()] if w.ndim == 0 else np.zeros_like(w)
    stack = np.asarray(parts).reshape(len(parts), -1)
    out = np.array([csum(stack[:, i]) for i in range(stack.shape[1])], dtype=complex)
    return out[0] if w.ndim == 0 else out.reshape(w.shape)


# -- plane wave -------------------------------------------------------------

_I_POWERS = (1, 1j, -1, -1j)


def plane_wave_coefficient(r: float, p: int, q: int, n: int) -> complex:
    """d_{p,q} of exp(i r Re w): (n-1)! i^(p+q) (r/2)^(1-n) J_{p+q+n-1}(r)."""
    check_dimension(n)
    if r < 0:
        raise ValueError("r must be non-negative")
    if r == 0:
        return 1.0 + 0j if p == q == 0 else 0j
    # (r/2)^(1-n) J_{s+n-1}(r) = (r/2)^s * series, so the prefactor never overflows
    s = p + q
    val = math.factorial(n - 1) * (Fraction(r) / 2) ** s * bessel_series(s + n - 1, r)
    return complex(_I_POWERS[s % 4] * float(val))


def plane_wave_table(r: float, n: int, p_max: int) -> ExpansionTable:
    cells = [(p, s - p) for s in range(p_max + 1) for p in range(s + 1)]
    coeffs = {pq: complex(plane_wave_coefficient(r, pq[0], pq[1], n)) for pq in cells}
    return ExpansionTable(n, p_max, coeffs, {pq: 0.0 for pq in cells})


# -- Poisson-Szego ------------------------------------------------------------


def poisson_szego_prefactor(p: int, q: int, n: int) -> Fraction:
    f = math.factorial
    return Fraction(f(n + p - 1) * f(n + q - 1), f(n - 1) * f(n - 1 + p + q))


def poisson_szego_coefficient(r: float, p: int, q: int, n: int) -> float:
    """S_n^{p,q}(r) = r^(p+q) C 2F1(p, q; n+p+q; r^2), normalized so S(1) = 1."""
    check_dimension(n)
    if r < 0 or r > 1:
        raise ValueError("r must lie in [0, 1]")
    if r == 1:
        # Gauss summation: C * 2F1(p, q; n+p+q; 1) == 1 exactly
        f = math.factorial
        gauss = Fraction(f(n + p + q - 1) * f(n - 1), f(n + q - 1) * f(n + p - 1))
        return float(poisson_szego_prefactor(p, q, n) * gauss)
    if r == 0:
        return 1.0 if p == q == 0 else 0.0
    x = r * r
    c = n + p + q
    term, terms, running = 1.0, [1.0], 1.0
    for k in range(PS_MAX_TERMS):
        term *= (p + k) * (q + k) / ((c + k) * (k + 1.0)) * x
        if term == 0.0:
            break
        terms.append(term)
        running += term
        # once (p+k)(q+k) <= (c+k)(k+1) the ratios stay below x
        if (p + k + 1) * (q + k + 1) <= (c + k + 1) * (k + 2):
            if term * x / (1.0 - x) <= PS_RTOL * running:
                break
    else:
        raise ConvergenceError("Poisson-Szego series did not converge")
    return r ** (p + q) * float(poisson_szego_prefactor(p, q, n)) * math.fsum(terms)


def poisson_szego_closed_form(r: float, w, n: int):
    """(1 - r^2)^n / |1 - r w|^(2n)."""
    if not 0 <= r < 1:
        raise ValueError("closed form is singular at r = 1; need 0 <= r < 1")
    w = np.asarray(w, dtype=complex)
    out = (1.0 - r * r) ** n / np.abs(1.0 - r * w) ** (2 * n)
    return out[()] if out.ndim == 0 else out


def poisson_szego_table(r: float, n: int, l_max: int) -> ExpansionTable:
    cells = [(p, s - p) for s in range(l_max + 1) for p in range(s + 1)]
    coeffs = {pq: complex(poisson_szego_coefficient(r, pq[0], pq[1], n)) for pq in cells}
    return ExpansionTable(n, l_max, coeffs, {pq: 0.0 for pq in cells})


def poisson_szego_reconstruct(r: float, w, n: int, l_max: int):
    """Truncated expansion sum_{p+q<=l_max} dim_h S_n^{p,q}(r) W_{p,q}(w)."""
    if not 0 <= r < 1:
        raise ValueError("need 0 <= r < 1")
    out = evaluate_expansion(poisson_szego_table(r, n, l_max), w)
    return np.real(out)


def szego_generating_coefficient(r: float, p: int, q: int, n: int) -> float:
    """Coefficient of dim_h Z^{(p,q)} in the expansion of 1/|1 - r w|^(2n).

    r^(p+q) sum_k (n-1+p+k)! (n-1+q+k)! / ((n-1)! (n-1+p+q+k)!) r^(2k)/k!,
    which equals S_n^{p,q}(r) / (1-r^2)^n.
    """
    if not 0 <= r < 1:
        raise ValueError("need 0 <= r < 1")
    x = r * r
    A, B, C = n + p, n + q, n + p + q
    # ratio of consecutive terms is x*f(k), f(k) = (A+k)(B+k)/((C+k)(1+k));
    # f is decreasing from the first k where a k^2 + 2bk + b(C+1) - aC >= 0
    a, b = A + B - C - 1, A * B - C
    first = float(poisson_szego_prefactor(p, q, n))
    term, terms, running = first, [first], first
    for k in range(PS_MAX_TERMS):
        ratio = x * (A + k) * (B + k) / ((C + k) * (k + 1.0))
        term *= ratio
        terms.append(term)
        running += term
        decreasing = a * k * k + 2 * b * k + b * (C + 1) - a * C >= 0
        if decreasing and ratio < 1 and term * ratio / (1 - ratio) <= PS_RTOL * running:
            break
    else:
        raise ConvergenceError("generating series did not converge")
    return r ** (p + q) * math.fsum(terms)


def binomial_inner_sum(p: int, q: int, k: int, n: int) -> Fraction:
    """Inner j-sum that appears after expanding (1-r^2)^n against the generating series."""
    f = math.factorial
    total = Fraction(0)
    for j in range(min(n, k) + 1):
        total += Fraction(
            (-1) ** j * math.comb(n, j) * f(n - 1 + p + k - j) * f(n - 1 + q + k - j),
            f(n - 1 + p + q + k - j) * f(k - j),
        )
    return total


def binomial_inner_closed(p: int, q: int, k: int, n: int) -> Fraction:
    """Closed value of :func:`binomial_inner_sum` (p, q >= 1), by Pfaff-Saalschutz."""
    if p < 1 or q < 1:
        raise ValueError("closed form needs p, q >= 1")
    f = math.factorial
    return Fraction(
        f(p + n - 1) * f(q + n - 1) * f(p + k - 1) * f(q + k - 1),
        f(k) * f(p - 1) * f(q - 1) * f(p + q + n + k - 1),
    )


# -- Funk-Hecke -----------------------------------------------------------------


def funk_hecke_pair(profile: ProfileTaylor, Y: BiPoly, pole, n: int) -> complex:
    """Predicted value of the sphere integral of Y(xi) * phi((eta|xi)).

    Equals d_{p,q}(phi) * Y(eta) for Y harmonic of bidegree (p, q).
    """
    if Y.n != n:
        raise ValueError("harmonic has the wrong dimension")
    if not Y:
        return 0j
    p, q = Y.bidegree()
    if not is_harmonic(Y):
        raise NotBihomogeneousError("Y is not harmonic")
    eta = np.asarray(pole, dtype=complex)
    return expansion_coefficient(profile, p, q, n) * complex(Y(eta))


# -- named profiles --------------------------------------------------------------


def const_profile(c=1) -> ProfileTaylor:
    c = Fraction(c) if isinstance(c, (int, Fraction)) else c
    return ProfileTaylor(table={(0, 0): c}, polynomial=True, value=lambda w: c + 0 * np.asarray(w), name="const")


def monomial_profile(a: int, b: int, c=1) -> ProfileTaylor:
    """c * w^a * conj(w)^b."""
    coef = c * math.factorial(a) * math.factorial(b)
    return ProfileTaylor(
        table={(a, b): coef},
        polynomial=True,
        value=lambda w: c * np.asarray(w) ** a * np.conj(w) ** b,
        name=f"monomial({a},{b})",
    )


def polynomial_profile(coeffs: Mapping) -> ProfileTaylor:
    """sum c_{ab} w^a conj(w)^b from a map (a, b) -> c."""
    table = {(a, b): (c if not isinstance(c, (int, Fraction)) else Fraction(c)) * math.factorial(a) * math.factorial(b)
             for (a, b), c in coeffs.items()}
    items = list(coeffs.items())

    def value(w):
        w = np.asarray(w, dtype=complex)
        return sum(complex(c) * w**a * np.conj(w) ** b for (a, b), c in items) + 0 * w

    return ProfileTaylor(table=table, polynomial=True, value=value, name="polynomial")


def plane_wave_profile(r: float) -> ProfileTaylor:
    """exp(i r Re w); T(j,k) = (i r/2)^(j+k)."""
    half = 0.5j * r
    return ProfileTaylor(
        generator=lambda j, k: half ** (j + k),
        tail=TailBound(math.exp(2 * r), 0.5),
        value=lambda w: np.exp(1j * r * np.real(w)),
        name=f"plane-wave({r})",
    )


def exp_re_profile() -> ProfileTaylor:
    """exp(Re w); T(j,k) = 2^-(j+k)."""
    return ProfileTaylor(
        generator=lambda j, k: 0.5 ** (j + k),
        tail=TailBound(1.0, 0.5),
        value=lambda w: np.exp(np.real(w)),
        name="exp-re",
    )


def poisson_szego_profile(r: float, n: int) -> ProfileTaylor:
    """(1-r^2)^n / |1 - r w|^(2n); T(j,k) = (1-r^2)^n r^(j+k) (n)_j (n)_k."""
    if not 0 <= r < 1:
        raise ValueError("need 0 <= r < 1")
    pref = (1.0 - r * r) ** n
    # binom(n-1+j, j) r^(j/2) is bounded; its maximum makes the certificate
    root = math.sqrt(r)
    peak = val = 1.0
    j = 0
    while (n + j) / (j + 1) * root >= 1:
        j += 1
        val *= (n - 1 + j) / j * root
        peak = max(peak, val)
    f = math.factorial
    return ProfileTaylor(
        generator=lambda j, k: pref * r ** (j + k) * (f(n - 1 + j) // f(n - 1)) * (f(n - 1 + k) // f(n - 1)),
        tail=TailBound(pref * peak * peak, root),
        value=lambda w: poisson_szego_closed_form(r, w, n),
        name=f"poisson-szego({r})",
    )


_PROFILE_RE = re.compile(r"^\s*([a-z\-]+)\s*(?:\(([^)]*)\))?\s*$")


def parse_profile(spec: str, n: int) -> ProfileTaylor:
    """Builtin profile by name: const, const(c), monomial(a,b), plane-wave(r),
    poisson-szego(r), exp-re."""
    m = _PROFILE_RE.match(spec)
    if not m:
        raise ValueError(f"cannot parse profile {spec!r}")
    name, args = m.group(1), m.group(2)
    vals = [a.strip() for a in args.split(",")] if args else []
    if name == "const":
        return const_profile(Fraction(vals[0]) if vals else 1)
    if name == "monomial" and len(vals) == 2:
        return monomial_profile(int(vals[0]), int(vals[1]))
    if name == "plane-wave" and len(vals) == 1:
        return plane_wave_profile(float(vals[0]))
    if name == "poisson-szego" and len(vals) == 1:
        return poisson_szego_profile(float(vals[0]), n)
    if name == "exp-re" and not vals:
        return exp_re_profile()
    raise ValueError(f"unknown profile {spec!r}")
