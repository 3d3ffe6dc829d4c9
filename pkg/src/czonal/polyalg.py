"""Sparse exact polynomials in z and conj(z) on C^n, the complex Laplacian and
the canonical harmonic decomposition of bihomogeneous polynomials.

A term ``z^a conj(z)^b`` is keyed by the pair of exponent tuples ``(a, b)``;
coefficients are Gaussian rationals (:class:`QQi`).  Terms are kept in
lexicographic order of ``(a, b)`` so iteration and serialization are
deterministic.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .specfun import as_rational


class DimensionError(ValueError):
    """Raised for n < 2; the circle case is not covered by these formulas."""


class NotBihomogeneousError(ValueError):
    pass


def check_dimension(n: int) -> None:
    if n < 2:
        raise DimensionError(f"complex dimension must be >= 2, got n={n}")


@dataclass(frozen=True)
class QQi:
    """Exact complex rational re + i*im."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def coerce(cls, x) -> "QQi":
        if isinstance(x, QQi):
            return x
        if isinstance(x, tuple):
            return cls(as_rational(x[0]), as_rational(x[1]))
        return cls(as_rational(x), Fraction(0))

    def __add__(self, other):
        o = QQi.coerce(other)
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = QQi.coerce(other)
        return QQi(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __mul__(self, other):
        o = QQi.coerce(other)
        return QQi(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QQi.coerce(other)
        d = o.re * o.re + o.im * o.im
        return QQi((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = QQi.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"


Key = tuple  # ((a_1..a_n), (b_1..b_n))


@dataclass(frozen=True)
class BiPoly:
    n: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (a, b), c in sorted(self.terms.items()):
            a, b = tuple(int(x) for x in a), tuple(int(x) for x in b)
            if len(a) != self.n or len(b) != self.n:
                raise ValueError("exponent vector length does not match dimension")
            if min(a + b, default=0) < 0:
                raise ValueError("negative exponent")
            c = QQi.coerce(c)
            if c:
                clean[(a, b)] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _from_clean(cls, n: int, terms: dict) -> "BiPoly":
        """Skip validation for terms built by arithmetic on valid polynomials."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "terms", {k: terms[k] for k in sorted(terms) if terms[k]})
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "BiPoly":
        return cls(n, {})

    @classmethod
    def const(cls, n: int, c=1) -> "BiPoly":
        return cls(n, {((0,) * n, (0,) * n): c})

    @classmethod
    def monomial(cls, n: int, a, b, c=1) -> "BiPoly":
        return cls(n, {(tuple(a), tuple(b)): c})

    @classmethod
    def z(cls, n: int, j: int) -> "BiPoly":
        e = tuple(int(i == j) for i in range(n))
        return cls.monomial(n, e, (0,) * n)

    @classmethod
    def zbar(cls, n: int, j: int) -> "BiPoly":
        e = tuple(int(i == j) for i in range(n))
        return cls.monomial(n, (0,) * n, e)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "BiPoly"):
        if other.n != self.n:
            raise ValueError("dimension mismatch")

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, QQi()) + c
        return BiPoly._from_clean(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._from_clean(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            c = QQi.coerce(other)
            return BiPoly._from_clean(self.n, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (_vadd(a1, a2), _vadd(b1, b2))
                out[key] = out.get(key, QQi()) + c1 * c2
        return BiPoly._from_clean(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def conjugate(self) -> "BiPoly":
        """Complex conjugate: swaps z and conj(z) exponents."""
        return BiPoly._from_clean(self.n, {(b, a): c.conjugate() for (a, b), c in self.terms.items()})

    # -- structure ----------------------------------------------------
    def bidegrees(self) -> set:
        return {(sum(a), sum(b)) for a, b in self.terms}

    def bidegree(self) -> tuple[int, int]:
        """(p, q) of a bihomogeneous polynomial; raises otherwise."""
        degs = self.bidegrees()
        if len(degs) != 1:
            raise NotBihomogeneousError(f"polynomial has bidegrees {sorted(degs)}")
        return next(iter(degs))

    def is_bihomogeneous(self) -> bool:
        return len(self.bidegrees()) == 1

    def __call__(self, z) -> np.ndarray:
        """Evaluate at points ``z`` of shape (n,) or (N, n)."""
        z = np.asarray(z, dtype=complex)
        single = z.ndim == 1
        z = np.atleast_2d(z)
        if z.shape[1] != self.n:
            raise ValueError("point dimension does not match polynomial")
        zc = z.conj()
        out = np.zeros(z.shape[0], dtype=complex)
        for (a, b), c in self.terms.items():
            out += complex(c) * np.prod(z**np.array(a) * zc**np.array(b), axis=1)
        return out[0] if single else out

    # -- serialization ------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"a": list(a), "b": list(b), "re": str(c.re), "im": str(c.im)}
                for (a, b), c in self.terms.items()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BiPoly":
        n = int(data["n"])
        terms: dict = {}
        for t in data["terms"]:
            key = (tuple(t["a"]), tuple(t["b"]))
            c = QQi(Fraction(str(t.get("re", "0"))), Fraction(str(t.get("im", "0"))))
            terms[key] = terms.get(key, QQi()) + c
        return cls(n, terms)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "BiPoly":
        return cls.from_dict(json.loads(text))


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def rsq(n: int) -> BiPoly:
    """|z|^2 = sum_j z_j conj(z_j)."""
    terms = {}
    for j in range(n):
        e = tuple(int(i == j) for i in range(n))
        terms[(e, e)] = 1
    return BiPoly(n, terms)


def complex_laplacian(P: BiPoly) -> BiPoly:
    """4 * sum_j d^2 P / dz_j dconj(z_j)."""
    out: dict = {}
    for (a, b), c in P.terms.items():
        for j in range(P.n):
            if a[j] and b[j]:
                a2 = a[:j] + (a[j] - 1,) + a[j + 1 :]
                b2 = b[:j] + (b[j] - 1,) + b[j + 1 :]
                out[(a2, b2)] = out.get((a2, b2), QQi()) + c * (4 * a[j] * b[j])
    return BiPoly._from_clean(P.n, out)


def rsq_multiply(P: BiPoly) -> BiPoly:
    out: dict = {}
    for (a, b), c in P.terms.items():
        for j in range(P.n):
            a2 = a[:j] + (a[j] + 1,) + a[j + 1 :]
            b2 = b[:j] + (b[j] + 1,) + b[j + 1 :]
            out[(a2, b2)] = out.get((a2, b2), QQi()) + c
    return BiPoly._from_clean(P.n, out)


def rsq_power_multiply(P: BiPoly, k: int) -> BiPoly:
    for _ in range(k):
        P = rsq_multiply(P)
    return P


def is_harmonic(P: BiPoly) -> bool:
    return not complex_laplacian(P)


def beta_coefficient(p: int, q: int, k: int, j: int, n: int) -> Fraction:
    """Weight of |z|^{2j} Laplacian^{k+j}(P) in the k-th harmonic component."""
    check_dimension(n)
    m = min(p, q)
    if not (0 <= k <= m and 0 <= j <= m - k):
        raise ValueError(f"index out of range: k={k}, j={j}, min(p,q)={m}")
    num = (n - 1 + p + q - 2 * k) * math.factorial(n - 2 + p + q - 2 * k - j)
    den = 4 ** (k + j) * math.factorial(k) * math.factorial(j) * math.factorial(n - 1 + p + q - k)
    return Fraction((-1) ** j * num, den)


def _laplacian_powers(P: BiPoly, upto: int) -> list[BiPoly]:
    powers = [P]
    for _ in range(upto):
        powers.append(complex_laplacian(powers[-1]))
    return powers


def _component(P: BiPoly, p: int, q: int, k: int, powers: list[BiPoly]) -> BiPoly:
    m = min(p, q)
    out = BiPoly.zero(P.n)
    for j in range(m - k + 1):
        lap = powers[k + j]
        if lap:
            out = out + rsq_power_multiply(lap, j) * beta_coefficient(p, q, k, j, P.n)
    return out


def _source_bidegree(P: BiPoly) -> tuple[int, int]:
    check_dimension(P.n)
    if not P:
        raise NotBihomogeneousError("the zero polynomial has no bidegree")
    return P.bidegree()


def harmonic_component(P: BiPoly, k: int) -> BiPoly:
    """h_k(P): harmonic, bihomogeneous of bidegree (p-k, q-k)."""
    p, q = _source_bidegree(P)
    m = min(p, q)
    if not 0 <= k <= m:
        raise ValueError(f"k={k} outside 0..{m}")
    return _component(P, p, q, k, _laplacian_powers(P, m))


@dataclass(frozen=True)
class HarmonicComponents:
    n: int
    bidegree: tuple
    components: tuple

    def reconstruct(self) -> BiPoly:
        out = BiPoly.zero(self.n)
        for k, h in enumerate(self.components):
            out = out + rsq_power_multiply(h, k)
        return out

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.bidegree[0],
            "q": self.bidegree[1],
            "components": [h.to_dict() for h in self.components],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HarmonicComponents":
        comps = tuple(BiPoly.from_dict(h) for h in data["components"])
        return cls(int(data["n"]), (int(data["p"]), int(data["q"])), comps)


def canonical_decompose(P: BiPoly) -> HarmonicComponents:
    """All components h_0..h_m with P = sum_k |z|^{2k} h_k.

    Trailing zero components are dropped, so an already harmonic P
    decomposes to ``[P]``.
    """
    p, q = _source_bidegree(P)
    m = min(p, q)
    powers = _laplacian_powers(P, m)
    comps = [_component(P, p, q, k, powers) for k in range(m + 1)]
    while len(comps) > 1 and not comps[-1]:
        comps.pop()
    return HarmonicComponents(P.n, (p, q), tuple(comps))


# -- brute-force oracle ----------------------------------------------------


class SingularSystemError(ArithmeticError):
    pass


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def _block_monomials(p: int, q: int, delta: tuple) -> list:
    """Monomials (a, b) of bidegree (p, q) with a - b = delta."""
    out = []
    for b in _compositions(q, len(delta)):
        a = tuple(x + d for x, d in zip(b, delta))
        if min(a) >= 0 and sum(a) == p:
            out.append((a, b))
    return sorted(out)


def _bareiss_solve(M: list[list[int]], rhs: list[list[int]]) -> list[list[Fraction]]:
    """Solve M X = rhs exactly by fraction-free elimination and back substitution."""
    N = len(M)
    ncol = len(rhs[0]) if rhs else 0
    A = [list(M[i]) + list(rhs[i]) for i in range(N)]
    prev = 1
    for c in range(N):
        piv = next((r for r in range(c, N) if A[r][c] != 0), None)
        if piv is None:
            raise SingularSystemError("brute-force decomposition system is singular")
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
        pc = A[c][c]
        rowc = A[c]
        for r in range(c + 1, N):
            rowr = A[r]
            f = rowr[c]
            for j in range(c + 1, N + ncol):
                rowr[j] = (pc * rowr[j] - f * rowc[j]) // prev
            rowr[c] = 0
        prev = pc
    X = [[Fraction(0)] * ncol for _ in range(N)]
    for i in range(N - 1, -1, -1):
        for col in range(ncol):
            s = Fraction(A[i][N + col])
            for j in range(i + 1, N):
                if A[i][j]:
                    s -= A[i][j] * X[j][col]
            X[i][col] = s / A[i][i]
    return X


@lru_cache(maxsize=None)
def _block_solver(n: int, p: int, q: int, delta: tuple):
    """Unknown layout and solution columns for one weight block.

    Column ``i`` of the returned matrix holds the decomposition of the i-th
    monomial of bidegree (p, q) in the block.
    """
    m = min(p, q)
    unknowns = []  # (k, a, b)
    for k in range(m + 1):
        unknowns.extend((k, a, b) for a, b in _block_monomials(p - k, q - k, delta))
    index = {u: i for i, u in enumerate(unknowns)}
    top = _block_monomials(p, q, delta)
    top_index = {mono: i for i, mono in enumerate(top)}
    rows = []
    # sum_k |z|^{2k} H_k = P, on monomials of bidegree (p, q)
    recon = [[0] * len(unknowns) for _ in top]
    for (k, a, b), col in index.items():
        for c in _compositions(k, n):
            coef = math.factorial(k) // math.prod(math.factorial(x) for x in c)
            key = (_vadd(a, c), _vadd(b, c))
            recon[top_index[key]][col] += coef
    rows.extend(recon)
    # Laplacian(H_k) = 0, on monomials of bidegree (p-k-1, q-k-1)
    for k in range(m):
        lower = _block_monomials(p - k - 1, q - k - 1, delta)
        lower_index = {mono: i for i, mono in enumerate(lower)}
        block = [[0] * len(unknowns) for _ in lower]
        for a, b in _block_monomials(p - k, q - k, delta):
            col = index[(k, a, b)]
            for j in range(n):
                if a[j] and b[j]:
                    a2 = a[:j] + (a[j] - 1,) + a[j + 1 :]
                    b2 = b[:j] + (b[j] - 1,) + b[j + 1 :]
                    block[lower_index[(a2, b2)]][col] += 4 * a[j] * b[j]
        rows.extend(block)
    if len(rows) != len(unknowns):
        raise SingularSystemError("decomposition system is not square")
    rhs = [[int(i == r) for i in range(len(top))] for r in range(len(rows))]
    return unknowns, top_index, _bareiss_solve(rows, rhs)


def brute_force_decompose(P: BiPoly) -> HarmonicComponents:
    """Harmonic decomposition by solving the linear system directly.

    The system is split into blocks of fixed torus weight a - b (both the
    Laplacian and multiplication by |z|^2 preserve it); each block is solved
    exactly over the rationals.  Blocks are cached up to a permutation of the
    coordinates.
    """
    p, q = _source_bidegree(P)
    n = P.n
    m = min(p, q)
    comps: list[dict] = [{} for _ in range(m + 1)]
    blocks: dict = {}
    for (a, b), c in P.terms.items():
        delta = tuple(x - y for x, y in zip(a, b))
        blocks.setdefault(delta, []).append((a, b, c))
    for delta, items in blocks.items():
        perm = sorted(range(n), key=lambda i: (delta[i], i))
        canon = tuple(delta[i] for i in perm)
        unknowns, top_index, X = _block_solver(n, p, q, canon)
        to_canon = lambda v: tuple(v[i] for i in perm)

        def from_canon(v):
            out = [0] * n
            for pos, i in enumerate(perm):
                out[i] = v[pos]
            return tuple(out)

        for a, b, c in items:
            col = top_index[(to_canon(a), to_canon(b))]
            for row, (k, ua, ub) in enumerate(unknowns):
                x = X[row][col]
                if x:
                    key = (from_canon(ua), from_canon(ub))
                    comps[k][key] = comps[k].get(key, QQi()) + c * x
    out = [BiPoly(n, t) for t in comps]
    while len(out) > 1 and not out[-1]:
        out.pop()
    return HarmonicComponents(n, (p, q), tuple(out))


def all_monomials(n: int, p: int, q: int):
    for a in _compositions(p, n):
        for b in _compositions(q, n):
            yield BiPoly.monomial(n, a, b)
