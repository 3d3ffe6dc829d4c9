"""Quadrature on the weighted unit disc and on the unit sphere of C^n.

The disc rule integrates against the normalized measure
``(alpha+1)/pi * (1-|w|^2)^alpha dlambda(w)``, which is the push-forward of
the normalized sphere measure of C^n (alpha = n-2) under ``xi -> (eta|xi)``.
The sphere rule applies that factorization recursively down to the circle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .polyalg import check_dimension
from .specfun import csum
from .zonal import disc_poly, disc_poly_eval

REDUCTION = "sequential compensated (math.fsum), fixed node order"


@dataclass(frozen=True)
class DiscRule:
    alpha: int
    s: np.ndarray = field(repr=False)
    u: np.ndarray = field(repr=False)
    angular_points: int = 1
    reduction: str = REDUCTION

    @property
    def radial_points(self) -> int:
        return len(self.s)

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Complex nodes and weights, radial-major order."""
        M = self.angular_points
        phase = np.exp(2j * np.pi * np.arange(M) / M)
        w = (np.sqrt(self.s)[:, None] * phase[None, :]).ravel()
        weights = np.repeat((self.alpha + 1) * self.u / M, M)
        return w, weights

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "radial": [{"s": float(s), "u": float(u)} for s, u in zip(self.s, self.u)],
            "angular_points": self.angular_points,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DiscRule":
        s = np.array([r["s"] for r in data["radial"]], dtype=float)
        u = np.array([r["u"] for r in data["radial"]], dtype=float)
        return cls(int(data["alpha"]), s, u, int(data["angular_points"]))

    def __eq__(self, other):
        if not isinstance(other, DiscRule):
            return NotImplemented
        return (
            self.alpha == other.alpha
            and self.angular_points == other.angular_points
            and np.array_equal(self.s, other.s)
            and np.array_equal(self.u, other.u)
        )

    __hash__ = None


@lru_cache(maxsize=256)
def build_disc_rule(alpha: int, radial_points: int, angular_points: int) -> DiscRule:
    """Gauss rule for (1-s)^alpha ds on [0,1] in s = |w|^2, times M equispaced angles.

    Exact for w^a conj(w)^b when |a-b| < angular_points and
    min(a, b) <= 2*radial_points - 1.
    """
    if radial_points < 1 or angular_points < 1:
        raise ValueError("rule sizes must be positive")
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    x, wx = roots_jacobi(radial_points, alpha, 0)
    s = (1.0 + x) / 2.0
    u = wx / 2.0 ** (alpha + 1)
    return DiscRule(alpha, s, u, angular_points)


def disc_integrate(phi, rule: DiscRule) -> complex:
    """Integral of a profile against the normalized disc weight."""
    w, weights = rule.nodes()
    vals = np.broadcast_to(np.asarray(phi(w), dtype=complex), w.shape)
    return complex(csum(weights * vals))


def integral_coefficient(phi, p: int, q: int, n: int, rule: DiscRule) -> complex:
    """Expansion coefficient d_{p,q} as a disc integral of phi * conj(W_{p,q}).

    The conjugate makes this the orthogonal projection onto the kernel of
    bidegree (p, q); it agrees with the Taylor-series formula.
    """
    check_dimension(n)
    if rule.alpha != n - 2:
        raise ValueError(f"rule has alpha={rule.alpha}, need {n - 2}")
    table = disc_poly(p, q, n - 2)
    return disc_integrate(lambda w: phi(w) * np.conj(disc_poly_eval(table, w)), rule)


def exact_disc_moment(a: int, b: int, alpha: int):
    """Exact integral of w^a conj(w)^b against the normalized weight."""
    from fractions import Fraction

    if a != b:
        return Fraction(0)
    f = math.factorial
    return Fraction(f(a) * f(alpha + 1), f(a + alpha + 1))


@dataclass(frozen=True)
class SphereRule:
    """Nested disc rules for dimensions n, n-1, ..., 2 and a base circle rule."""

    n: int
    levels: tuple
    base_points: int

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        return _sphere_nodes(self)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "levels": [lvl.to_dict() for lvl in self.levels],
            "base_points": self.base_points,
            "reduction": REDUCTION,
        }


def build_sphere_rule(n: int, radial_points: int, angular_points: int) -> SphereRule:
    if n < 1:
        raise ValueError("n must be >= 1")
    levels = tuple(build_disc_rule(d - 2, radial_points, angular_points) for d in range(n, 1, -1))
    return SphereRule(n, levels, angular_points)


def _sphere_nodes(rule: SphereRule):
    M = rule.base_points
    pts = np.exp(2j * np.pi * np.arange(M) / M)[:, None]
    wts = np.full(M, 1.0 / M)
    # build upwards: dimension d from d-1, pole = last coordinate
    for lvl in reversed(rule.levels):
        w, dw = lvl.nodes()
        rad = np.sqrt(np.clip(1.0 - (w * w.conj()).real, 0.0, None))
        inner = rad[:, None, None] * pts[None, :, :]
        last = np.broadcast_to(w[:, None, None], (len(w), len(pts), 1))
        pts = np.concatenate([inner, last], axis=2).reshape(-1, pts.shape[1] + 1)
        wts = (dw[:, None] * wts[None, :]).ravel()
    return pts, wts


def sphere_integrate(f, n: int, rule: SphereRule) -> complex:
    """Integral of f over the unit sphere of C^n (normalized measure).

    ``f`` takes an (N, n) array of points and returns N values.
    """
    if rule.n != n:
        raise ValueError(f"rule is for n={rule.n}, integrand for n={n}")
    pts, wts = rule.nodes()
    vals = np.asarray(f(pts), dtype=complex)
    return complex(csum(wts * vals))


def zonal_function(phi, pole):
    """xi -> phi((eta|xi)) as a callable on (N, n) point arrays."""
    eta = np.asarray(pole, dtype=complex)
    return lambda pts: phi(np.asarray(pts).conj() @ eta)
