"""Identity suite behind ``czonal verify``.

Each check returns a :class:`CheckResult`; the suite is deterministic for a
given (n, max_bidegree, tolerance).
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import expansion as ex
from . import polyalg as pa
from . import quadrature as qd
from . import specfun as sf
from . import zonal as zn
from .errata import erroneous_unity_sum


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    max_error: float = 0.0
    detail: str = ""

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        extra = f", max err {self.max_error:.2e}" if self.max_error else ""
        return f"{self.name}: {status} ({self.cases} cases{extra})"


def disc_grid(count: int = 100, seed: int = 20100601) -> np.ndarray:
    """Deterministic points in the closed disc, including 0, 1 and boundary points."""
    rng = np.random.default_rng(seed)
    fixed = np.array([0, 1, -1, 1j, -1j, np.exp(0.7j), 0.5, 0.3 + 0.4j], dtype=complex)
    m = count - len(fixed)
    rad = np.sqrt(rng.uniform(0, 1, m))
    ang = rng.uniform(0, 2 * np.pi, m)
    return np.concatenate([fixed, rad * np.exp(1j * ang)])


def check_unity(n: int, P: int) -> CheckResult:
    cases = bad = 0
    for p in range(P + 1):
        for q in range(P + 1):
            cases += 1
            if sum(zn.gamma_coefficient(p, q, k, n) for k in range(min(p, q) + 1)) != 1:
                bad += 1
    return CheckResult("decomposition_of_unity", bad == 0, cases)


def check_published_error() -> CheckResult:
    wrong = erroneous_unity_sum(2, 2, 3)
    right = sum(zn.gamma_coefficient(2, 3, k, 2) for k in range(3))
    ok = wrong == Fraction(149, 10) and right == 1
    return CheckResult("published_error_regression", ok, 1, detail=f"erroneous sum {wrong}")


def check_disc_forms(n: int, P: int, tol: float) -> CheckResult:
    w = disc_grid()
    worst, cases = 0.0, 0
    for p in range(P + 1):
        for q in range(P + 1):
            a = zn.disc_poly_eval(zn.disc_poly(p, q, n - 2), w)
            b = zn.disc_poly_via_jacobi(p, q, n - 2, w)
            # |W| <= 1 = W(1), so the sup norm is the natural scale
            err = np.max(np.abs(a - b) / np.maximum(np.abs(b), 1.0))
            worst = max(worst, float(err))
            cases += 1
    return CheckResult("disc_form_equivalence", worst <= tol, cases, worst)


def check_boundedness(n: int, P: int) -> CheckResult:
    w = disc_grid()
    worst = 0.0
    for p in range(P + 1):
        for q in range(P + 1):
            worst = max(worst, float(np.max(np.abs(zn.disc_poly_eval(zn.disc_poly(p, q, n - 2), w)))))
    return CheckResult("disc_boundedness", worst <= 1 + 1e-10, (P + 1) ** 2, max(worst - 1, 0.0))


def check_monomial_expansion(n: int, P: int, tol: float) -> CheckResult:
    w = disc_grid()
    worst, cases = 0.0, 0
    for p in range(min(P, 8) + 1):
        for q in range(min(P, 8) + 1):
            lhs = w**p * np.conj(w) ** q
            rhs = sum(float(g) * zn.disc_poly_eval(zn.disc_poly(a, b, n - 2), w)
                      for (a, b), g in zn.monomial_expansion(p, q, n))
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
            cases += 1
    return CheckResult("monomial_expansion", worst <= tol, cases, worst)


def check_canonical(n: int, P: int) -> CheckResult:
    cases = bad = 0
    top = min(P, 2)
    for p in range(top + 1):
        for q in range(top + 1):
            for mono in pa.all_monomials(n, p, q):
                cases += 1
                h = pa.canonical_decompose(mono)
                ok = (
                    h.reconstruct() == mono
                    and all(pa.is_harmonic(c) for c in h.components)
                    and h == pa.brute_force_decompose(mono)
                )
                bad += not ok
    return CheckResult("canonical_decomposition", bad == 0, cases)


def check_differential_vs_integral(n: int, P: int, tol: float) -> CheckResult:
    top = min(P, 4)
    rule = qd.build_disc_rule(n - 2, top + 2, 2 * top + 2)
    worst, cases = 0.0, 0
    for a in range(top + 1):
        for b in range(top + 1 - a):
            prof = ex.monomial_profile(a, b)
            for p in range(top + 1):
                for q in range(top + 1):
                    d1 = ex.expansion_coefficient(prof, p, q, n)
                    d2 = qd.integral_coefficient(prof.value, p, q, n, rule)
                    worst = max(worst, abs(d1 - d2))
                    cases += 1
    return CheckResult("differential_vs_integral", worst <= tol, cases, worst)


def check_reproducing(n: int, P: int, tol: float) -> CheckResult:
    top = min(P, 5)
    rule = qd.build_disc_rule(n - 2, 2 * top + 2, 4 * top + 3)
    worst, cases = 0.0, 0
    cells = [(p, q) for p in range(top + 1) for q in range(top + 1)]
    for p, q in cells:
        Wa = zn.disc_poly(p, q, n - 2)
        for p2, q2 in cells:
            Wb = zn.disc_poly(p2, q2, n - 2)
            val = qd.disc_integrate(lambda w: zn.disc_poly_eval(Wa, w) * np.conj(zn.disc_poly_eval(Wb, w)), rule)
            target = 1.0 / zn.dim_h(p, q, n) if (p, q) == (p2, q2) else 0.0
            # orthogonality on the disc also holds when p-q == p2-q2; otherwise the angle kills it
            err = abs(val - target) * (zn.dim_h(p, q, n) if (p, q) == (p2, q2) else 1.0)
            worst = max(worst, err)
            cases += 1
    return CheckResult("reproducing_identity", worst <= tol, cases, worst)


def check_plane_wave(n: int, tol: float, r: float = 2.0, L: int = 30) -> CheckResult:
    w = disc_grid(50)
    table = ex.plane_wave_table(r, n, L)
    err = float(np.max(np.abs(ex.evaluate_expansion(table, w) - np.exp(1j * r * w.real))))
    sym = max(abs(table[(p, q)] - table[(q, p)]) for p, q in table.coeffs)
    return CheckResult("plane_wave_expansion", err <= tol and sym == 0, len(w), err)


def check_poisson_szego(n: int, P: int, tol: float) -> CheckResult:
    w = disc_grid(50) * 0.999
    r = 0.5
    err = float(np.max(np.abs(ex.poisson_szego_reconstruct(r, w, n, 40) - ex.poisson_szego_closed_form(r, w, n))))
    edge = max(abs(ex.poisson_szego_coefficient(1.0, p, q, n) - 1) for p in range(P + 1) for q in range(P + 1))
    ok = err <= tol and edge <= 1e-12
    return CheckResult("poisson_szego_expansion", ok, len(w) + (P + 1) ** 2, max(err, edge))


def check_saalschutz_inner(n: int) -> CheckResult:
    cases = bad = 0
    for p in range(1, 6):
        for q in range(1, 6):
            for k in range(7):
                cases += 1
                bad += ex.binomial_inner_sum(p, q, k, n) != ex.binomial_inner_closed(p, q, k, n)
    return CheckResult("pfaff_saalschutz_inner_sum", bad == 0, cases)


def check_chu_vandermonde() -> CheckResult:
    cases = bad = 0
    for alpha in range(9):
        for k in range(13):
            for j in range(13):
                cases += 1
                lhs = sf.hyp2f1_terminating(-k, -j, -alpha - k - j, Fraction(1))
                bad += lhs != sf.chu_vandermonde(k, j, alpha)
    return CheckResult("chu_vandermonde", bad == 0, cases)


def check_real_zonal_sum(n: int, P: int, tol: float) -> CheckResult:
    rng = np.random.default_rng(7)
    x = rng.uniform(-0.95, 0.95, 50)
    y1 = rng.uniform(0, 1, 50) * np.sqrt(1 - x**2)
    y2 = -rng.uniform(0, 1, 50) * np.sqrt(1 - x**2)
    worst, exact_ok = 0.0, True
    for l in range(min(P, 8) + 1):
        a = zn.real_zonal_sum(l, n, x + 1j * y1)
        b = zn.real_zonal_sum(l, n, x + 1j * y2)
        worst = max(worst, float(np.max(np.abs(a - b))))
        exact_ok &= zn.real_zonal_sum(l, n, 1) == sum(zn.dim_h(p, l - p, n) for p in range(l + 1))
    return CheckResult("real_zonal_sum", worst <= tol and exact_ok, 50 * (min(P, 8) + 1), worst)


def run_suite(n: int, max_bidegree: int, tolerance: Optional[float] = None) -> list[CheckResult]:
    pa.check_dimension(n)
    t = (lambda default: tolerance if tolerance is not None else default)
    P = max_bidegree
    return [
        check_unity(n, P),
        check_published_error(),
        check_canonical(n, P),
        check_disc_forms(n, P, t(1e-12)),
        check_boundedness(n, P),
        check_monomial_expansion(n, P, t(1e-12)),
        check_differential_vs_integral(n, P, t(1e-10)),
        check_reproducing(n, P, t(1e-10)),
        check_plane_wave(n, t(1e-8)),
        check_poisson_szego(n, P, t(1e-6)),
        check_saalschutz_inner(n),
        check_chu_vandermonde(),
        check_real_zonal_sum(n, P, t(1e-10)),
    ]


def report(results: list[CheckResult]) -> dict:
    return {
        "passed": all(r.passed for r in results),
        "checks": [asdict(r) for r in results],
    }
