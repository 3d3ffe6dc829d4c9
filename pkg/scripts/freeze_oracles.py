"""Regenerate tests/data/oracle_values.json from high-precision mpmath.

Nothing here imports czonal; the values are an independent reference.
Run:  python3 scripts/freeze_oracles.py
"""
import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40
OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "oracle_values.json"

W_POINTS = ["0", "1", "-1", "0.5", "0.3+0.4j", "-0.2+0.7j", "0.6-0.6j", "0.95j", "0.1+0.05j"]


def s(x):
    return mp.nstr(x, 30)


def jacobi_sum(m, mu, nu, t):
    """P_m^{(mu,nu)}(t) from the explicit binomial sum in (t-1)/2 and (t+1)/2."""
    a, b = (t - 1) / 2, (t + 1) / 2
    return mp.fsum(mp.binomial(m + mu, m - k) * mp.binomial(m + nu, k) * a**k * b ** (m - k)
                   for k in range(m + 1))


def rat(x):
    if "/" in x:
        num, den = x.split("/")
        return mp.mpf(num) / mp.mpf(den)
    return mp.mpf(x)


def bessel():
    out = []
    for nu in range(0, 22):
        for r in ["0.5", "1", "2", "5", "10", "20"]:
            out.append({"nu": nu, "r": r, "J": s(mp.besselj(nu, mp.mpf(r)))})
    return out


def jacobi():
    out = []
    for mu in ["0", "1", "3", "6", "1/2"]:
        for nu in ["0", "2", "5"]:
            for m in [0, 1, 2, 5, 12, 30]:
                for t in ["-1", "-0.9", "-0.5", "-0.1", "0", "0.3", "0.5", "0.77", "1"]:
                    val = jacobi_sum(m, rat(mu), rat(nu), mp.mpf(t))
                    out.append({"mu": mu, "nu": nu, "m": m, "t": t, "P": s(val)})
    return out


def disc_poly_value(p, q, alpha, w):
    m, d = min(p, q), abs(p - q)
    t = 2 * abs(w) ** 2 - 1
    jac = jacobi_sum(m, alpha, d, t) / jacobi_sum(m, alpha, d, mp.mpf(1))
    return w ** (p - m) * mp.conj(w) ** (q - m) * jac


def disc_polys():
    out = []
    for alpha in [0, 1, 4]:
        for p in range(7):
            for q in range(7):
                for ws in W_POINTS:
                    w = mp.mpc(complex(ws))
                    v = disc_poly_value(p, q, alpha, w)
                    out.append({"p": p, "q": q, "alpha": alpha, "w": ws, "re": s(v.real), "im": s(v.imag)})
    return out


def poisson_szego():
    # factorial series form, valid for p, q >= 1; S = r^(p+q) when p or q is 0
    out = []
    for n in [2, 3]:
        for r in ["0.3", "0.5", "0.9"]:
            rr = mp.mpf(r)
            for p in range(5):
                for q in range(5):
                    if p == 0 or q == 0:
                        v = rr ** (p + q)
                    else:
                        f = mp.factorial
                        pre = f(p + n - 1) * f(q + n - 1) / (f(n - 1) * f(p - 1) * f(q - 1))
                        # plain summation: r <= 0.9 leaves terms below 1e-50 by k = 600
                        tail = mp.fsum(f(p + k - 1) * f(q + k - 1) / f(n - 1 + p + q + k)
                                       * rr ** (2 * k) / f(k) for k in range(600))
                        v = rr ** (p + q) * pre * tail
                    out.append({"n": n, "r": r, "p": p, "q": q, "S": s(v)})
    return out


def plane_wave():
    out = []
    for n in [2, 3]:
        for r in ["0.5", "2", "5"]:
            rr = mp.mpf(r)
            for p in range(6):
                for q in range(6):
                    v = mp.factorial(n - 1) * (1j) ** (p + q) * (rr / 2) ** (1 - n) * mp.besselj(p + q + n - 1, rr)
                    v = mp.mpc(v)
                    out.append({"n": n, "r": r, "p": p, "q": q, "re": s(v.real), "im": s(v.imag)})
    return out


def exp_re_integrals():
    # d_{p,q} of exp(Re w) as a disc integral against conj(W), in polar coordinates
    mp.mp.dps = 20
    out = []
    for n in [2, 3]:
        alpha = n - 2
        for p in range(3):
            for q in range(3):
                def integrand(rho, th):
                    w = rho * mp.expj(th)
                    return (mp.exp(w.real) * mp.conj(disc_poly_value(p, q, alpha, w))
                            * (1 - rho**2) ** alpha * rho)
                v = (alpha + 1) / mp.pi * mp.quad(integrand, [0, 1], [0, mp.pi, 2 * mp.pi])
                v = mp.mpc(v)
                out.append({"n": n, "p": p, "q": q, "re": mp.nstr(v.real, 18), "im": mp.nstr(v.imag, 18)})
    mp.mp.dps = 40
    return out


def main():
    data = {
        "bessel_j": bessel(),
        "jacobi_p": jacobi(),
        "disc_poly": disc_polys(),
        "poisson_szego": poisson_szego(),
        "plane_wave": plane_wave(),
        "exp_re_coefficients": exp_re_integrals(),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {OUT} ({sum(len(v) for v in data.values())} values)")


if __name__ == "__main__":
    main()
