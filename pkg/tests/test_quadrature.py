import json
from fractions import Fraction

import numpy as np
import pytest

from czonal import polyalg as pa
from czonal import quadrature as qd
from czonal import zonal as zn
from czonal.polyalg import BiPoly


def test_constant_integrates_to_one():
    for a in range(7):
        rule = qd.build_disc_rule(a, 5, 7)
        assert abs(qd.disc_integrate(lambda w: np.ones_like(w), rule) - 1) <= 1e-14
        assert qd.disc_integrate(lambda w: 2.5 + 0 * w, rule) == pytest.approx(2.5, abs=1e-14)


def test_disc_rule_examples():
    rule = qd.build_disc_rule(0, 3, 4)
    assert qd.disc_integrate(lambda w: np.abs(w) ** 2, rule) == pytest.approx(0.5, abs=1e-15)
    assert abs(qd.disc_integrate(lambda w: w, rule)) <= 1e-15


def test_rule_rejects_bad_sizes():
    with pytest.raises(ValueError):
        qd.build_disc_rule(0, 0, 3)
    with pytest.raises(ValueError):
        qd.build_disc_rule(0, 3, 0)
    with pytest.raises(ValueError):
        qd.build_disc_rule(-1, 3, 3)


@pytest.mark.parametrize("alpha", [0, 1, 2, 5])
def test_polynomial_exactness(alpha):
    rule = qd.build_disc_rule(alpha, 7, 26)
    for a in range(13):
        for b in range(13):
            got = qd.disc_integrate(lambda w: w**a * np.conj(w) ** b, rule)
            assert abs(got - float(qd.exact_disc_moment(a, b, alpha))) <= 1e-13


def test_exact_moment_values():
    assert qd.exact_disc_moment(1, 1, 0) == Fraction(1, 2)
    assert qd.exact_disc_moment(2, 1, 3) == 0
    # |w|^2 on the disc for n has mean 1/n
    for n in range(2, 7):
        assert qd.exact_disc_moment(1, 1, n - 2) == Fraction(1, n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_disc_polynomial_orthogonality(n):
    rule = qd.build_disc_rule(n - 2, 8, 17)
    for p in range(6):
        for q in range(6):
            W = zn.disc_poly(p, q, n - 2)
            mean = qd.disc_integrate(lambda w: zn.disc_poly_eval(W, w), rule)
            norm = qd.disc_integrate(lambda w: np.abs(zn.disc_poly_eval(W, w)) ** 2, rule)
            if (p, q) != (0, 0):
                assert abs(mean) <= 1e-12
            assert abs(norm - 1 / zn.dim_h(p, q, n)) <= 1e-12


def test_integral_coefficient_examples():
    for n in (2, 3, 4):
        rule = qd.build_disc_rule(n - 2, 4, 6)
        one = lambda w: np.ones_like(w)
        for p, q in [(1, 0), (0, 2), (2, 2)]:
            assert abs(qd.integral_coefficient(one, p, q, n, rule)) <= 1e-14
        assert qd.integral_coefficient(lambda w: w, 1, 0, n, rule) == pytest.approx(1 / n, abs=1e-14)
        sq = lambda w: np.abs(w) ** 2
        assert qd.integral_coefficient(sq, 1, 1, n, rule) == pytest.approx(1 / (n * (n + 1)), abs=1e-12)


def test_integral_coefficient_orientation():
    # w has a (1,0) component only; the conjugate pairing keeps it there
    rule = qd.build_disc_rule(1, 4, 6)
    assert abs(qd.integral_coefficient(lambda w: w, 0, 1, 3, rule)) <= 1e-15


def test_integral_coefficient_checks_alpha():
    with pytest.raises(ValueError):
        qd.integral_coefficient(lambda w: w, 1, 0, 3, qd.build_disc_rule(0, 3, 3))


def test_rule_json_round_trip():
    rule = qd.build_disc_rule(2, 6, 9)
    data = json.loads(json.dumps(rule.to_dict()))
    assert set(data) == {"alpha", "radial", "angular_points"}
    assert qd.DiscRule.from_dict(data) == rule


def test_rule_metadata_states_reduction():
    assert "fsum" in qd.build_disc_rule(0, 2, 2).reduction
    assert qd.build_sphere_rule(3, 2, 3).to_dict()["reduction"] == qd.REDUCTION


# -- sphere ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sphere_basics(n):
    rule = qd.build_sphere_rule(n, 4, 7)
    assert abs(qd.sphere_integrate(lambda x: np.ones(len(x)), n, rule) - 1) <= 1e-12
    for j in range(n):
        val = qd.sphere_integrate(lambda x: np.abs(x[:, j]) ** 2, n, rule)
        assert val == pytest.approx(1 / n, abs=1e-14)


def test_sphere_points_are_unit():
    pts, wts = qd.build_sphere_rule(3, 3, 5).nodes()
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0)
    assert abs(wts.sum() - 1) <= 1e-14


def test_sphere_rule_dimension_checked():
    with pytest.raises(ValueError):
        qd.sphere_integrate(lambda x: np.ones(len(x)), 3, qd.build_sphere_rule(2, 2, 2))


@pytest.mark.parametrize("n", [2, 3])
def test_harmonics_of_different_bidegree_orthogonal(n):
    rule = qd.build_sphere_rule(n, 5, 9)
    z, zb = BiPoly.z, BiPoly.zbar
    Y1 = pa.canonical_decompose(z(n, 0) * zb(n, 1)).components[0]
    Y2 = pa.canonical_decompose(z(n, 0) * z(n, 0) * zb(n, 0)).components[0]
    Y3 = pa.canonical_decompose(z(n, 1) * zb(n, 1)).components[0]
    assert abs(qd.sphere_integrate(lambda x: Y1(x) * np.conj(Y2(x)), n, rule)) <= 1e-10
    assert abs(qd.sphere_integrate(lambda x: Y1(x) * np.conj(Y3(x)), n, rule)) <= 1e-10


@pytest.mark.parametrize("n", [2, 3])
def test_zonal_sphere_integral_reduces_to_disc(n):
    rng = np.random.default_rng(n)
    eta = rng.normal(size=n) + 1j * rng.normal(size=n)
    eta /= np.linalg.norm(eta)
    phi = lambda w: np.exp(np.real(w)) * (1 + w * w)
    srule = qd.build_sphere_rule(n, 14, 29)
    drule = qd.build_disc_rule(n - 2, 14, 29)
    s = qd.sphere_integrate(qd.zonal_function(phi, eta), n, srule)
    d = qd.disc_integrate(phi, drule)
    assert abs(s - d) <= 1e-12


@pytest.mark.parametrize("n", [2, 3])
def test_reproducing_identity_on_sphere(n):
    rule = qd.build_sphere_rule(n, 7, 13)
    eta = np.zeros(n, dtype=complex)
    eta[0] = 1
    for p in range(4):
        for q in range(4):
            spec = zn.ZonalKernelSpec(p, q, n, tuple(eta))
            Z = lambda x: zn.zonal_kernel_eval(spec, x)
            val = qd.sphere_integrate(lambda x: np.abs(Z(x)) ** 2, n, rule)
            assert abs(zn.dim_h(p, q, n) * val - 1) <= 1e-10


def test_pole_change_invariance():
    n = 3
    rng = np.random.default_rng(0)
    rule = qd.build_sphere_rule(n, 6, 11)
    phi = lambda w: np.abs(w) ** 4 + w * np.conj(w) ** 3
    vals = []
    for _ in range(3):
        eta = rng.normal(size=n) + 1j * rng.normal(size=n)
        eta /= np.linalg.norm(eta)
        vals.append(qd.sphere_integrate(qd.zonal_function(phi, eta), n, rule))
    assert max(abs(v - vals[0]) for v in vals) <= 1e-12
