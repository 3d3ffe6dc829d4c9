import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from czonal import zonal as zn
from czonal.errata import erroneous_unity_sum, erroneous_unity_terms
from czonal.polyalg import DimensionError

unit_disc = st.builds(
    lambda r, t: np.sqrt(r) * np.exp(1j * t),
    st.floats(0, 1),
    st.floats(0, 2 * np.pi),
)


# -- dimensions and gamma --------------------------------------------------------------


def test_dim_examples():
    for n in range(2, 8):
        assert zn.dim_h(0, 0, n) == 1
        assert zn.dim_h(1, 0, n) == n
    assert zn.dim_h(1, 1, 2) == 3


def test_dim_sums_to_real_harmonic_dimension():
    # n=2 is the 3-sphere: dim H^l = (l+1)^2
    for l in range(10):
        assert sum(zn.dim_h(p, l - p, 2) for p in range(l + 1)) == (l + 1) ** 2


def test_dim_rejects_circle():
    with pytest.raises(DimensionError):
        zn.dim_h(1, 1, 1)


@pytest.mark.parametrize("n", [2, 3, 6])
def test_gamma_examples(n):
    a = n - 2
    assert zn.gamma_coefficient(1, 1, 0, n) == Fraction(a + 1, a + 2)
    assert zn.gamma_coefficient(1, 1, 1, n) == Fraction(1, a + 2)


def test_gamma_out_of_range():
    with pytest.raises(ValueError):
        zn.gamma_coefficient(2, 1, 2, 3)


def test_decomposition_of_unity_exact():
    for n in range(2, 11):
        for p in range(21):
            for q in range(21):
                assert sum(zn.gamma_coefficient(p, q, k, n) for k in range(min(p, q) + 1)) == 1


def test_gamma_at_large_arguments_is_exact():
    g = zn.gamma_coefficient(20, 20, 10, 10)
    assert isinstance(g, Fraction) and g > 0


def test_erroneous_sum_regression():
    assert erroneous_unity_terms(2, 2, 3) == [12, Fraction(12, 5), Fraction(1, 2)]
    assert erroneous_unity_sum(2, 2, 3) == Fraction(149, 10)
    # the same case done right: bidegree (2, 3) on C^2
    assert sum(zn.gamma_coefficient(2, 3, k, 2) for k in range(3)) == 1
    assert zn.errata.erroneous_unity_sum is erroneous_unity_sum


# -- disc polynomials ----------------------------------------------------------------------


def test_disc_poly_examples():
    assert zn.disc_poly(0, 0, 3).coeffs == (1,)
    for p in range(5):
        assert zn.disc_poly(p, 0, 2).coeffs == (1,)
    assert zn.disc_poly(1, 1, 0).coeffs == (2, -1)


def test_leading_coefficient():
    for p, q, a in [(3, 2, 1), (5, 5, 4), (0, 7, 2)]:
        t = zn.disc_poly(p, q, a)
        f = math.factorial
        # (a+1)_{p+q} / ((a+1)_p (a+1)_q)
        c0 = Fraction(f(a + p + q) * f(a), f(a + p) * f(a + q))
        assert t.coeffs[0] == c0


def test_disc_poly_exact_at_one():
    for a in range(7):
        for p in range(11):
            for q in range(11):
                assert zn.disc_poly_eval(zn.disc_poly(p, q, a), 1) == 1


def test_disc_poly_eval_examples():
    assert zn.disc_poly_eval(zn.disc_poly(1, 1, 0), 0j) == -1
    for p, q in [(1, 0), (3, 1), (0, 2)]:
        assert zn.disc_poly_eval(zn.disc_poly(p, q, 2), 0j) == 0
    w = 0.3 + 0.4j
    assert zn.disc_poly_eval(zn.disc_poly(1, 1, 0), w) == pytest.approx(2 * abs(w) ** 2 - 1, abs=1e-15)


def test_disc_poly_against_frozen_oracle(oracle):
    for rec in oracle["disc_poly"]:
        w = complex(rec["w"])
        want = complex(float(rec["re"]), float(rec["im"]))
        got = zn.disc_poly_eval(zn.disc_poly(rec["p"], rec["q"], rec["alpha"]), w)
        assert abs(got - want) <= 1e-15, rec
        jac = zn.disc_poly_via_jacobi(rec["p"], rec["q"], rec["alpha"], w)
        assert abs(jac - want) <= 1e-13, rec


def test_jacobi_form_examples():
    assert zn.disc_poly_via_jacobi(4, 2, 3, 1.0) == pytest.approx(1.0, abs=1e-15)
    w = 0.1 - 0.7j
    assert zn.disc_poly_via_jacobi(1, 1, 0, w) == pytest.approx(2 * abs(w) ** 2 - 1, abs=1e-15)


def test_form_equivalence(grid):
    """Table form against Jacobi form, relative to the sup norm (|W| <= W(1) = 1)."""
    for a in range(7):
        for p in range(11):
            for q in range(11):
                x = zn.disc_poly_eval(zn.disc_poly(p, q, a), grid)
                y = zn.disc_poly_via_jacobi(p, q, a, grid)
                assert np.max(np.abs(x - y) / np.maximum(np.abs(y), 1.0)) <= 1e-12


def test_boundedness(grid):
    for a in range(7):
        for p in range(11):
            for q in range(11):
                assert np.max(np.abs(zn.disc_poly_eval(zn.disc_poly(p, q, a), grid))) <= 1 + 1e-10


@given(unit_disc, st.integers(0, 8), st.integers(0, 8), st.integers(0, 6))
def test_conjugation_symmetries(w, p, q, a):
    W = zn.disc_poly_eval(zn.disc_poly(p, q, a), w)
    assert abs(zn.disc_poly_eval(zn.disc_poly(p, q, a), np.conj(w)) - np.conj(W)) <= 1e-13
    assert abs(zn.disc_poly_eval(zn.disc_poly(q, p, a), w) - np.conj(W)) <= 1e-13


def test_exact_rational_evaluation():
    v = zn.disc_poly_eval(zn.disc_poly(2, 2, 1), Fraction(1, 2))
    t = zn.disc_poly(2, 2, 1)
    assert v == sum(c * Fraction(1, 4) ** (2 - j) for j, c in enumerate(t.coeffs))


def test_outside_disc_is_logged(caplog):
    with caplog.at_level("DEBUG", logger="czonal.zonal"):
        zn.disc_poly_eval(zn.disc_poly(1, 1, 0), 1.5 + 0j)
    assert "outside the closed disc" in caplog.text


# -- kernels -----------------------------------------------------------------------------------


def test_kernel_examples():
    eta = np.array([1, 1j]) / np.sqrt(2)
    spec = zn.ZonalKernelSpec(2, 1, 2, tuple(eta))
    assert zn.zonal_kernel_eval(spec, eta) == pytest.approx(1.0, abs=1e-12)
    perp = np.array([1, -1j]) / np.sqrt(2)
    assert abs(np.vdot(perp, eta)) < 1e-15
    assert abs(zn.zonal_kernel_eval(spec, perp)) <= 1e-15
    # (eta|xi) = 1/sqrt(2) for (p,q) = (1,1), n = 2 gives 2*(1/2) - 1 = 0
    spec11 = zn.ZonalKernelSpec(1, 1, 2, (1.0, 0.0))
    xi = np.array([1, 1]) / np.sqrt(2)
    assert abs(zn.zonal_kernel_eval(spec11, xi)) <= 1e-15


def test_kernel_orientation():
    # Z(xi) = W((eta|xi)) with (u|v) = sum u_j conj(v_j)
    eta = np.array([1.0, 0.0, 0.0])
    xi = np.array([0.6j, 0.8, 0.0])
    spec = zn.ZonalKernelSpec(1, 0, 3, tuple(eta))
    assert zn.zonal_kernel_eval(spec, xi) == pytest.approx(-0.6j)


def test_kernel_spec_validation():
    with pytest.raises(ValueError):
        zn.ZonalKernelSpec(1, 1, 2, (1.0, 1.0))
    with pytest.raises(ValueError):
        zn.ZonalKernelSpec(1, 1, 3, (1.0, 0.0))
    spec = zn.ZonalKernelSpec(1, 1, 2, (1.0, 0.0))
    with pytest.raises(ValueError):
        zn.zonal_kernel_eval(spec, np.array([1.0, 0.0, 0.0]))


# -- monomial expansion and the real summation formula -------------------------------------


def test_monomial_expansion_examples():
    assert zn.monomial_expansion(4, 0, 3) == [((4, 0), 1)]
    assert zn.monomial_expansion(1, 1, 2) == [((1, 1), Fraction(1, 2)), ((0, 0), Fraction(1, 2))]
    w = 0.3 + 0.4j
    rhs = sum(float(g) * zn.disc_poly_eval(zn.disc_poly(a, b, 1), w) for (a, b), g in zn.monomial_expansion(2, 1, 3))
    assert abs(w**2 * np.conj(w) - rhs) <= 1e-13


def test_monomial_expansion_on_grid(grid):
    for n in (2, 3, 5):
        for p in range(9):
            for q in range(9):
                rhs = sum(float(g) * zn.disc_poly_eval(zn.disc_poly(a, b, n - 2), grid)
                          for (a, b), g in zn.monomial_expansion(p, q, n))
                assert np.max(np.abs(grid**p * np.conj(grid) ** q - rhs)) <= 1e-12


def test_monomial_expansion_is_exact():
    # at rational real w both sides are exact rationals
    w = Fraction(2, 7)
    for p, q, n in [(3, 2, 2), (4, 4, 3), (5, 1, 4)]:
        rhs = sum(g * zn.disc_poly_eval(zn.disc_poly(a, b, n - 2), w) for (a, b), g in zn.monomial_expansion(p, q, n))
        assert rhs == w ** (p + q)


def test_real_zonal_sum_examples():
    w = np.array([0.2 + 0.3j, -0.5j, 0.9])
    assert np.allclose(zn.real_zonal_sum(0, 3, w), 1.0)
    for n in (2, 3):
        for l in range(9):
            assert zn.real_zonal_sum(l, n, 1) == sum(zn.dim_h(p, l - p, n) for p in range(l + 1))
    t = 0.6
    assert zn.real_zonal_sum(2, 2, 1j * t) == pytest.approx(zn.real_zonal_sum(2, 2, -1j * t), abs=1e-14)


@pytest.mark.parametrize("n", [2, 3])
def test_real_zonal_sum_depends_on_real_part(n):
    rng = np.random.default_rng(3)
    x = rng.uniform(-0.99, 0.99, 50)
    room = np.sqrt(1 - x**2)
    w1 = x + 1j * rng.uniform(0, 1, 50) * room
    w2 = x - 1j * rng.uniform(0, 1, 50) * room
    for l in range(9):
        assert np.max(np.abs(zn.real_zonal_sum(l, n, w1) - zn.real_zonal_sum(l, n, w2))) <= 1e-10


# -- CSV -----------------------------------------------------------------------------------


def test_gamma_csv():
    text = zn.gamma_table_csv(1, 2)
    assert text.splitlines() == [
        "p,q,k,gamma_num,gamma_den",
        "0,0,0,1,1",
        "0,1,0,1,1",
        "1,0,0,1,1",
        "1,1,0,1,2",
        "1,1,1,1,2",
    ]


def test_disc_poly_csv():
    assert zn.disc_poly_csv(zn.disc_poly(1, 1, 0)).splitlines() == ["j,c_num,c_den", "0,2,1", "1,-1,1"]
