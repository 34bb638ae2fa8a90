import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlfock.errors import CapacityError, DomainError, TruncationError
from mlfock.hermite import HermiteExpansion, gauss_hermite_rule, hermite_function, project_signal
from mlfock.planar import build_planar_rule, ml_inner
from mlfock.special import mittag_leffler
from mlfock.transform import (
    MLFockElement,
    kernel_matrix,
    kernel_tail_bound,
    kernel_truncation,
    ml_kernel,
    ml_norm,
    mlb_forward_coeff,
    mlb_forward_integral,
    mlb_inverse,
    mlb_inverse_coeff,
)


def bargmann_closed_form(z, x):
    zc = np.conj(z)
    return math.pi**-0.25 * np.exp(-x**2 / 2 - zc**2 / 2 + math.sqrt(2) * zc * x)


def test_kernel_at_origin():
    x = np.linspace(-3, 3, 7)
    for q in (0.5, 2.0):
        assert np.allclose(ml_kernel(q, 0, x), hermite_function(0, x), atol=1e-16)


def test_kernel_q1_closed_form():
    rng = np.random.default_rng(0)
    z = rng.normal(size=20) + 1j * rng.normal(size=20)
    x = rng.uniform(-3, 3, size=20)
    assert np.allclose(ml_kernel(1.0, z, x, 80), bargmann_closed_form(z, x), rtol=1e-12, atol=1e-14)


def test_kernel_matrix_shape_and_values():
    z = np.array([0.3, 1j])
    x = np.array([-1.0, 0.0, 2.0])
    K = kernel_matrix(1.0, z, x, 60)
    assert K.shape == (2, 3)
    assert np.allclose(K, bargmann_closed_form(z[:, None], x[None, :]), rtol=1e-12)


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
def test_kernel_norm(q):
    rule = gauss_hermite_rule(120)
    for z in (0.5, 1.2 - 0.3j, 1.5j):
        N = kernel_truncation(q, abs(z), 1e-15)
        A = ml_kernel(q, z, rule.nodes, N)
        norm2 = float(np.sum(rule.scaled_weights * np.abs(A) ** 2))
        assert norm2 == pytest.approx(mittag_leffler(q, abs(z) ** 2, 1e-15).value.real, rel=1e-12)


def test_tail_bound_is_rigorous():
    x = np.linspace(-10, 10, 401)
    for q in (0.5, 1.0, 2.0):
        for N in (10, 30):
            z = 1.5
            full = ml_kernel(q, z, x, 200)
            part = ml_kernel(q, z, x, N)
            assert np.max(np.abs(full - part)) <= kernel_tail_bound(q, z, N) * (1 + 1e-12)


def test_truncation_budget():
    assert kernel_truncation(1.0, 0.0) == 0
    with pytest.raises(TruncationError):
        ml_kernel(0.5, 3.0, 0.0, N=10, tol=1e-12)
    with pytest.raises(TruncationError):
        kernel_truncation(0.1, 50.0, 1e-12)
    with pytest.raises(DomainError):
        ml_kernel(1.0, 0.5, 0.0, N=201)


def test_forward_coeff_examples():
    for m in range(5):
        f = mlb_forward_coeff(HermiteExpansion.basis(m), 1.7)
        z = 0.4 + 0.9j
        assert f(z) == pytest.approx(z**m / math.sqrt(math.gamma(1.7 * m + 1)), rel=1e-14)
    zero = mlb_forward_coeff(HermiteExpansion([]), 2.0)
    assert zero.degree == -1 and zero(1.0) == 0 and ml_norm(zero) == 0
    f = mlb_forward_coeff(HermiteExpansion(np.array([1, 1j]) / math.sqrt(2)), 1.0)
    assert np.allclose(f.coeffs, np.array([1, 1j]) / math.sqrt(2))
    assert ml_norm(f) == pytest.approx(1.0, rel=1e-15)


def test_forward_integral_examples():
    rule = gauss_hermite_rule(60)
    psi = lambda m: (lambda x: hermite_function(m, x))
    assert mlb_forward_integral(psi(3), 2.0, 1.0, rule) == pytest.approx(0.037267799624996496, rel=1e-12)
    assert mlb_forward_integral(psi(0), 0.7, 0.0, rule) == pytest.approx(1.0, rel=1e-14)
    assert mlb_forward_integral(psi(1), 1.0, 2j, rule) == pytest.approx(2j, rel=1e-12)


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0, 3.0])
def test_forward_paths_agree(q):
    rng = np.random.default_rng(1)
    rule = gauss_hermite_rule(80)
    signal = lambda x: (1 + x - 0.5j * x**3) * np.exp(-x**2 / 2)
    f = mlb_forward_coeff(project_signal(signal, 10, rule), q)
    z = rng.normal(size=10) + 1j * rng.normal(size=10)
    assert np.max(np.abs(mlb_forward_integral(signal, q, z, rule, 40) - f(z))) <= 1e-7


def test_inverse_examples():
    x = np.linspace(-3, 3, 9)
    for q in (0.5, 2.0):
        rule = build_planar_rule(q, 80, 64)
        for m in (0, 3, 7):
            got = mlb_inverse(MLFockElement.basis(q, m), x, rule, 20)
            assert np.allclose(got, hermite_function(m, x), atol=1e-12)
        assert np.allclose(mlb_inverse(MLFockElement.zero(q), x, rule, 20), 0)
    rule = build_planar_rule(2.0, 80, 64)
    f = MLFockElement(2.0, [1, 1])
    assert mlb_inverse(f, 0.0, rule, 10) == pytest.approx(0.7511255444649425, rel=1e-12)


def test_inverse_unnormalized_flag():
    rule = build_planar_rule(1.5, 60, 32)
    f = MLFockElement.basis(1.5, 2)
    a = mlb_inverse(f, 0.3, rule, 8)
    b = mlb_inverse(f, 0.3, rule, 8, normalized=False)
    assert b == pytest.approx(a * 1.5 * math.pi, rel=1e-14)


def test_inverse_capacity_errors():
    rule = build_planar_rule(1.0, 10, 16)
    with pytest.raises(CapacityError):
        mlb_inverse(MLFockElement.basis(1.0, 5), 0.0, rule, 15)  # radial
    with pytest.raises(CapacityError):
        mlb_inverse(MLFockElement.basis(1.0, 2), 0.0, build_planar_rule(1.0, 40, 16), 16)  # angular
    with pytest.raises(DomainError):
        mlb_inverse(MLFockElement.basis(2.0, 1), 0.0, rule, 5)


@given(st.integers(0, 15), st.integers(0, 2**32 - 1), st.sampled_from([0.5, 1.0, 2.5]))
@settings(max_examples=40, deadline=None)
def test_coefficient_isometry_and_surjectivity(deg, seed, q):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
    f = MLFockElement(q, c)
    phi = mlb_inverse_coeff(f)
    assert np.array_equal(mlb_forward_coeff(phi, q).coeffs, f.coeffs)
    assert abs(ml_norm(f) - phi.norm()) <= 1e-12 * max(1, phi.norm())


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
def test_norm_matches_quadrature(q):
    rng = np.random.default_rng(3)
    rule = build_planar_rule(q, 80, 64)
    f = MLFockElement(q, rng.normal(size=10) + 1j * rng.normal(size=10))
    assert math.sqrt(ml_inner(f, f, rule).real) == pytest.approx(ml_norm(f), abs=1e-8)
    assert ml_norm(MLFockElement(q, [0.6, 0.8])) == pytest.approx(1.0, rel=1e-15)


def test_element_algebra():
    a = MLFockElement(1.0, [1, 2])
    b = MLFockElement(1.0, [0, 0, 3])
    assert np.array_equal((a + b).coeffs, [1, 2, 3])
    assert np.array_equal((a * 2j).coeffs, [2j, 4j])
    assert MLFockElement(1.0, [1, 0, 0]).degree == 0
    assert MLFockElement(1.0, [1, 2, 3])(0.5) == pytest.approx(1 + 2 * 0.5 + 3 * 0.25 / math.sqrt(2))
