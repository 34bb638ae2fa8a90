import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mlfock.errors import CapacityError, DomainError
from mlfock.hermite import gauss_hermite_rule, hermite_functions
from mlfock.planar import build_planar_rule
from mlfock.quaternion import (
    QHermiteExpansion,
    QMLFockElement,
    Quaternion,
    SliceUnit,
    q_mul,
    qconj_array,
    qml_kernel,
    qml_kernel_inner,
    qml_reproducing_kernel,
    qmlb_forward,
    qmlb_forward_integral,
    qmul_array,
    reproducing_kernel_array,
    slice_decompose,
    slice_inner,
    slice_norm,
)
from mlfock.special import mittag_leffler
from mlfock.transform import ml_kernel

ONE = Quaternion(1.0)
I, J, K = Quaternion(0, 1.0), Quaternion(0, 0, 1.0), Quaternion(0, 0, 0, 1.0)

comp = st.floats(-10, 10)
quats = st.builds(Quaternion, comp, comp, comp, comp)


def test_q_mul_examples():
    assert q_mul(I, J) == K
    assert q_mul(J, I) == -K
    p = Quaternion(1.5, -2, 0.25, 3)
    assert q_mul(p, ONE) == p and q_mul(ONE, p) == p


@given(quats, quats)
def test_multiplicative_norm(p, s):
    assert abs(p * s) == pytest.approx(abs(p) * abs(s), rel=1e-13, abs=1e-290)


@given(quats)
def test_conj_product_is_real(p):
    c = p.conj() * p
    assert c.x0 == pytest.approx(p.norm2(), rel=1e-13, abs=1e-300)
    assert max(abs(c.x1), abs(c.x2), abs(c.x3)) <= 1e-12 * max(1.0, p.norm2())


@given(quats, quats, quats)
def test_associative(a, b, c):
    lhs, rhs = (a * b) * c, a * (b * c)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(a) * abs(b) * abs(c))


def test_array_product_matches_scalar():
    rng = np.random.default_rng(0)
    a, b = rng.normal(size=(2, 50, 4))
    prod = qmul_array(a, b)
    for x, y, z in zip(a, b, prod):
        assert np.allclose((Quaternion.from_array(x) * Quaternion.from_array(y)).as_array(), z)
    assert np.array_equal(qconj_array(a)[:, 1:], -a[:, 1:])


def test_slice_unit():
    u = SliceUnit.from_vector([1, 1, 1])
    assert abs(u.I * u.I - (-ONE)) <= 1e-13
    with pytest.raises(DomainError):
        SliceUnit(Quaternion(0.1, 1, 0, 0))
    with pytest.raises(DomainError):
        SliceUnit.from_vector([0, 0, 0])


def test_slice_decompose_examples():
    assert slice_decompose(Quaternion(3.0)) == (3.0, 0.0, None)
    x, y, u = slice_decompose(I)
    assert (x, y) == (0.0, 1.0) and u.I == I
    x, y, u = slice_decompose(Quaternion(1, 1, 1, 1))
    assert x == 1 and y == pytest.approx(math.sqrt(3))
    assert np.allclose(u.I.as_array(), np.array([0, 1, 1, 1]) / math.sqrt(3))


@given(quats)
def test_slice_decompose_reconstructs(p):
    x, y, u = slice_decompose(p)
    back = Quaternion(x) if u is None else Quaternion(x) + u.I * y
    assert abs(back - p) <= 1e-13 * max(1.0, abs(p))


def test_qml_kernel_real_point():
    x = np.linspace(-2, 2, 5)
    got = qml_kernel(1.5, Quaternion(0.7), x, 30)
    assert np.allclose(got[:, 0], ml_kernel(1.5, 0.7, x, 30))
    assert np.allclose(got[:, 1:], 0)


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
def test_qml_kernel_slice_restriction(q):
    rng = np.random.default_rng(1)
    x = np.linspace(-3, 3, 13)
    for _ in range(5):
        u = SliceUnit.random(rng)
        z = complex(*rng.normal(size=2))
        got = qml_kernel(q, Quaternion.from_complex(z, u), x, 40)
        ref = ml_kernel(q, z, x, 40)
        expected = np.stack([Quaternion.from_complex(v, u).as_array() for v in ref])
        assert np.max(np.abs(got - expected)) <= 1e-13 * np.max(np.abs(expected))
    # p = y i against z = i y
    got = qml_kernel(q, Quaternion(0, 0.8), 0.3, 40)
    ref = ml_kernel(q, 0.8j, 0.3, 40)
    assert got.x0 == pytest.approx(ref.real, abs=1e-14) and got.x1 == pytest.approx(ref.imag, abs=1e-14)


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
def test_qml_kernel_norm_and_proposition(q):
    rule = gauss_hermite_rule(120)
    p = Quaternion(0.3, -0.5, 0.7, 0.2)
    s = Quaternion(-0.4, 0.1, 0.9, 0.3)
    norm2 = qml_kernel_inner(q, p, p, rule, 60)
    assert norm2.x0 == pytest.approx(mittag_leffler(q, abs(p) ** 2, 1e-15).value.real, rel=1e-12)
    # <A^s, A^p> = K(p, s)
    assert abs(qml_kernel_inner(q, s, p, rule, 60) - qml_reproducing_kernel(q, p, s)) <= 1e-12


def test_reproducing_kernel_examples():
    p = Quaternion(0.3, 1, -2, 0.5)
    assert qml_reproducing_kernel(1.0, p, Quaternion(0.0)) == ONE
    p, s = Quaternion(0.2, 0.5, -0.3, 0.1), Quaternion(-0.6, 0.2, 0.4, 0.7)
    assert abs(qml_reproducing_kernel(1.3, p, s) - qml_reproducing_kernel(1.3, s, p).conj()) <= 1e-13


def test_reproducing_kernel_is_ordered_sum():
    # noncommutative: sum p^n s^n-bar differs from sum (p s-bar)^n
    q = 1.0
    p, s = Quaternion(0.2, 0.9, 0, 0), Quaternion(0.1, 0, 0.8, 0)
    ordered = qml_reproducing_kernel(q, p, s)
    prod = p * s.conj()
    naive = Quaternion.from_array(sum((prod**n).as_array() / math.factorial(n) for n in range(30)))
    assert abs(ordered - naive) > 1e-3
    arr = reproducing_kernel_array(q, s, p.as_array()[None, :], 30)[0]
    assert np.allclose(arr, ordered.as_array(), atol=1e-14)


def test_qmlb_forward_examples():
    f = qmlb_forward(QHermiteExpansion(np.eye(4)[[0, 0, 2]] * [[0], [0], [1]]), 2.0)
    assert f.degree == 2 and f.norm() == 1
    zero = qmlb_forward(QHermiteExpansion(np.zeros((0, 4))), 2.0)
    assert zero.degree == -1 and zero.norm() == 0
    f = qmlb_forward(QHermiteExpansion([J]), 1.0)
    assert np.array_equal(f.coeffs[0], J.as_array()) and f.norm() == 1


def test_qmlb_basis_image_by_integral():
    rule = gauss_hermite_rule(60)
    q = 1.5
    c = Quaternion(0.5, -1, 2, 0.25)
    for m in range(5):
        phi = lambda x, m=m: hermite_functions(m, x)[m][:, None] * c.as_array()
        p = Quaternion(0.4, 0.3, -0.6, 0.2)
        got = qmlb_forward_integral(phi, q, p, rule, 30)
        ref = QMLFockElement.basis(q, m, c)(p)
        assert abs(got - ref) <= 1e-12


def test_q_expansion_values():
    phi = QHermiteExpansion([[1, 0, 0, 0], [0, 0, 1, 0]])
    x = np.array([0.0, 1.0])
    v = phi(x)
    t = hermite_functions(1, x)
    assert np.allclose(v[:, 0], t[0]) and np.allclose(v[:, 2], t[1])
    assert phi.norm() == pytest.approx(math.sqrt(2))


def test_element_evaluation_right_coefficients():
    p = Quaternion(0.1, 0.7, 0.2, -0.4)
    c = Quaternion(0, 0, 1, 0)
    f = QMLFockElement.basis(1.0, 1, c)
    assert f(p) == p * c
    assert abs(f(p) - c * p) > 0.1


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
def test_slice_norm(q):
    rng = np.random.default_rng(2)
    rule = build_planar_rule(q, 80, 64)
    for m in (0, 4, 9):
        assert slice_norm(QMLFockElement.basis(q, m), SliceUnit.random(rng), rule) == pytest.approx(1, abs=1e-10)
    assert slice_norm(QMLFockElement(q, np.zeros((3, 4))), SliceUnit.random(rng), rule) == 0
    f = QMLFockElement(q, rng.normal(size=(11, 4)))
    a = slice_norm(f, SliceUnit.random(rng), rule)
    b = slice_norm(f, SliceUnit.random(rng), rule)
    assert a == pytest.approx(b, abs=1e-8)
    assert a == pytest.approx(f.norm(), abs=1e-8)


def test_slice_norm_capacity():
    rule = build_planar_rule(1.0, 4, 8)
    with pytest.raises(CapacityError):
        slice_norm(QMLFockElement.basis(1.0, 5), SliceUnit.from_vector([0, 0, 1]), rule)
    with pytest.raises(DomainError):
        slice_norm(QMLFockElement.basis(2.0, 1), SliceUnit.from_vector([0, 0, 1]), rule)


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0])
def test_slice_reproducing_property(q):
    rng = np.random.default_rng(4)
    rule = build_planar_rule(q, 80, 128)
    f = QMLFockElement(q, rng.normal(size=(9, 4)))
    for _ in range(3):
        u = SliceUnit.random(rng)
        s = Quaternion.from_complex(complex(*rng.uniform(-1, 1, 2)), u)
        N = mittag_leffler(q, 5 * abs(s), 1e-16).terms_used
        got = slice_inner(f.evaluate, lambda P: reproducing_kernel_array(q, s, P, N), u, rule)
        assert abs(got - f(s)) <= 1e-7 * (1 + abs(f(s)))
