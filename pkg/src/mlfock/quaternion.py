"""Quaternions, slices and the quaternionic Mittag-Leffler-Fock space.

Scalar values use :class:`Quaternion`; bulk evaluation works on arrays whose
last axis holds the components ``(x0, x1, x2, x3)`` along ``1, i, j, k``.
Slice regular power series carry their coefficients on the right,
:math:`f(p) = \\sum_m e_{m,q}(p)\\,c_m`, and the inner product on
:math:`L^2(\\mathbb{R},\\mathbb{H})` is :math:`\\langle\\phi,\\psi\\rangle = \\int\\bar\\psi\\,\\phi`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import CapacityError, DomainError
from .hermite import GaussHermiteRule, hermite_functions
from .planar import PlanarRule
from .special import DEFAULT_TOL, OrderLike, as_order, inv_gamma, inv_sqrt_gamma, mittag_leffler
from .transform import DEFAULT_TRUNCATION


@dataclass(frozen=True)
class Quaternion:
    x0: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    @classmethod
    def from_array(cls, a) -> Quaternion:
        a = np.asarray(a, dtype=float)
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    @classmethod
    def from_complex(cls, z: complex, unit: SliceUnit | Quaternion) -> Quaternion:
        """The point ``Re z + I Im z`` of the slice through *unit*."""
        I = unit.I if isinstance(unit, SliceUnit) else unit
        z = complex(z)
        return cls(z.real, z.imag * I.x1, z.imag * I.x2, z.imag * I.x3)

    def as_array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2, self.x3])

    @property
    def real(self) -> float:
        return self.x0

    @property
    def imag(self) -> Quaternion:
        return Quaternion(0.0, self.x1, self.x2, self.x3)

    def conj(self) -> Quaternion:
        return Quaternion(self.x0, -self.x1, -self.x2, -self.x3)

    def norm2(self) -> float:
        return self.x0**2 + self.x1**2 + self.x2**2 + self.x3**2

    def __abs__(self) -> float:
        return math.hypot(self.x0, self.x1, self.x2, self.x3)

    def __add__(self, other) -> Quaternion:
        other = _coerce(other)
        return Quaternion(self.x0 + other.x0, self.x1 + other.x1,
                          self.x2 + other.x2, self.x3 + other.x3)

    __radd__ = __add__

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __sub__(self, other) -> Quaternion:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> Quaternion:
        return _coerce(other) - self

    def __mul__(self, other) -> Quaternion:
        if isinstance(other, (int, float)):
            return Quaternion(self.x0 * other, self.x1 * other, self.x2 * other, self.x3 * other)
        return q_mul(self, other)

    def __rmul__(self, other) -> Quaternion:
        if isinstance(other, (int, float)):
            return self * other
        return q_mul(_coerce(other), self)

    def __truediv__(self, scalar: float) -> Quaternion:
        return self * (1.0 / scalar)

    def inverse(self) -> Quaternion:
        return self.conj() / self.norm2()

    def __pow__(self, n: int) -> Quaternion:
        if n < 0:
            return self.inverse() ** (-n)
        out = Quaternion(1.0)
        for _ in range(n):
            out = out * self
        return out


def _coerce(v) -> Quaternion:
    if isinstance(v, Quaternion):
        return v
    if isinstance(v, (int, float)):
        return Quaternion(float(v))
    raise TypeError(f"cannot combine Quaternion with {type(v).__name__}")


def q_mul(p: Quaternion, s: Quaternion) -> Quaternion:
    """Hamilton product ``p s``."""
    a0, a1, a2, a3 = p.x0, p.x1, p.x2, p.x3
    b0, b1, b2, b3 = s.x0, s.x1, s.x2, s.x3
    return Quaternion(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def qmul_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hamilton product of broadcastable arrays of shape ``(..., 4)``."""
    a0, a1, a2, a3 = np.moveaxis(np.asarray(a, dtype=float), -1, 0)
    b0, b1, b2, b3 = np.moveaxis(np.asarray(b, dtype=float), -1, 0)
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def qconj_array(a: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=float) * np.array([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True)
class SliceUnit:
    """An imaginary unit :math:`I \\in \\mathbb{S}` (purely imaginary, unit norm)."""

    I: Quaternion

    def __post_init__(self) -> None:
        I = self.I
        if abs(I.x0) > 1e-12 or abs(abs(I) - 1.0) > 1e-12:
            raise DomainError(f"{I} is not a unit imaginary quaternion")

    @classmethod
    def from_vector(cls, v) -> SliceUnit:
        v = np.asarray(v, dtype=float)
        n = float(np.linalg.norm(v))
        if n == 0.0:
            raise DomainError("zero vector has no direction")
        return cls(Quaternion(0.0, *(v / n)))

    @classmethod
    def random(cls, rng: np.random.Generator) -> SliceUnit:
        return cls.from_vector(rng.normal(size=3))


def slice_decompose(p: Quaternion) -> tuple[float, float, SliceUnit | None]:
    """Write ``p = x + I y`` with ``y >= 0``; ``I`` is ``None`` for real ``p``."""
    y = math.sqrt(p.x1**2 + p.x2**2 + p.x3**2)
    if y == 0.0:
        return p.x0, 0.0, None
    return p.x0, y, SliceUnit(Quaternion(0.0, p.x1 / y, p.x2 / y, p.x3 / y))


def qml_kernel(q: OrderLike, p: Quaternion, x, N: int = DEFAULT_TRUNCATION):
    """QML-Bargmann kernel :math:`\\sum_{n\\le N} \\bar p^n \\psi_n(x)/\\sqrt{\\Gamma(qn+1)}`.

    Powers of :math:`\\bar p` are formed by repeated Hamilton products. Returns a
    :class:`Quaternion` for scalar *x*, otherwise an array ``x.shape + (4,)``.
    """
    q = as_order(q)
    x = np.asarray(x, dtype=float)
    scale = inv_sqrt_gamma(q, N)
    table = hermite_functions(N, x)
    pc = p.conj()
    power = Quaternion(1.0)
    out = np.zeros(x.shape + (4,))
    for n in range(N + 1):
        out = out + (scale[n] * table[n])[..., None] * power.as_array()
        power = power * pc
    if x.ndim == 0:
        return Quaternion.from_array(out)
    return out


def qml_reproducing_kernel(
    q: OrderLike,
    p: Quaternion,
    s: Quaternion,
    N: int | None = None,
    tol: float = DEFAULT_TOL,
) -> Quaternion:
    """Ordered sum :math:`\\sum_n p^n \\bar s^n/\\Gamma(qn+1)`.

    Since :math:`|p^n\\bar s^n| = (|p||s|)^n`, the truncation degree is taken
    from the scalar series :math:`E_q(|p||s|)` at tolerance *tol* unless *N* is
    given.
    """
    q = as_order(q)
    if N is None:
        N = mittag_leffler(q, abs(p) * abs(s), tol).terms_used
    coef = inv_gamma(q, N)
    sc = s.conj()
    pp = Quaternion(1.0)
    ss = Quaternion(1.0)
    total = np.zeros(4)
    for n in range(N + 1):
        total += coef[n] * (pp * ss).as_array()
        pp = pp * p
        ss = ss * sc
    return Quaternion.from_array(total)


def reproducing_kernel_array(q: OrderLike, s: Quaternion, points: np.ndarray, N: int) -> np.ndarray:
    """:math:`K_q(p, s)` for an array of points ``p`` of shape ``(..., 4)``."""
    coef = inv_gamma(q, N)
    sc = s.conj().as_array()
    pp = np.zeros_like(points)
    pp[..., 0] = 1.0
    ss = np.array([1.0, 0.0, 0.0, 0.0])
    total = np.zeros_like(points)
    for n in range(N + 1):
        total += coef[n] * qmul_array(pp, ss)
        pp = qmul_array(pp, points)
        ss = qmul_array(ss, sc)
    return total


def _as_coeff_array(coeffs) -> np.ndarray:
    if isinstance(coeffs, np.ndarray):
        arr = np.array(coeffs, dtype=float)
    else:
        arr = np.array(
            [c.as_array() if isinstance(c, Quaternion) else c for c in coeffs], dtype=float
        )
    arr = arr.reshape(-1, 4)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class QHermiteExpansion:
    """Quaternion-valued :math:`\\sum_m \\psi_m(x)\\,\\alpha_m` (right coefficients)."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _as_coeff_array(self.coeffs))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.coeffs**2)))

    def __call__(self, x) -> np.ndarray:
        """Values as an array ``x.shape + (4,)``."""
        x = np.asarray(x, dtype=float)
        if len(self.coeffs) == 0:
            return np.zeros(x.shape + (4,))
        table = hermite_functions(len(self.coeffs) - 1, x)
        return np.tensordot(table, self.coeffs, axes=(0, 0))


@dataclass(frozen=True, eq=False)
class QMLFockElement:
    """Slice regular :math:`f(p) = \\sum_m \\frac{p^m}{\\sqrt{\\Gamma(qm+1)}} c_m`."""

    q: float
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", as_order(self.q))
        object.__setattr__(self, "coeffs", _as_coeff_array(self.coeffs))

    @classmethod
    def basis(cls, q: OrderLike, m: int, c: Quaternion = Quaternion(1.0)) -> QMLFockElement:
        arr = np.zeros((m + 1, 4))
        arr[m] = c.as_array()
        return cls(q, arr)

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(np.any(self.coeffs != 0, axis=1))
        return int(nz[-1]) if nz.size else -1

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.coeffs**2)))

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Values at an array of quaternions ``(..., 4)``."""
        points = np.asarray(points, dtype=float)
        out = np.zeros_like(points)
        if len(self.coeffs) == 0:
            return out
        scale = inv_sqrt_gamma(self.q, len(self.coeffs) - 1)
        power = np.zeros_like(points)
        power[..., 0] = 1.0
        for m, c in enumerate(self.coeffs):
            if np.any(c):
                out += scale[m] * qmul_array(power, c)
            power = qmul_array(power, points)
        return out

    def __call__(self, p: Quaternion) -> Quaternion:
        return Quaternion.from_array(self.evaluate(p.as_array()))


def qmlb_forward(phi: QHermiteExpansion, q: OrderLike) -> QMLFockElement:
    """Coefficient route of the QMLB transform: ``c_m = alpha_m``."""
    return QMLFockElement(q, phi.coeffs)


def qmlb_forward_integral(
    signal: Callable, q: OrderLike, p: Quaternion, rule: GaussHermiteRule,
    N: int = DEFAULT_TRUNCATION,
) -> Quaternion:
    """:math:`\\int \\overline{\\mathcal{A}_q(p,x)}\\,\\phi(x)\\,dx` by Gauss-Hermite quadrature.

    *signal* maps an array of reals to an array ``(..., 4)``. The kernel is
    conjugated (as in the complex transform), which sends :math:`\\psi_m` to
    :math:`p^m/\\sqrt{\\Gamma(qm+1)}`.
    """
    x = rule.nodes
    kern = qconj_array(qml_kernel(q, p, x, N))
    vals = np.asarray(signal(x), dtype=float)
    prod = qmul_array(kern, vals)
    return Quaternion.from_array(np.tensordot(rule.scaled_weights, prod, axes=(0, 0)))


def qml_kernel_inner(
    q: OrderLike, s: Quaternion, p: Quaternion, rule: GaussHermiteRule,
    N: int = DEFAULT_TRUNCATION,
) -> Quaternion:
    """:math:`\\langle \\mathcal{A}_q^s, \\mathcal{A}_q^p\\rangle = \\int \\overline{\\mathcal{A}_q^p}\\,\\mathcal{A}_q^s\\,dx` by quadrature."""
    x = rule.nodes
    a_s = qml_kernel(q, s, x, N)
    a_p = qml_kernel(q, p, x, N)
    prod = qmul_array(qconj_array(a_p), a_s)
    return Quaternion.from_array(np.tensordot(rule.scaled_weights, prod, axes=(0, 0)))


def slice_points(rule: PlanarRule, unit: SliceUnit) -> np.ndarray:
    """Planar nodes mapped into the slice :math:`\\mathbb{C}_I`, shape ``(..., 4)``."""
    z = rule.points
    I = unit.I.as_array()
    pts = z.imag[..., None] * I
    pts[..., 0] = z.real
    return pts


def _check_slice_capacity(deg: int, rule: PlanarRule) -> None:
    if 2 * deg > rule.radial_capacity or rule.angular_count <= deg:
        raise CapacityError(
            f"degree {deg} exceeds the capacity of the planar rule "
            f"(radial {rule.radial_capacity}, angular {rule.angular_count})"
        )


def slice_inner(
    f: Callable, g: Callable, unit: SliceUnit, rule: PlanarRule
) -> Quaternion:
    """:math:`\\frac{1}{q\\pi}\\int_{\\mathbb{C}_I} \\overline{g(p)} f(p)\\,w(p)\\,dA` by planar quadrature.

    *f* and *g* map point arrays ``(..., 4)`` to value arrays ``(..., 4)``.
    """
    pts = slice_points(rule, unit)
    prod = qmul_array(qconj_array(g(pts)), f(pts))
    return Quaternion.from_array(np.tensordot(rule.weights, prod, axes=([0, 1], [0, 1])))


def slice_norm(f: QMLFockElement, unit: SliceUnit, rule: PlanarRule) -> float:
    """Norm of *f* from the integral over the single slice :math:`\\mathbb{C}_I`."""
    if f.q != rule.q:
        raise DomainError(f"element order {f.q} differs from rule order {rule.q}")
    _check_slice_capacity(max(f.degree, 0), rule)
    vals = f.evaluate(slice_points(rule, unit))
    return float(np.sqrt(np.sum(rule.weights * np.sum(vals**2, axis=-1))))
