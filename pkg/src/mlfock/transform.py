"""The ML-Bargmann kernel, the MLB transform and its inverse.

Two evaluation routes are kept side by side:

* the coefficient route, where :math:`B_q` sends the Hermite coefficient
  :math:`\\alpha_m` to the coefficient of :math:`e_{m,q}(z) = z^m/\\sqrt{\\Gamma(qm+1)}`;
* the integral route, where :math:`B_q` and its inverse :math:`T_q` are
  evaluated by Gauss-Hermite and planar quadrature of the truncated kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import CapacityError, DomainError, TruncationError
from .hermite import (
    MAX_DEGREE,
    GaussHermiteRule,
    HermiteExpansion,
    hermite_functions,
)
from .planar import PlanarRule
from .special import (
    DEFAULT_TOL,
    OrderLike,
    as_order,
    gamma_ratio,
    inv_sqrt_gamma,
    log_gamma,
    mittag_leffler,
)

#: default kernel truncation degree
DEFAULT_TRUNCATION = 64
#: uniform bound on |psi_n(x)| used for kernel tail estimates
HERMITE_SUP_BOUND = 1.09


@dataclass(frozen=True, eq=False)
class MLFockElement:
    """Finite element :math:`\\sum_m c_m e_{m,q}` of :math:`ML_q`."""

    q: float
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", as_order(self.q))
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def basis(cls, q: OrderLike, m: int, size: int | None = None) -> MLFockElement:
        c = np.zeros(max(m + 1, size or 0), dtype=complex)
        c[m] = 1.0
        return cls(q, c)

    @classmethod
    def zero(cls, q: OrderLike) -> MLFockElement:
        return cls(q, np.zeros(0, dtype=complex))

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient (``-1`` for the zero element)."""
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else -1

    def monomial_coeffs(self) -> np.ndarray:
        """Coefficients ``a_m`` of ``f(z) = sum a_m z^m``."""
        return self.coeffs * inv_sqrt_gamma(self.q, max(len(self.coeffs) - 1, 0))[: len(self.coeffs)]

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        a = self.monomial_coeffs()
        out = np.zeros_like(z)
        for coef in a[::-1]:
            out = out * z + coef
        return out[()] if out.ndim == 0 else out

    def norm(self) -> float:
        return ml_norm(self)

    def __add__(self, other: MLFockElement) -> MLFockElement:
        n = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(n, dtype=complex)
        out[: len(self.coeffs)] += self.coeffs
        out[: len(other.coeffs)] += other.coeffs
        return MLFockElement(self.q, out)

    def __mul__(self, scalar: complex) -> MLFockElement:
        return MLFockElement(self.q, self.coeffs * scalar)

    __rmul__ = __mul__


def ml_norm(f: MLFockElement) -> float:
    """:math:`\\|f\\|_{ML_q} = (\\sum |c_m|^2)^{1/2}` by Parseval."""
    return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2)))


def kernel_tail_bound(q: OrderLike, radius: float, N: int) -> float:
    """Bound on :math:`\\sum_{n>N} |z|^n |\\psi_n(x)|/\\sqrt{\\Gamma(qn+1)}` for ``|z| <= radius``.

    Successive term ratios :math:`|z|/\\sqrt{\\Gamma(qn+q+1)/\\Gamma(qn+1)}` decrease
    in ``n``, so once the first omitted ratio is below one the tail is
    majorized by a geometric series.
    """
    q = as_order(q)
    if radius == 0.0:
        return 0.0
    rho = radius / math.sqrt(gamma_ratio(q, N + 2))
    if rho >= 1.0:
        return math.inf
    # first omitted term in log space; radius ** (N + 1) alone may overflow
    log_first = (N + 1) * math.log(radius) - 0.5 * log_gamma(q * (N + 1) + 1.0)
    return HERMITE_SUP_BOUND * math.exp(min(log_first, 700.0)) / (1.0 - rho)


def kernel_truncation(q: OrderLike, radius: float, tol: float = DEFAULT_TOL) -> int:
    """Smallest truncation degree whose kernel tail bound is at most *tol*."""
    for N in range(MAX_DEGREE + 1):
        if kernel_tail_bound(q, radius, N) <= tol:
            return N
    raise TruncationError(
        f"kernel tail for q={q}, |z|<={radius} exceeds {tol:g} at N={MAX_DEGREE}"
    )


def _check_truncation(N: int) -> None:
    if not 0 <= N <= MAX_DEGREE:
        raise DomainError(f"truncation must lie in [0, {MAX_DEGREE}], got {N}")


def kernel_matrix(q: OrderLike, z, x, N: int = DEFAULT_TRUNCATION) -> np.ndarray:
    """:math:`A_q(z_i, x_j)` truncated at degree *N*; shape ``z.shape + x.shape``."""
    _check_truncation(N)
    z = np.asarray(z, dtype=complex)
    x = np.asarray(x, dtype=float)
    scale = inv_sqrt_gamma(q, N)
    powers = np.conj(z)[..., None] ** np.arange(N + 1) * scale  # (..., N+1)
    table = hermite_functions(N, x)  # (N+1, ...)
    return np.tensordot(powers, table, axes=(-1, 0))


def ml_kernel(
    q: OrderLike, z, x, N: int = DEFAULT_TRUNCATION, tol: float | None = None
):
    """ML-Bargmann kernel :math:`A_q(z,x) = \\sum_{n\\le N} \\bar z^n \\psi_n(x)/\\sqrt{\\Gamma(qn+1)}`.

    *z* and *x* broadcast against each other. With *tol*, a
    :class:`TruncationError` is raised when the tail bound at *N* exceeds it.
    """
    q = as_order(q)
    _check_truncation(N)
    z_arr, x_arr = np.broadcast_arrays(
        np.asarray(z, dtype=complex), np.asarray(x, dtype=float)
    )
    if tol is not None:
        radius = float(np.max(np.abs(z_arr))) if z_arr.size else 0.0
        bound = kernel_tail_bound(q, radius, N)
        if bound > tol:
            raise TruncationError(
                f"kernel tail bound {bound:.3g} at N={N} exceeds tol={tol:g}"
            )
    scale = inv_sqrt_gamma(q, N)
    zc = np.conj(z_arr)
    table = hermite_functions(N, x_arr)
    power = np.ones_like(zc)
    out = np.zeros_like(zc)
    for n in range(N + 1):
        out = out + scale[n] * power * table[n]
        power = power * zc
    return out[()] if out.ndim == 0 else out


def reproducing_kernel(q: OrderLike, w: complex, tol: float = DEFAULT_TOL) -> Callable:
    """The function :math:`K_{q,w}(z) = E_q(z\\bar w)` as a vectorized callable."""
    q = as_order(q)
    w = complex(w)

    def kernel(z):
        return mittag_leffler(q, np.asarray(z, dtype=complex) * np.conj(w), tol).value

    return kernel


def mlb_forward_coeff(phi: HermiteExpansion, q: OrderLike) -> MLFockElement:
    """Coefficient route of :math:`B_q`: ``c_m = alpha_m``."""
    return MLFockElement(q, phi.coeffs)


def mlb_inverse_coeff(f: MLFockElement) -> HermiteExpansion:
    """Coefficient route of :math:`T_q = B_q^{-1}`: ``alpha_m = c_m``."""
    return HermiteExpansion(f.coeffs)


def mlb_forward_integral(
    signal: Callable,
    q: OrderLike,
    z,
    rule: GaussHermiteRule,
    N: int = DEFAULT_TRUNCATION,
):
    """Integral route of :math:`B_q(\\phi)(z) = \\int \\overline{A_q(z,x)}\\phi(x)\\,dx`.

    Exact (up to rounding and kernel truncation) for signals
    :math:`e^{-x^2/2}P(x)` when ``N + deg P < 2 * rule.order``.
    """
    q = as_order(q)
    x = rule.nodes
    values = np.asarray(signal(x), dtype=complex)
    kern = np.conj(kernel_matrix(q, z, x, N))
    out = kern @ (rule.scaled_weights * values)
    return out[()] if np.ndim(out) == 0 else out


def mlb_inverse(
    f,
    x,
    rule: PlanarRule,
    N: int = DEFAULT_TRUNCATION,
    normalized: bool = True,
):
    """Integral route of :math:`T_q(f)(x) = \\int_{\\mathbb{C}} A_q(z,x) f(z)\\,d\\mu_q(z)`.

    :math:`d\\mu_q` is the normalized measure of :class:`PlanarRule`, which makes
    :math:`T_q` the adjoint of :math:`B_q`. ``normalized=False`` drops the
    :math:`1/(q\\pi)` factor for comparison with the unnormalized integral.

    *f* is an :class:`MLFockElement` (its degree is checked against the rule)
    or a vectorized callable.
    """
    if isinstance(f, MLFockElement):
        if f.q != rule.q:
            raise DomainError(f"element order {f.q} differs from rule order {rule.q}")
        deg = max(f.degree, 0)
        if N + deg > rule.radial_capacity:
            raise CapacityError(
                f"degree {N}+{deg} exceeds radial capacity {rule.radial_capacity}"
            )
        # z^m conj(z)^n aliases on the angular grid when n - m is a nonzero
        # multiple of angular_count
        if rule.angular_count <= max(N, deg):
            raise CapacityError(
                f"angular_count {rule.angular_count} must exceed max({N}, {deg})"
            )
    z = rule.points.reshape(-1)
    fz = np.asarray(f(z), dtype=complex)
    x_arr = np.asarray(x, dtype=float)
    kern = kernel_matrix(rule.q, z, x_arr.reshape(-1), N)  # (npts, nx)
    out = (rule.weights.reshape(-1) * fz) @ kern
    if not normalized:
        out = out * (rule.q * math.pi)
    out = out.reshape(x_arr.shape)
    return out[()] if out.ndim == 0 else out
