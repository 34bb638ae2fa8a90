"""Normalized Hermite functions, Gauss-Hermite rules and the L2 inner product.

The Hermite functions

.. math::

    \\psi_n(x) = \\frac{H_n(x) e^{-x^2/2}}{\\sqrt{2^n n! \\sqrt{\\pi}}}

are generated by the three-term recurrence on the normalized functions
themselves, so neither :math:`H_n` nor the normalizer is ever formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import DomainError

#: largest degree accepted by the public evaluators
MAX_DEGREE = 200
#: largest Gauss-Hermite order
MAX_RULE_ORDER = 400

_PI_M14 = math.pi ** -0.25


def _hermite_table(n_max: int, x) -> np.ndarray:
    """Rows ``psi_0(x) .. psi_{n_max}(x)``; no degree cap (internal use)."""
    x = np.asarray(x)
    dtype = np.result_type(x.dtype, float)
    out = np.empty((n_max + 1,) + x.shape, dtype=dtype)
    out[0] = _PI_M14 * np.exp(-0.5 * x * x)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, n_max):
        out[n + 1] = (
            math.sqrt(2.0 / (n + 1)) * x * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
        )
    return out


def _check_degree(n: int) -> None:
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    if n > MAX_DEGREE:
        raise DomainError(f"degree {n} exceeds the stability budget {MAX_DEGREE}")


def hermite_function(n: int, x):
    """Evaluate :math:`\\psi_n` at *x* (scalar or array)."""
    _check_degree(n)
    val = _hermite_table(n, x)[n]
    return val[()] if val.ndim == 0 else val


def hermite_functions(n_max: int, x) -> np.ndarray:
    """All of :math:`\\psi_0,\\dots,\\psi_{n_{max}}` at *x*, stacked along axis 0."""
    _check_degree(n_max)
    return _hermite_table(n_max, x)


@dataclass(frozen=True, eq=False)
class GaussHermiteRule:
    """Gauss rule for the weight :math:`e^{-x^2}` on the real line.

    ``scaled_weights`` holds :math:`w_k e^{x_k^2}`; it stays finite where the
    plain weights underflow and is what the Hermite-function quadratures use.
    """

    nodes: np.ndarray
    weights: np.ndarray
    scaled_weights: np.ndarray
    order: int

    def integrate(self, values) -> complex:
        """Approximate :math:`\\int e^{-x^2} g(x) dx` from ``values = g(nodes)``."""
        return np.tensordot(self.weights, values, axes=(0, 0))


@lru_cache(maxsize=32)
def gauss_hermite_rule(order: int) -> GaussHermiteRule:
    """Golub-Welsch nodes with Christoffel weights.

    The weights are computed as :math:`e^{-x_k^2}/\\sum_{j<n}\\psi_j(x_k)^2`,
    which keeps full relative accuracy for the outer nodes.
    """
    if not 1 <= order <= MAX_RULE_ORDER:
        raise DomainError(f"order must lie in [1, {MAX_RULE_ORDER}], got {order}")
    diag = np.zeros(order)
    off = np.sqrt(np.arange(1, order) / 2.0)
    if order == 1:
        nodes = np.zeros(1)
    else:
        nodes = eigh_tridiagonal(diag, off, eigvals_only=True)
        nodes = 0.5 * (nodes - nodes[::-1])  # exact symmetry

    table = _hermite_table(order - 1, nodes)
    scaled = 1.0 / np.sum(table * table, axis=0)
    weights = scaled * np.exp(-nodes * nodes)
    for arr in (nodes, weights, scaled):
        arr.setflags(write=False)
    return GaussHermiteRule(nodes, weights, scaled, order)


@dataclass(frozen=True, eq=False)
class HermiteExpansion:
    """Finite expansion :math:`\\sum_m \\alpha_m \\psi_m` of an :math:`L^2(\\mathbb{R})` element."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def basis(cls, m: int, size: int | None = None) -> HermiteExpansion:
        c = np.zeros(max(m + 1, size or 0), dtype=complex)
        c[m] = 1.0
        return cls(c)

    @property
    def degree(self) -> int:
        """Truncation degree ``M`` (length minus one); ``-1`` when empty."""
        return len(self.coeffs) - 1

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def __call__(self, x):
        if len(self.coeffs) == 0:
            return np.zeros_like(np.asarray(x, dtype=complex))
        table = hermite_functions(self.degree, x)
        return np.tensordot(self.coeffs, table, axes=(0, 0))

    def __add__(self, other: HermiteExpansion) -> HermiteExpansion:
        n = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(n, dtype=complex)
        out[: len(self.coeffs)] += self.coeffs
        out[: len(other.coeffs)] += other.coeffs
        return HermiteExpansion(out)

    def __mul__(self, scalar: complex) -> HermiteExpansion:
        return HermiteExpansion(self.coeffs * scalar)

    __rmul__ = __mul__


def l2_inner(f: HermiteExpansion, g: HermiteExpansion) -> complex:
    """:math:`\\langle f, g\\rangle = \\int f \\bar g\\,dx` in Parseval form (linear in *f*)."""
    n = min(len(f.coeffs), len(g.coeffs))
    return complex(np.sum(f.coeffs[:n] * np.conj(g.coeffs[:n])))


def quadrature_inner(
    f: Callable, g: Callable, rule: GaussHermiteRule
) -> complex:
    """:math:`\\int f \\bar g\\,dx` by Gauss-Hermite quadrature of two callables.

    Exact when :math:`f \\bar g e^{x^2}` is a polynomial of degree below
    ``2 * rule.order``.
    """
    x = rule.nodes
    return complex(np.sum(rule.scaled_weights * f(x) * np.conj(g(x))))


def project_signal(
    signal: Callable, M: int, rule: GaussHermiteRule
) -> HermiteExpansion:
    """Coefficients :math:`\\alpha_m = \\int \\psi_m(x)\\,\\mathrm{signal}(x)\\,dx`, ``m <= M``.

    The Gaussian factor of :math:`\\psi_m` is absorbed into the rule's weight,
    so the projection is exact for signals :math:`e^{-x^2/2} P(x)` with
    ``deg P + M < 2 * rule.order``.
    """
    if rule.order < M + 1:
        raise DomainError(f"rule order {rule.order} is below M + 1 = {M + 1}")
    x = rule.nodes
    table = hermite_functions(M, x)
    values = np.asarray(signal(x), dtype=complex)
    return HermiteExpansion(table @ (rule.scaled_weights * values))


def fit_samples(x, values, M: int) -> HermiteExpansion:
    """Least-squares fit of samples by :math:`\\psi_0..\\psi_M`.

    Exact (up to rounding) for samples of an expansion of degree ``<= M``
    taken at ``M + 1`` or more distinct points.
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    values = np.asarray(values, dtype=complex).reshape(-1)
    if x.shape != values.shape:
        raise DomainError("x and values differ in length")
    if len(x) < M + 1:
        raise DomainError(f"{len(x)} samples cannot determine {M + 1} coefficients")
    design = hermite_functions(M, x).T
    coeffs, *_ = np.linalg.lstsq(design.astype(complex), values, rcond=None)
    return HermiteExpansion(coeffs)
