"""Fourier transform in Hermite coordinates and its image :math:`S_q = B_q F B_q^{-1}`.

The Fourier transform is :math:`F\\phi(\\lambda) = (2\\pi)^{-1/2}\\int e^{-i\\lambda x}\\phi(x)dx`,
under which :math:`F\\psi_n = (-i)^n\\psi_n`. Composing with the MLB transform
multiplies the :math:`e_{m,q}` coefficients by :math:`(-i)^m`, i.e.
:math:`S_q f(z) = f(-iz)`.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, InconclusiveError
from .hermite import GaussHermiteRule, HermiteExpansion, gauss_hermite_rule
from .planar import PlanarRule, build_planar_rule
from .special import OrderLike, as_order
from .transform import (
    DEFAULT_TRUNCATION,
    MLFockElement,
    kernel_matrix,
    ml_kernel,
    mlb_inverse,
)

#: residual below which a sign is accepted (coefficient route)
SIGN_TOL = 1e-8
#: residual below which a sign is accepted (full quadrature route)
SIGN_TOL_NUMERICAL = 1e-6


def _minus_i_powers(n: int) -> np.ndarray:
    return np.array([(1, -1j, -1, 1j)[m % 4] for m in range(n)], dtype=complex)


def fourier_on_hermite(phi: HermiteExpansion) -> HermiteExpansion:
    """Exact Fourier transform of a Hermite expansion: ``alpha_m -> (-i)^m alpha_m``."""
    return HermiteExpansion(phi.coeffs * _minus_i_powers(len(phi.coeffs)))


def fourier_quadrature(signal: Callable, lam, rule: GaussHermiteRule):
    """:math:`(2\\pi)^{-1/2}\\int e^{-i\\lambda x}\\,\\mathrm{signal}(x)\\,dx` by Gauss-Hermite.

    With :math:`x = \\sqrt2 t` a signal :math:`e^{-x^2/2}P(x)` becomes
    :math:`e^{-t^2}P(\\sqrt2 t)`, so only the oscillatory factor is left to the
    rule; it converges rapidly while :math:`|\\lambda|` is well inside the node
    range.
    """
    t = rule.nodes
    x = math.sqrt(2.0) * t
    values = np.asarray(signal(x), dtype=complex) * rule.scaled_weights
    lam = np.asarray(lam, dtype=float)
    phase = np.exp(-1j * np.multiply.outer(lam, x))
    out = phase @ values * (math.sqrt(2.0) / math.sqrt(2.0 * math.pi))
    return out[()] if np.ndim(out) == 0 else out


def fourier_kernel_action(q: OrderLike, z, lam, N: int = DEFAULT_TRUNCATION):
    """:math:`F(A_q^z)(\\lambda) = A_q(iz, \\lambda)`."""
    return ml_kernel(q, 1j * np.asarray(z, dtype=complex), lam, N)


def s_q_apply(f: MLFockElement, z):
    """Coefficient route of :math:`S_q f(z)`: ``c_m -> (-i)^m c_m``, then evaluate."""
    g = MLFockElement(f.q, f.coeffs * _minus_i_powers(len(f.coeffs)))
    return g(z)


def s_q_numerical(
    f: MLFockElement,
    z,
    planar: PlanarRule | None = None,
    fourier_rule: GaussHermiteRule | None = None,
    forward_rule: GaussHermiteRule | None = None,
    N: int | None = None,
):
    """Full quadrature route :math:`B_q(F(T_q f))(z)`.

    :math:`T_q f` is sampled by planar quadrature on the Fourier rule's
    scaled nodes, Fourier-transformed by :func:`fourier_quadrature` onto the
    forward rule's nodes, and mapped back with the integral form of
    :math:`B_q`. Kernel terms beyond the degree of *f* integrate to zero, so
    the default truncation is ``degree + 8``.
    """
    q = f.q
    deg = max(f.degree, 0)
    if N is None:
        N = deg + 8
    if planar is None:
        planar = build_planar_rule(q, 80, max(64, 2 * (N + deg) + 1))
    fourier_rule = fourier_rule or gauss_hermite_rule(120)
    forward_rule = forward_rule or gauss_hermite_rule(max(40, N + deg))

    x = math.sqrt(2.0) * fourier_rule.nodes
    phi_x = mlb_inverse(f, x, planar, N)
    lam = forward_rule.nodes
    # fourier_quadrature samples its signal at exactly these x
    f_phi = fourier_quadrature(lambda _: phi_x, lam, fourier_rule)
    kern = np.conj(kernel_matrix(q, z, lam, N))
    out = kern @ (forward_rule.scaled_weights * f_phi)
    return out[()] if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class SignReport:
    """Verdict on the sign in :math:`S_q f(z) = \\pm f(-iz)`."""

    q: float
    best_sign: int
    max_residual_plus: float
    max_residual_minus: float
    method: str = "coefficient"
    degenerate: bool = False
    trials: int = 0
    printed_sign: int = -1

    @property
    def agrees_with_printed(self) -> bool:
        return self.best_sign == self.printed_sign

    def to_dict(self) -> dict:
        d = asdict(self)
        d["agrees_with_printed"] = self.agrees_with_printed
        return d


def _random_element(q, degree, rng) -> MLFockElement:
    c = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
    return MLFockElement(q, c / np.linalg.norm(c))


def resolve_sign(
    q: OrderLike,
    trials: int = 8,
    *,
    seed: int = 0,
    degree: int = 6,
    radius: float = 1.5,
    numerical: bool = False,
    elements: Sequence[MLFockElement] | None = None,
) -> SignReport:
    """Compare :math:`S_q f(z)` with :math:`+f(-iz)` and :math:`-f(-iz)`.

    Each trial draws a random element and a random point with
    ``|z| <= radius``; the residual of a sign is
    ``max |S_q f(z) - s f(-iz)| / max(1, |f(-iz)|)``. ``numerical=True`` uses
    the full quadrature composition instead of the coefficient rule. Explicit
    *elements* replace the random draws.
    """
    q = as_order(q)
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    if elements is None:
        elements = [_random_element(q, degree, rng) for _ in range(trials)]
    points = radius * np.sqrt(rng.uniform(size=len(elements))) * np.exp(
        2j * np.pi * rng.uniform(size=len(elements))
    )
    res_plus = 0.0
    res_minus = 0.0
    for f, z in zip(elements, points):
        s = complex(s_q_numerical(f, z) if numerical else s_q_apply(f, z))
        ref = complex(f(-1j * z))
        scale = max(1.0, abs(ref))
        res_plus = max(res_plus, abs(s - ref) / scale)
        res_minus = max(res_minus, abs(s + ref) / scale)

    tol = SIGN_TOL_NUMERICAL if numerical else SIGN_TOL
    method = "numerical" if numerical else "coefficient"
    degenerate = all(not np.any(f.coeffs) for f in elements)
    if degenerate:
        return SignReport(q, 1, res_plus, res_minus, method, True, len(elements))
    if res_plus <= tol < res_minus:
        best = 1
    elif res_minus <= tol < res_plus:
        best = -1
    else:
        raise InconclusiveError(
            f"residuals +{res_plus:.3g} / -{res_minus:.3g} do not single out a sign"
        )
    return SignReport(q, best, res_plus, res_minus, method, False, len(elements))
