"""Quadrature over the complex plane against the :math:`ML_q` weight.

The inner product of :math:`ML_q` is taken as

.. math::

    \\langle f, g\\rangle = \\frac{1}{q\\pi}\\int_{\\mathbb{C}} f(z)\\overline{g(z)}
        |z|^{2/q-2} e^{-|z|^{2/q}}\\,dA(z),

under which :math:`\\|z^n\\|^2 = \\Gamma(qn+1)`. With :math:`u = |z|^{2/q}` and
:math:`z = u^{q/2} e^{i\\theta}` this becomes
:math:`(2\\pi)^{-1}\\int_0^{2\\pi}\\int_0^\\infty f\\bar g\\, e^{-u}\\,du\\,d\\theta`.

The radial rule is the Gauss rule of the measure :math:`e^{-u}du` written in
the radius :math:`r = u^{q/2}`. Products of monomials are polynomials in
``r`` for every ``q`` (they are not polynomials in ``u`` unless ``qn`` is an
integer), so the rule integrates them exactly up to degree
``2 * radial_order - 1``. For ``q = 2`` it coincides with Gauss-Laguerre.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import mpmath
import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import roots_genlaguerre

from .errors import DomainError
from .special import OrderLike, as_order, gamma_pos, log_gamma

MAX_RADIAL_ORDER = 200
MIN_ANGULAR_COUNT = 4


@lru_cache(maxsize=64)
def radial_gauss_rule(q: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes ``r_j`` and weights ``w_j`` with ``sum_j w_j r_j^k = Gamma(qk/2 + 1)``.

    The recurrence coefficients come from the modified moments by the
    Chebyshev algorithm in extended precision; nodes are polished by Newton
    iteration and the weights use the Christoffel formula, so small outer
    weights keep full relative accuracy.
    """
    n = order
    with mpmath.workdps(60 + 3 * n):
        qq = mpmath.mpf(q)
        mom = [mpmath.gamma(qq * k / 2 + 1) for k in range(2 * n)]
        a = [mpmath.mpf(0)] * n
        b = [mpmath.mpf(0)] * n
        a[0] = mom[1] / mom[0]
        b[0] = mom[0]
        sig_prev = [mpmath.mpf(0)] * (2 * n)
        sig = mom[:]
        for k in range(1, n):
            new = [mpmath.mpf(0)] * (2 * n)
            for l in range(k, 2 * n - k):
                new[l] = sig[l + 1] - a[k - 1] * sig[l] - b[k - 1] * sig_prev[l]
            a[k] = new[k + 1] / new[k] - sig[k] / sig[k - 1]
            b[k] = new[k] / sig[k - 1]
            sig_prev, sig = sig, new

        sb = [mpmath.sqrt(v) for v in b]
        if n == 1:
            guesses = [float(a[0])]
        else:
            guesses = eigh_tridiagonal(
                np.array([float(v) for v in a]),
                np.array([float(v) for v in sb[1:]]),
                eigvals_only=True,
            )

        nodes = np.empty(n)
        weights = np.empty(n)
        for idx, guess in enumerate(guesses):
            x = mpmath.mpf(guess)
            for _ in range(4):
                p0, p1 = mpmath.mpf(0), 1 / sb[0]
                d0, d1 = mpmath.mpf(0), mpmath.mpf(0)
                total = p1 * p1
                for k in range(n - 1):
                    p2 = ((x - a[k]) * p1 - sb[k] * p0) / sb[k + 1]
                    d2 = (p1 + (x - a[k]) * d1 - sb[k] * d0) / sb[k + 1]
                    p0, p1, d0, d1 = p1, p2, d1, d2
                    total += p1 * p1
                pn = (x - a[n - 1]) * p1 - sb[n - 1] * p0
                dn = p1 + (x - a[n - 1]) * d1 - sb[n - 1] * d0
                x -= pn / dn
            nodes[idx] = float(x)
            weights[idx] = float(1 / total)
    return nodes, weights


@dataclass(frozen=True, eq=False)
class PlanarRule:
    """Tensor rule (radial Gauss x uniform angular grid) for :math:`ML_q`.

    ``weights`` already contain the :math:`1/(q\\pi)` normalization and the
    angular factor, so ``sum(weights * F(points))`` approximates the
    normalized integral of ``F`` against the weight; the weights sum to 1.
    """

    q: float
    radial_nodes: np.ndarray  # u_j
    radial_weights: np.ndarray
    radii: np.ndarray  # r_j = u_j ** (q/2)
    angular_count: int
    normalization: float
    points: np.ndarray  # shape (radial_order, angular_count)
    weights: np.ndarray

    @property
    def radial_order(self) -> int:
        return len(self.radii)

    @property
    def radial_capacity(self) -> int:
        """Largest total degree in ``|z|`` integrated exactly."""
        return 2 * self.radial_order - 1

    @property
    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.angular_count) / self.angular_count

    def integrate(self, values) -> complex:
        return complex(np.sum(self.weights * values))


def build_planar_rule(
    q: OrderLike, radial_order: int = 80, angular_count: int = 64
) -> PlanarRule:
    """Build the planar rule for :math:`ML_q`."""
    q = float(as_order(q))
    if not 1 <= radial_order <= MAX_RADIAL_ORDER:
        raise DomainError(
            f"radial_order must lie in [1, {MAX_RADIAL_ORDER}], got {radial_order}"
        )
    if angular_count < MIN_ANGULAR_COUNT:
        raise DomainError(f"angular_count must be >= {MIN_ANGULAR_COUNT}, got {angular_count}")
    return _build_planar_rule(q, radial_order, angular_count)


@lru_cache(maxsize=64)
def _build_planar_rule(q: float, radial_order: int, angular_count: int) -> PlanarRule:
    radii, rweights = radial_gauss_rule(q, radial_order)
    u = radii ** (2.0 / q)
    theta = 2.0 * np.pi * np.arange(angular_count) / angular_count
    points = radii[:, None] * np.exp(1j * theta)[None, :]
    weights = np.repeat(rweights[:, None] / angular_count, angular_count, axis=1)
    for arr in (u, rweights, radii, points, weights):
        arr.setflags(write=False)
    return PlanarRule(
        q=q,
        radial_nodes=u,
        radial_weights=rweights,
        radii=radii,
        angular_count=angular_count,
        normalization=1.0 / (q * math.pi),
        points=points,
        weights=weights,
    )


def _values(f, z: np.ndarray) -> np.ndarray:
    return np.asarray(f(z), dtype=complex)


def ml_inner(f: Callable, g: Callable, rule: PlanarRule) -> complex:
    """Quadrature value of :math:`\\langle f, g\\rangle_{ML_q}` (linear in *f*).

    *f* and *g* are callables vectorized over complex arrays; ``MLFockElement``
    instances qualify.
    """
    z = rule.points
    return complex(np.sum(rule.weights * _values(f, z) * np.conj(_values(g, z))))


def monomial_norm_corrected(q: float, n: int, rule: PlanarRule | None = None) -> float:
    """:math:`\\|z^n\\|^2` under the corrected weight, by planar quadrature."""
    rule = rule or build_planar_rule(q)
    return ml_inner(lambda z: z**n, lambda z: z**n, rule).real


def monomial_norm_literal(q: float, n: int, order: int = 64) -> float:
    """:math:`\\|z^n\\|^2` under the weight :math:`|z|^{2/q-2}e^{-|z|^2/q}`.

    With :math:`t = |z|^2/q` the integral is
    :math:`q^{n+1/q-1}\\int_0^\\infty t^{n+1/q-1}e^{-t}dt`; it is evaluated with
    generalized Gauss-Laguerre (parameter :math:`1/q-1`), exact for this
    integrand.
    """
    t, w = roots_genlaguerre(order, 1.0 / q - 1.0)
    return float(q ** (n + 1.0 / q - 1.0) * np.sum(w * t**n))


def weight_diagnostic(
    q_values=(0.5, 1.0, 2.0, 3.0),
    n_max: int = 12,
    radial_order: int = 80,
    angular_count: int = 64,
) -> list[dict]:
    """Monomial norms under the corrected and the literal weight.

    Rows are ``{q, n, norm_corrected, norm_literal, gamma_target}``; all three
    values are squared norms of :math:`z^n`.
    """
    rows = []
    for q in q_values:
        rule = build_planar_rule(q, radial_order, angular_count)
        for n in range(n_max + 1):
            a = q * n + 1.0
            target = gamma_pos(a) if a < 170 else math.exp(log_gamma(a))
            rows.append(
                {
                    "q": float(q),
                    "n": n,
                    "norm_corrected": monomial_norm_corrected(q, n, rule),
                    "norm_literal": monomial_norm_literal(q, n),
                    "gamma_target": target,
                }
            )
    return rows
