"""Series-form Caputo derivative, multiplication by :math:`z^q` and their commutator.

On :math:`f(z) = \\sum_n a_n z^{qn}` the Caputo derivative acts as

.. math::

    D_*^q f = \\sum_{n\\ge1} a_n \\frac{\\Gamma(qn+1)}{\\Gamma(q(n-1)+1)} z^{q(n-1)},

so everything is a coefficient map. For integer ``q`` the gamma ratios are
integers and all operations stay exact when the coefficients are ``int`` or
:class:`~fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number
from typing import Sequence

import numpy as np

from .errors import DomainError, InconsistentSystemError
from .special import OrderLike, as_order, gamma_ratio, gamma_ratio_exact, is_integral

#: closed forms printed for beta at q = 1, 2, 3
PRINTED_BETA = {
    1: lambda n: 1,
    2: lambda n: 2 * (4 * n + 1),
    3: lambda n: 27 * (3 * n + 1) + 6,
}


def proof_beta_q3(n: int) -> int:
    """The q = 3 closed form consistent with the gamma ratios."""
    return 27 * n * (3 * n + 1) + 6


#: printed coefficients C_0..C_{q-1} of the commutator as a differential operator
PRINTED_OPERATOR_COEFFS = {
    1: (1,),
    2: (2, 4),
    3: (6, 18, 9),
    4: (24, 120, 56, 16),
}


def _order(q: OrderLike):
    q = as_order(q)
    return int(q) if is_integral(q) else q


@dataclass(frozen=True)
class FracPowerSeries:
    """Finite series :math:`\\sum_n a_n z^{qn}`.

    Coefficients are kept as plain Python numbers so that integer-order
    computations can run in exact arithmetic.
    """

    q: float
    coeffs: tuple = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", _order(self.q))
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @classmethod
    def monomial(cls, q: OrderLike, n: int, coeff: Number = 1) -> FracPowerSeries:
        return cls(q, (0,) * n + (coeff,))

    @classmethod
    def mittag_leffler(cls, q: OrderLike, lam: Number, terms: int) -> FracPowerSeries:
        """Truncation of :math:`E_q(\\lambda z^q)`: ``a_n = lam^n / Gamma(qn+1)``."""
        q = _order(q)
        if isinstance(q, int) and isinstance(lam, (int, Fraction)):
            return cls(q, tuple(Fraction(lam) ** n / math.factorial(q * n) for n in range(terms)))
        coeffs = []
        a = 1.0
        for n in range(terms):
            if n:
                a = a * lam / gamma_ratio(q, n)
            coeffs.append(a)
        return cls(q, tuple(coeffs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: FracPowerSeries) -> FracPowerSeries:
        _same_order(self, other)
        n = max(len(self), len(other))
        a = self.coeffs + (0,) * (n - len(self))
        b = other.coeffs + (0,) * (n - len(other))
        return FracPowerSeries(self.q, tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: FracPowerSeries) -> FracPowerSeries:
        return self + other.scale(-1)

    def scale(self, c: Number) -> FracPowerSeries:
        return FracPowerSeries(self.q, tuple(c * a for a in self.coeffs))

    def trimmed(self) -> FracPowerSeries:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        return FracPowerSeries(self.q, tuple(c))

    def __call__(self, z):
        """Evaluate with the principal branch of :math:`z^q` (cut along the negative axis)."""
        z = np.asarray(z, dtype=complex)
        w = z ** int(self.q) if isinstance(self.q, int) else np.power(z, self.q)
        out = np.zeros_like(z)
        for a in reversed(self.coeffs):
            out = out * w + complex(a)
        return out[()] if out.ndim == 0 else out


def _same_order(f: FracPowerSeries, g: FracPowerSeries) -> None:
    if f.q != g.q:
        raise DomainError(f"series orders differ: {f.q} vs {g.q}")


def _ratio(q, n: int):
    if isinstance(q, int):
        return gamma_ratio_exact(q, n)
    return gamma_ratio(q, n)


def caputo_derivative(f: FracPowerSeries) -> FracPowerSeries:
    """:math:`D_*^q f`: ``b_{n-1} = a_n Gamma(qn+1)/Gamma(q(n-1)+1)``; constants vanish."""
    return FracPowerSeries(
        f.q, tuple(a * _ratio(f.q, n) for n, a in enumerate(f.coeffs) if n >= 1)
    )


def multiply_zq(f: FracPowerSeries) -> FracPowerSeries:
    """Multiplication by :math:`z^q`: a shift of the coefficients."""
    if not f.coeffs:
        return f
    return FracPowerSeries(f.q, (0,) + f.coeffs)


def commutator_apply(f: FracPowerSeries) -> FracPowerSeries:
    """:math:`[D_*^q, M_{z^q}]f = D_*^q(z^q f) - z^q D_*^q f`, by composition."""
    return caputo_derivative(multiply_zq(f)) - multiply_zq(caputo_derivative(f))


def beta_exact(n: int, q: int) -> int:
    """Exact commutator coefficient for integer order."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return gamma_ratio_exact(q, n + 1) - gamma_ratio_exact(q, n)


def beta(n: int, q: OrderLike) -> float:
    """:math:`\\beta_{n,q} = \\Gamma(q(n+1)+1)/\\Gamma(qn+1) - \\Gamma(qn+1)/\\Gamma(q(n-1)+1)`."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    q = _order(q)
    if isinstance(q, int):
        return float(beta_exact(n, q))
    return gamma_ratio(q, n + 1) - gamma_ratio(q, n)


def falling_factorial(x: int, k: int) -> int:
    return math.prod(range(x - k + 1, x + 1)) if k else 1


@dataclass(frozen=True)
class DiffIdentity:
    """The operator :math:`\\sum_{k<q} C_k z^k \\frac{d^k}{dz^k}` acting on :math:`f(z^q)`."""

    q: int
    C: tuple

    def eigenvalue(self, n: int):
        """Action on the monomial :math:`z^{qn}` (a multiple of it)."""
        x = self.q * n
        return sum(c * falling_factorial(x, k) for k, c in enumerate(self.C))

    def apply(self, f: FracPowerSeries) -> FracPowerSeries:
        if f.q != self.q:
            raise DomainError(f"series order {f.q} differs from identity order {self.q}")
        return FracPowerSeries(
            self.q, tuple(a * self.eigenvalue(n) for n, a in enumerate(f.coeffs))
        )


def _commutator_target(q: int, n: int) -> int:
    return math.factorial(q) if n == 0 else beta_exact(n, q)


def _solve_coefficients(q: int) -> tuple:
    """Exact solve of the square system from the monomials ``n = 0..q-1``."""
    rows = [[Fraction(falling_factorial(q * n, k)) for k in range(q)] for n in range(q)]
    rhs = [Fraction(_commutator_target(q, n)) for n in range(q)]
    # Gaussian elimination over the rationals
    for col in range(q):
        piv = next(r for r in range(col, q) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        for r in range(q):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col] / rows[col][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
                rhs[r] -= factor * rhs[col]
    return tuple(
        int(v) if v.denominator == 1 else v
        for v in (rhs[k] / rows[k][k] for k in range(q))
    )


def _check_integer_order(q) -> int:
    if not is_integral(q) or as_order(q) < 1:
        raise DomainError(f"q must be a positive integer, got {q!r}")
    return int(q)


def synthesize_identity(q: int, max_n: int | None = None) -> DiffIdentity:
    """Find :math:`C_0..C_{q-1}` with :math:`\\sum_k C_k (qn)_k = \\beta_{n,q}` for ``n = 1..max_n``.

    The ``n = 0`` row enforces :math:`C_0 = \\Gamma(q+1)`. The system is solved
    exactly from its first ``q`` rows; every remaining row must then hold
    exactly, otherwise :class:`InconsistentSystemError` is raised.
    """
    q = _check_integer_order(q)
    max_n = q if max_n is None else max_n
    if max_n < q:
        raise DomainError(f"max_n must be >= q = {q}, got {max_n}")
    ident = DiffIdentity(q, _solve_coefficients(q))
    for n in range(max_n + 1):
        if ident.eigenvalue(n) != _commutator_target(q, n):
            raise InconsistentSystemError(f"no operator of order < {q} matches n = {n}")
    return ident


@dataclass(frozen=True)
class ConjectureReport:
    q: int
    C: tuple
    verified_up_to: int
    falsified_at: int | None
    residuals: tuple  # (n, commutator, operator, difference)

    @property
    def holds(self) -> bool:
        return self.falsified_at is None

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "C": [_plain(c) for c in self.C],
            "verified_up_to": self.verified_up_to,
            "falsified_at": self.falsified_at,
        }


def _plain(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    return v


def verify_conjecture(q: int, degree: int = 15) -> ConjectureReport:
    """Check the commutator against the synthesized operator on ``z^{qn}``, ``n <= degree``.

    Both sides are computed in exact integer arithmetic: the commutator by
    :func:`commutator_apply` on a monomial series, the operator by its falling
    factorial action. A mismatch is reported, not raised.
    """
    q = _check_integer_order(q)
    if q > 12 or not 0 <= degree <= 30:
        raise DomainError("verify_conjecture supports q <= 12 and degree <= 30")
    ident = DiffIdentity(q, _solve_coefficients(q))
    residuals = []
    falsified = None
    verified = -1
    for n in range(degree + 1):
        comm = commutator_apply(FracPowerSeries.monomial(q, n)).coeffs[n]
        op = ident.eigenvalue(n)
        diff = comm - op
        residuals.append((n, comm, op, diff))
        if diff != 0 and falsified is None:
            falsified = n
        if falsified is None:
            verified = n
    return ConjectureReport(q, ident.C, verified, falsified, tuple(residuals))


def printed_beta(q: int, n: int) -> int | None:
    """Closed form printed for :math:`\\beta_{n,q}` (q = 1, 2, 3) or implied by the
    printed operator coefficients (q = 4); ``None`` if nothing is printed."""
    if q in PRINTED_BETA:
        return PRINTED_BETA[q](n)
    if q in PRINTED_OPERATOR_COEFFS:
        return DiffIdentity(q, PRINTED_OPERATOR_COEFFS[q]).eigenvalue(n)
    return None


def commutator_table(q_values: Sequence[int] = (1, 2, 3, 4), n_max: int = 10) -> list[dict]:
    """Rows ``{q, n, beta_gamma, beta_paper_formula_if_any, match_flag}``."""
    rows = []
    for q in q_values:
        for n in range(1, n_max + 1):
            value = beta(n, q)
            printed = printed_beta(int(q), n) if is_integral(q) else None
            match = None if printed is None else abs(printed - value) <= 1e-12 * abs(value)
            rows.append(
                {
                    "q": q,
                    "n": n,
                    "beta_gamma": value,
                    "beta_paper_formula_if_any": printed,
                    "match_flag": match,
                }
            )
    return rows


def misprint_ledger(n_max: int = 10) -> list[dict]:
    """Printed closed forms and operator coefficients that disagree with the gamma ratios."""
    entries = []
    for q, formula in PRINTED_BETA.items():
        bad = [n for n in range(1, n_max + 1) if formula(n) != beta_exact(n, q)]
        if bad:
            n = bad[0]
            entries.append(
                {
                    "item": f"beta closed form, q={q}",
                    "printed": "27(3n+1)+6" if q == 3 else f"q={q} form",
                    "consistent_form": "27n(3n+1)+6" if q == 3 else None,
                    "first_mismatch_n": n,
                    "printed_value": formula(n),
                    "gamma_value": beta_exact(n, q),
                }
            )
    for q, coeffs in PRINTED_OPERATOR_COEFFS.items():
        derived = _solve_coefficients(q)
        if tuple(coeffs) != tuple(derived):
            op = DiffIdentity(q, coeffs)
            n = next(n for n in range(1, n_max + 1) if op.eigenvalue(n) != beta_exact(n, q))
            entries.append(
                {
                    "item": f"operator coefficients, q={q}",
                    "printed": list(coeffs),
                    "consistent_form": [_plain(c) for c in derived],
                    "first_mismatch_n": n,
                    "printed_value": op.eigenvalue(n),
                    "gamma_value": beta_exact(n, q),
                }
            )
    return entries
