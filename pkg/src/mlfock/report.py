"""Verification battery behind ``mlfock report``.

Each section returns a dict holding its residuals, the bound it is held to
and a ``pass`` flag. Random draws come from one generator seeded by the
caller, and sections run in a fixed order, so equal inputs give equal
reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .caputo import (
    FracPowerSeries,
    beta,
    caputo_derivative,
    commutator_table,
    misprint_ledger,
    synthesize_identity,
    verify_conjecture,
)
from .errors import DomainError
from .fourier import resolve_sign, s_q_apply, s_q_numerical
from .hermite import MAX_DEGREE, MAX_RULE_ORDER, HermiteExpansion, gauss_hermite_rule
from .planar import MAX_RADIAL_ORDER, MIN_ANGULAR_COUNT, build_planar_rule, ml_inner, weight_diagnostic
from .quaternion import (
    QMLFockElement,
    Quaternion,
    SliceUnit,
    qml_reproducing_kernel,
    slice_norm,
)
from .special import MLOrder, mittag_leffler
from .transform import (
    MLFockElement,
    kernel_matrix,
    kernel_truncation,
    mlb_forward_coeff,
    mlb_forward_integral,
    mlb_inverse,
    mlb_inverse_coeff,
)

ONB_TOL = 1e-8
BASIS_IMAGE_TOL = 1e-7
ISOMETRY_TOL = 1e-12
ROUND_TRIP_TOL = 1e-6
KERNEL_TOL = 1e-8
FOURIER_TOL = 1e-6
QUAT_NORM_TOL = 1e-12
SLICE_NORM_TOL = 1e-8
SLICE_KERNEL_TOL = 1e-10
HERMITIAN_TOL = 1e-12
EIGEN_FLOAT_TOL = 1e-13


@dataclass(frozen=True)
class RunConfig:
    q: MLOrder = MLOrder(1.0)
    truncation: int = 64
    quad_radial: int = 80
    quad_angular: int = 128
    hermite_order: int = 80
    tolerance: float = 1e-8
    seed: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.q, MLOrder):
            object.__setattr__(self, "q", MLOrder(float(self.q)))
        if not 0 <= self.truncation <= MAX_DEGREE:
            raise DomainError(f"truncation must lie in [0, {MAX_DEGREE}]")
        if not 1 <= self.quad_radial <= MAX_RADIAL_ORDER:
            raise DomainError(f"radial order must lie in [1, {MAX_RADIAL_ORDER}]")
        if self.quad_angular < MIN_ANGULAR_COUNT:
            raise DomainError(f"angular count must be >= {MIN_ANGULAR_COUNT}")
        if not 1 <= self.hermite_order <= MAX_RULE_ORDER:
            raise DomainError(f"hermite order must lie in [1, {MAX_RULE_ORDER}]")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")

    def to_dict(self) -> dict:
        return {
            "q": self.q.q,
            "truncation": self.truncation,
            "quad_radial": self.quad_radial,
            "quad_angular": self.quad_angular,
            "hermite_order": self.hermite_order,
            "tolerance": self.tolerance,
            "seed": self.seed,
        }


def _disk(rng: np.random.Generator, n: int, radius: float, inner: float = 0.0) -> np.ndarray:
    r = np.sqrt(rng.uniform(inner**2, radius**2, size=n))
    return r * np.exp(2j * np.pi * rng.uniform(size=n))


def _ball(rng: np.random.Generator, radius: float) -> Quaternion:
    v = rng.normal(size=4)
    return Quaternion.from_array(v / np.linalg.norm(v) * radius * rng.uniform() ** 0.25)


def _random_coeffs(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.normal(size=size) + 1j * rng.normal(size=size)


def section_weight(cfg: RunConfig) -> dict:
    """ONB residuals under the corrected weight and the literal-weight diagnostic."""
    rows = weight_diagnostic((0.5, 1.0, 2.0, 3.0), 12, cfg.quad_radial, cfg.quad_angular)
    onb = {}
    for q in (0.5, 1.0, 2.0, 3.0):
        rule = build_planar_rule(q, cfg.quad_radial, cfg.quad_angular)
        basis = [MLFockElement.basis(q, m) for m in range(13)]
        worst = 0.0
        for m, fm in enumerate(basis):
            for j, fj in enumerate(basis):
                worst = max(worst, abs(ml_inner(fm, fj, rule) - (m == j)))
        onb[str(q)] = worst
    literal = next(r["norm_literal"] for r in rows if r["q"] == 2.0 and r["n"] == 0)
    literal_fails = abs(literal - 1.0) > ONB_TOL
    return {
        "onb_max_residual": onb,
        "bound": ONB_TOL,
        "literal_weight_q2_n0": literal,
        "literal_weight_fails": literal_fails,
        "table": rows,
        "pass": all(v <= ONB_TOL for v in onb.values()) and literal_fails,
    }


def section_basis_images(cfg: RunConfig, rng: np.random.Generator) -> dict:
    """Integral route of ``B_q(psi_m)`` against ``z^m / sqrt(Gamma(qm+1))``.

    Relative error is measured on ``1 <= |z| <= 2``: near the origin the target
    for ``m > 0`` falls below the rounding level of the low-order kernel terms,
    so the whole disk ``|z| <= 2`` is covered by an absolute error check.
    """
    rule = gauss_hermite_rule(cfg.hermite_order)
    ring = _disk(rng, 40, 2.0, 1.0)
    disk = _disk(rng, 40, 2.0)
    rel, absolute = {}, {}
    for q in (0.5, 1.0, 2.0):
        worst_rel = worst_abs = 0.0
        for m in range(9):
            phi = HermiteExpansion.basis(m)
            exact = MLFockElement.basis(q, m)
            got = mlb_forward_integral(phi, q, ring, rule, cfg.truncation)
            ref = exact(ring)
            worst_rel = max(worst_rel, float(np.max(np.abs(got - ref) / np.abs(ref))))
            got = mlb_forward_integral(phi, q, disk, rule, cfg.truncation)
            worst_abs = max(worst_abs, float(np.max(np.abs(got - exact(disk)))))
        rel[str(q)] = worst_rel
        absolute[str(q)] = worst_abs
    return {
        "max_relative_error": rel,
        "max_absolute_error": absolute,
        "bound": BASIS_IMAGE_TOL,
        "pass": all(v <= BASIS_IMAGE_TOL for v in rel.values())
        and all(v <= BASIS_IMAGE_TOL for v in absolute.values()),
    }


def section_isometry(cfg: RunConfig, rng: np.random.Generator) -> dict:
    """Coefficient-route isometry on degree 15 and the quadrature round trip on degree 10."""
    iso = 0.0
    for _ in range(10):
        phi = HermiteExpansion(_random_coeffs(rng, 16))
        f = mlb_forward_coeff(phi, 1.0)
        iso = max(iso, abs(f.norm() - phi.norm()))
        back = mlb_inverse_coeff(f)
        iso = max(iso, float(np.max(np.abs(back.coeffs - phi.coeffs))))

    hrule = gauss_hermite_rule(cfg.hermite_order)
    x = np.linspace(-4.0, 4.0, 33)
    deg = 10
    # kernel terms above deg integrate to zero; keep the angular grid free of aliasing
    N = max(deg, min(cfg.truncation, cfg.quad_angular - 1))
    trip = {}
    for q in (0.5, 1.0, 2.0, 3.0):
        planar = build_planar_rule(q, cfg.quad_radial, cfg.quad_angular)
        phi = HermiteExpansion(_random_coeffs(rng, deg + 1) / 4.0)

        def image(z, phi=phi, q=q):
            return mlb_forward_integral(phi, q, z, hrule, N)

        back = mlb_inverse(image, x, planar, N)
        trip[str(q)] = float(np.max(np.abs(back - phi(x))))
    return {
        "coefficient_residual": iso,
        "coefficient_bound": ISOMETRY_TOL,
        "round_trip_max_error": trip,
        "round_trip_truncation": N,
        "round_trip_bound": ROUND_TRIP_TOL,
        "pass": iso <= ISOMETRY_TOL and all(v <= ROUND_TRIP_TOL for v in trip.values()),
    }


def kernel_identity_residuals(
    q: float, pairs: int, rng: np.random.Generator, radius: float = 1.5,
    hermite_order: int = 0,
) -> tuple[float, float, float]:
    """Residuals of ``<A^z, A^w> = E_q(w conj z)``, of the reversed order against
    its conjugate, and of ``||A^z||^2 = E_q(|z|^2)``; Gauss-Hermite quadrature
    of the truncated kernels."""
    N = kernel_truncation(q, radius, 1e-14)
    rule = gauss_hermite_rule(max(hermite_order, N + 1))
    z = _disk(rng, pairs, radius)
    w = _disk(rng, pairs, radius)
    Az = kernel_matrix(q, z, rule.nodes, N)
    Aw = kernel_matrix(q, w, rule.nodes, N)
    sw = rule.scaled_weights
    inner_zw = np.sum(sw * Az * np.conj(Aw), axis=1)
    inner_wz = np.sum(sw * Aw * np.conj(Az), axis=1)
    target = mittag_leffler(q, w * np.conj(z), 1e-15).value
    norms = np.sum(sw * np.abs(Az) ** 2, axis=1)
    target_norm = mittag_leffler(q, np.abs(z) ** 2, 1e-15).value
    return (
        float(np.max(np.abs(inner_zw - target))),
        float(np.max(np.abs(inner_wz - np.conj(target)))),
        float(np.max(np.abs(norms - target_norm))),
    )


def section_kernel(cfg: RunConfig, rng: np.random.Generator) -> dict:
    out = {}
    ok = True
    for q in (0.5, 1.0, 2.0):
        a, b, c = kernel_identity_residuals(q, 20, rng, hermite_order=cfg.hermite_order)
        out[str(q)] = {"inner_residual": a, "reversed_conjugate_residual": b, "norm_residual": c}
        ok = ok and max(a, b, c) <= KERNEL_TOL
    return {"residuals": out, "bound": KERNEL_TOL, "pass": ok}


def section_fourier(cfg: RunConfig, rng: np.random.Generator) -> dict:
    agreement = {}
    for q in (1.0, 2.0):
        worst = 0.0
        for degree in (0, 4, 8):
            f = MLFockElement(q, _random_coeffs(rng, degree + 1) / 3.0)
            z = _disk(rng, 4, 1.5)
            worst = max(worst, float(np.max(np.abs(s_q_numerical(f, z) - s_q_apply(f, z)))))
        agreement[str(q)] = worst
    seed = int(rng.integers(2**31))
    reports = [
        resolve_sign(1.0, seed=seed).to_dict(),
        resolve_sign(2.0, seed=seed).to_dict(),
        resolve_sign(1.0, trials=3, seed=seed, numerical=True).to_dict(),
    ]
    decisive = reports[0]["best_sign"] == 1 and not reports[0]["degenerate"]
    return {
        "path_agreement": agreement,
        "bound": FOURIER_TOL,
        "sign_reports": reports,
        "printed_sign_conflict": not reports[0]["agrees_with_printed"],
        "pass": all(v <= FOURIER_TOL for v in agreement.values()) and decisive,
    }


def section_commutator(cfg: RunConfig) -> dict:
    closed = 0.0
    for n in range(1, 21):
        closed = max(closed, abs(beta(n, 1) - 1.0))
        closed = max(closed, abs(beta(n, 2) - 2 * (4 * n + 1)) / (2 * (4 * n + 1)))
    derived = {"beta(2,3)": beta(2, 3), "beta(1,4)": beta(1, 4)}
    C = {str(q): list(synthesize_identity(q, q + 5).C) for q in (2, 3, 4)}
    ledger = misprint_ledger()
    ok = (
        closed <= 1e-12
        and derived == {"beta(2,3)": 384.0, "beta(1,4)": 1656.0}
        and C == {"2": [2, 4], "3": [6, 18, 9], "4": [24, 96, 72, 16]}
        and len(ledger) == 2
    )
    return {
        "closed_form_residual": closed,
        "derived_values": derived,
        "synthesized_C": C,
        "misprint_ledger": ledger,
        "table": commutator_table((1, 2, 3, 4), 6),
        "pass": ok,
    }


def section_conjecture(cfg: RunConfig) -> dict:
    reports = [verify_conjecture(q, 15).to_dict() for q in range(1, 9)]
    # falsification is a valid outcome; only a missing verdict fails
    complete = all(r["falsified_at"] is not None or r["verified_up_to"] == 15 for r in reports)
    return {"verdicts": reports, "pass": complete}


def eigen_residual(q: float, lam, terms: int = 40) -> float:
    """Largest relative coefficient mismatch in ``D E_q(lam z^q) = lam E_q(lam z^q)``."""
    E = FracPowerSeries.mittag_leffler(q, lam, terms)
    D = caputo_derivative(E).coeffs
    worst = 0.0
    for n, d in enumerate(D):
        ref = lam * E.coeffs[n]
        diff = d - ref
        if isinstance(diff, Fraction):
            worst = max(worst, float(abs(diff)))
        elif diff != 0:
            worst = max(worst, abs(complex(diff)) / abs(complex(ref)))
    return worst


def section_eigen(cfg: RunConfig) -> dict:
    out = {}
    for q in (0.5, 1, 2):
        for lam in (1, 2, -1, 1j):
            out[f"q={q},lambda={lam}"] = eigen_residual(q, lam)
    return {
        "residuals": out,
        "bound": EIGEN_FLOAT_TOL,
        "pass": all(v <= EIGEN_FLOAT_TOL for v in out.values()),
    }


def section_quaternion(cfg: RunConfig, rng: np.random.Generator) -> dict:
    one, i, j, k = (Quaternion(1.0), Quaternion(0, 1.0), Quaternion(0, 0, 1.0), Quaternion(0, 0, 0, 1.0))
    table = (
        i * i == -one and j * j == -one and k * k == -one
        and i * j == k and j * k == i and k * i == j
        and j * i == -k and k * j == -i and i * k == -j
    )
    pairs = rng.normal(size=(1000, 2, 4))
    mult = 0.0
    for a, b in pairs:
        p, s = Quaternion.from_array(a), Quaternion.from_array(b)
        mult = max(mult, abs(abs(p * s) - abs(p) * abs(s)) / (abs(p) * abs(s)))

    slice_res, kernel_res, herm_res = {}, {}, {}
    for q in (0.5, 1.0, 2.0):
        rule = build_planar_rule(q, cfg.quad_radial, cfg.quad_angular)
        f = QMLFockElement(q, rng.normal(size=(11, 4)))
        target = f.norm() ** 2
        slice_res[str(q)] = max(
            abs(slice_norm(f, SliceUnit.random(rng), rule) ** 2 - target) for _ in range(3)
        )
        worst_k = worst_h = 0.0
        for _ in range(5):
            unit = SliceUnit.random(rng)
            z, w = _disk(rng, 2, 1.5)
            K = qml_reproducing_kernel(q, Quaternion.from_complex(z, unit), Quaternion.from_complex(w, unit))
            ref = Quaternion.from_complex(mittag_leffler(q, z * np.conj(w), 1e-15).value, unit)
            worst_k = max(worst_k, abs(K - ref))
            p = _ball(rng, 1.5)
            s = _ball(rng, 1.5)
            worst_h = max(worst_h, abs(qml_reproducing_kernel(q, p, s) - qml_reproducing_kernel(q, s, p).conj()))
        kernel_res[str(q)] = worst_k
        herm_res[str(q)] = worst_h
    ok = (
        table
        and mult <= QUAT_NORM_TOL
        and all(v <= SLICE_NORM_TOL for v in slice_res.values())
        and all(v <= SLICE_KERNEL_TOL for v in kernel_res.values())
        and all(v <= HERMITIAN_TOL for v in herm_res.values())
    )
    return {
        "hamilton_table_exact": table,
        "norm_multiplicativity": mult,
        "slice_norm_residual": slice_res,
        "slice_kernel_residual": kernel_res,
        "hermitian_residual": herm_res,
        "pass": ok,
    }


def section_classical(cfg: RunConfig) -> dict:
    """The q = 1 case: ``E_1 = exp``, ``beta = 1``, Fourier sign ``+1``."""
    exp_res = abs(mittag_leffler(1.0, 1.0, 1e-15).value - math.e)
    betas = [beta(n, 1) for n in range(1, 11)]
    sign = resolve_sign(1.0, seed=cfg.seed).best_sign
    return {
        "E1_at_1_minus_e": exp_res,
        "beta_q1": betas,
        "fourier_sign": sign,
        "pass": exp_res <= 1e-15 and all(b == 1.0 for b in betas) and sign == 1,
    }


def run_report(cfg: RunConfig) -> dict:
    """The full battery; ``report['pass']`` is false if any section fails."""
    rng = np.random.default_rng(cfg.seed)
    sections = {
        "weight_diagnostic": section_weight(cfg),
        "basis_images": section_basis_images(cfg, rng),
        "isometry": section_isometry(cfg, rng),
        "kernel_identity": section_kernel(cfg, rng),
        "fourier": section_fourier(cfg, rng),
        "commutator": section_commutator(cfg),
        "conjecture": section_conjecture(cfg),
        "eigenproperty": section_eigen(cfg),
        "quaternion": section_quaternion(cfg, rng),
        "classical_q1": section_classical(cfg),
    }
    return {
        "config": cfg.to_dict(),
        "sections": sections,
        "failed_sections": [name for name, s in sections.items() if not s["pass"]],
        "pass": all(s["pass"] for s in sections.values()),
    }
