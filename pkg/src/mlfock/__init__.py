"""Numerical toolkit for Mittag-Leffler-Fock spaces and the ML-Bargmann transform."""

from .caputo import (
    ConjectureReport,
    DiffIdentity,
    FracPowerSeries,
    beta,
    caputo_derivative,
    commutator_apply,
    commutator_table,
    misprint_ledger,
    multiply_zq,
    synthesize_identity,
    verify_conjecture,
)
from .errors import (
    CapacityError,
    ConvergenceError,
    DomainError,
    InconclusiveError,
    InconsistentSystemError,
    MLFockError,
    TruncationError,
)
from .fourier import (
    SignReport,
    fourier_kernel_action,
    fourier_on_hermite,
    fourier_quadrature,
    resolve_sign,
    s_q_apply,
    s_q_numerical,
)
from .hermite import (
    GaussHermiteRule,
    HermiteExpansion,
    fit_samples,
    gauss_hermite_rule,
    hermite_function,
    hermite_functions,
    l2_inner,
    project_signal,
    quadrature_inner,
)
from .planar import PlanarRule, build_planar_rule, ml_inner, weight_diagnostic
from .quaternion import (
    QHermiteExpansion,
    QMLFockElement,
    Quaternion,
    SliceUnit,
    q_mul,
    qml_kernel,
    qml_reproducing_kernel,
    qmlb_forward,
    slice_decompose,
    slice_inner,
    slice_norm,
)
from .report import RunConfig, run_report
from .special import (
    MLOrder,
    TruncatedValue,
    gamma_pos,
    gamma_ratio,
    inv_sqrt_gamma,
    log_gamma,
    mittag_leffler,
)
from .transform import (
    MLFockElement,
    kernel_truncation,
    ml_kernel,
    ml_norm,
    mlb_forward_coeff,
    mlb_forward_integral,
    mlb_inverse,
    mlb_inverse_coeff,
    reproducing_kernel,
)

__version__ = "0.1.0"
