# %% [markdown]
# # The ML-Bargmann transform
#
# Hermite function psi_m maps to the normalized monomial
# z^m / sqrt(Gamma(qm+1)). There are two routes: the coefficient rule and the
# integral against the kernel. This demo runs both and compares them.

# %%
import numpy as np

from mlfock import (
    HermiteExpansion,
    build_planar_rule,
    gauss_hermite_rule,
    hermite_functions,
    mlb_forward_coeff,
    mlb_forward_integral,
    mlb_inverse,
    mittag_leffler,
)
from mlfock.transform import kernel_truncation

q = 1.5
phi = HermiteExpansion(np.array([1.0, 0.5j, -0.25, 0.0, 0.1]))
f = mlb_forward_coeff(phi, q)

z = np.array([0.3 + 0.2j, -1.0 + 0.5j, 1.5j])
rule = gauss_hermite_rule(80)
by_integral = mlb_forward_integral(lambda x: phi(x), q, z, rule, N=60)
print("forward paths:", np.max(np.abs(by_integral - f(z))))

# %% [markdown]
# The transform is an isometry, so norms agree.

# %%
print("norms:", phi.norm(), f.norm())

# %% [markdown]
# The inverse integrates over the plane. Aliasing is avoided when the angular
# grid has more points than max(kernel truncation, degree).

# %%
x = np.linspace(-3, 3, 7)
prule = build_planar_rule(q, 80, 128)
back = mlb_inverse(f, x, prule, N=64)
print("round trip:", np.max(np.abs(back - phi(x))))

# %% [markdown]
# The kernel norm is ||A^z||^2 = E_q(|z|^2).

# %%
w = 0.8 - 0.6j
N = kernel_truncation(q, abs(w), 1e-15)
psi = hermite_functions(N, rule.nodes)
from mlfock import ml_kernel

k = ml_kernel(q, w, rule.nodes, N)
print(np.sum(rule.scaled_weights * abs(k) ** 2), mittag_leffler(q, abs(w) ** 2, 1e-15).value.real)
