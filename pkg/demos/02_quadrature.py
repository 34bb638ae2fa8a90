# %% [markdown]
# # Quadrature on the line and in the plane
#
# Hermite functions are orthonormal in L^2(R). Gauss-Hermite rules with
# rescaled weights compute their inner products exactly.

# %%
import numpy as np

from mlfock import build_planar_rule, gamma_pos, gauss_hermite_rule, hermite_functions, weight_diagnostic

rule = gauss_hermite_rule(40)
psi = hermite_functions(10, rule.nodes)
gram = (psi * rule.scaled_weights) @ psi.T
print("Hermite Gram error:", np.max(np.abs(gram - np.eye(11))))

# %% [markdown]
# In the plane the weight is |z|^(2/q-2) exp(-|z|^(2/q)) / (q pi). The monomials
# z^n then have squared norm Gamma(qn+1). The rule below pairs a Gauss rule
# in the radius with a uniform angular grid.

# %%
for q in (0.5, 1.0, 2.0, 3.0):
    prule = build_planar_rule(q, 40, 32)
    z = prule.points
    G = np.array([[np.sum(prule.weights * z**m * np.conj(z) ** n) for n in range(8)] for m in range(8)])
    target = np.array([gamma_pos(q * n + 1) for n in range(8)])
    scale = np.sqrt(np.outer(target, target))
    print(f"q={q}: normalized Gram error {np.max(np.abs(G / scale - np.eye(8))):.1e}")

# %% [markdown]
# Dropping the |z|^(2/q-2) factor (the literal weight) breaks the
# normalization: at q = 2, n = 0 the norm comes out as sqrt(pi/2).

# %%
for row in weight_diagnostic((2.0,), n_max=2):
    print(row)
