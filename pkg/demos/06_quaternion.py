# %% [markdown]
# # Quaternionic slice functions
#
# Elements are power series sum p^n c_n with quaternion coefficients on the
# right. Restricted to a slice C_I = {x + yI}, they behave like complex
# ML-Fock functions, and the norm computed on any slice is the same.

# %%
import numpy as np

from mlfock import QMLFockElement, Quaternion, SliceUnit, build_planar_rule, qml_reproducing_kernel, slice_norm

print("i j =", Quaternion(0, 1) * Quaternion(0, 0, 1))

q = 1.0
rng = np.random.default_rng(0)
f = QMLFockElement(q, rng.normal(size=(6, 4)))
rule = build_planar_rule(q, 60, 64)
for _ in range(3):
    u = SliceUnit.random(rng)
    print("slice norm:", slice_norm(f, u, rule), " coefficient norm:", f.norm())

# %% [markdown]
# The reproducing kernel is the ordered sum sum p^n conj(s)^n / Gamma(qn+1).
# It is Hermitian: K(p, s) = conj(K(s, p)).

# %%
p, s = Quaternion(0.2, 0.5, -0.3, 0.1), Quaternion(-0.4, 0.1, 0.6, 0.3)
print(qml_reproducing_kernel(q, p, s))
print(qml_reproducing_kernel(q, s, p).conj())
