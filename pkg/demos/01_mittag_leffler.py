# %% [markdown]
# # Evaluating the Mittag-Leffler function
#
# E_q(z) = sum z^n / Gamma(qn + 1) is summed directly. The result carries the
# number of terms used and a bound on the neglected tail.

# %%
import math

from mlfock import gamma_pos, mittag_leffler

for q, z, exact in [(1, 1.0, math.e), (2, 4.0, math.cosh(2.0)), (0.5, 0.5, None)]:
    r = mittag_leffler(q, z, tol=1e-15)
    ref = "" if exact is None else f"  |err| = {abs(r.value - exact):.1e}"
    print(f"E_{q}({z}) = {r.value.real:.15f}  terms = {r.terms_used}{ref}")

# %% [markdown]
# For q = 1/2 there is a closed form, exp(z^2) erfc(-z).

# %%
z = 0.5
print(abs(mittag_leffler(0.5, z, 1e-15).value - math.exp(z * z) * math.erfc(-z)))

# %% [markdown]
# The gamma function underneath is a Lanczos approximation.

# %%
print(gamma_pos(0.5) ** 2 - math.pi, gamma_pos(11.0) - math.factorial(10))
