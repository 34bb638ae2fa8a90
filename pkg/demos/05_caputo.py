# %% [markdown]
# # Caputo derivatives and the commutator
#
# On series sum a_n z^(qn), the Caputo derivative of order q and
# multiplication by z^q act on coefficients. Their commutator multiplies the
# n-th coefficient by beta(n, q).

# %%
from mlfock import FracPowerSeries, beta, commutator_apply, misprint_ledger, synthesize_identity, verify_conjecture

f = FracPowerSeries(2, (0, 1))
print("commutator on z^2 at q=2:", commutator_apply(f).coeffs)
print("beta(n, 3), n=1..4:", [beta(n, 3) for n in range(1, 5)])

# %% [markdown]
# For integer q, the eigenvalues are matched by a differential operator
# sum_k C_k z^k d^k/dz^k. The coefficients come from an exact linear solve.

# %%
for q in (1, 2, 3, 4):
    print(q, synthesize_identity(q).C)

# %% [markdown]
# Closed forms that disagree with the gamma ratio are listed here.

# %%
for entry in misprint_ledger():
    print(entry)

# %% [markdown]
# The synthesized operator reproduces the commutator on every z^(qn) checked:
# up to degree 15 for q = 1..8, in exact arithmetic. The coefficients follow
# C_k = binom(q, k) q! / k! for k < q.

# %%
for q in range(1, 9):
    print(verify_conjecture(q, 15).to_dict())
