# %% [markdown]
# The mixed Hodge polynomial and its curious symmetry.
#
# H(q, t) averages det(I + qt A_sigma)^{2g} over permutation matrices. Replacing
# q by 1/(q t^2) and multiplying by (qt)^{2gr} gives H back.

# %%
from abelian_pw.hodge_polynomials import (
    curious_dual,
    hodge_tate_check,
    mixed_hodge_polynomial,
    mixed_hodge_polynomial_by_permutations,
)

for g, r in [(1, 1), (1, 2), (2, 2)]:
    h = mixed_hodge_polynomial(g, r)
    print(f"g={g} r={r}: {h}")
    print("   dual agrees:", curious_dual(h, g, r) == h)

# %% Cycle types against a brute-force sum over all permutations
print(mixed_hodge_polynomial(2, 3) == mixed_hodge_polynomial_by_permutations(2, 3))

# %% With the other sign the average is not a Poincare polynomial at all
print(mixed_hodge_polynomial(1, 1, sign=-1))

# %% Only (p, p) Hodge types occur
print(hodge_tate_check(2, 2).summary())
