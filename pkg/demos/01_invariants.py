# %% [markdown]
# Cohomology of Sym^r of a torus, built by hand.
#
# The cohomology of the 2g-torus is an exterior algebra on 2g generators. For
# the r-fold symmetric product we take S_r-invariants of the r-th tensor power,
# where swapping two odd classes costs a sign.

# %%
from abelian_pw.graded_core import (
    ExteriorMonomial,
    InvariantClass,
    degree_counts,
    invariant_basis,
    signed_burnside_count,
)

g, r = 1, 2
basis = invariant_basis(g, r)
for b in basis:
    print(b.degree, b)

# %% Dimensions per degree, and the signed Burnside count of the total
print(sorted(degree_counts(basis).items()))
print(len(basis), signed_burnside_count(g, r))

# %% An orbit sum written out as tensor words
e1, e2 = ExteriorMonomial.of(2, 1), ExteriorMonomial.of(2, 2)
x = InvariantClass(1, 2, {(e1, e2): 1})
for word, c in x.words().items():
    print(c, " x ".join(map(str, word)))

# %% Odd classes square to something nonzero here because the signs do not cancel
print(x * x)

# %% A repeated odd factor has a vanishing orbit sum, so it is not in the basis
print([b for b in basis if b.representative == (e1, e1)])
