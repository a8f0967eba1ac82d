# %% [markdown]
# Curious hard Lefschetz as a rank computation.
#
# Weight and degree are tied together here, so L^k from weight 2gr-2k to
# 2gr+2k is cup product H^{gr-k} -> H^{gr+k}. We build the integer matrices and
# check that they are isomorphisms.

# %%
from abelian_pw.lefschetz import LefschetzOperator, random_positive_weights, verify_hard_lefschetz

op = LefschetzOperator.build(1, 2)
print(op.L)
for j, mat in op.matrices.items():
    print(j, "->", j + 2, mat)

# %%
for g, r in [(2, 2), (3, 2), (1, 5)]:
    rep = verify_hard_lefschetz(g, r)
    print(rep.summary())
    for row in rep.details["ranks"]:
        print("   ", row)

# %% Other positive combinations of the symplectic pieces also work
w = random_positive_weights(3, seed=11)
print(w, verify_hard_lefschetz(3, 1, w).passed)

# %% A degenerate class does not
print(verify_hard_lefschetz(2, 1, [1, 0]).counterexample)
