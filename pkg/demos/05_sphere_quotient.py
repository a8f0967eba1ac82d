# %% [markdown]
# The sphere S^{2gr-1}/S_r at infinity.
#
# Rationally it is a sphere. Integrally, near a point fixed by a transposition,
# it looks like a ball times a cone on RP^{2g-1}, and the Kunneth formula for
# pairs leaves 2-torsion that a manifold cannot have.

# %%
from abelian_pw.torsion_topology import (
    ball_pair,
    cone_rp_pair,
    kunneth_pairs,
    manifold_model,
    manifold_obstruction,
    rational_sphere_check,
)

print(cone_rp_pair(3))
print()
print(kunneth_pairs(ball_pair(3), cone_rp_pair(3)))
print()
print(manifold_model(7))

# %%
for g in range(1, 4):
    for r in range(2, 4):
        rep = manifold_obstruction(g, r)
        print(g, r, rep.details["verdict"], rep.details["witness"])

# %%
print(rational_sphere_check(2, 3).details["rational_betti"])
