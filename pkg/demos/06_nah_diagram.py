# %% [markdown]
# Non-abelian Hodge for rank-one local systems, and the square it fits into.
#
# A character z of the lattice splits into a unitary part and a Higgs field
# lambda with 2 Re <lambda, l_i> = -log|z_i|. For rank r we take multisets.
# Forgetting the unitary part on the Dolbeault side matches -log|.| on the
# Betti side.

# %%
import numpy as np

from abelian_pw.nah_geometry import (
    Lattice,
    RankOneBetti,
    betti_to_dolbeault,
    hitchin_embedding,
    recover_multiset_g1,
    retract_to_sphere_quotient,
    verify_nah_diagram,
)

lat = Lattice.square(1)
p = betti_to_dolbeault(lat, RankOneBetti(np.array([np.e, 1.0])))
print(p.phases, p.higgs)

# %% Spectral data to elementary symmetric functions and back
sig = hitchin_embedding([[2], [3]])
print(sig)
print(recover_multiset_g1(sig).ravel())

# %% Retraction to the sphere quotient ignores scale and order
sd = np.array([[1 + 2j, 0.5], [-1, 3j]])
print(retract_to_sphere_quotient(sd))
print(np.allclose(retract_to_sphere_quotient(7 * sd[::-1]), retract_to_sphere_quotient(sd)[::-1]))

# %% The square commutes on random well-conditioned lattices, near infinity too
rng = np.random.default_rng(0)
for g in (1, 2, 3):
    lat = Lattice.random(g, rng)
    for radius in (0.0, 5.0):
        rep = verify_nah_diagram(lat, 3, 300, seed=g, radius=radius)
        print(g, radius, f"cond={lat.condition_number():.1f}", rep.details["max_residual"], rep.passed)
