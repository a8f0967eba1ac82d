import itertools
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from abelian_pw.errors import DomainError, LatticeError, UsageError
from abelian_pw.nah_geometry import (
    HiggsMultiset,
    Lattice,
    RankOneBetti,
    RankOneDolbeault,
    betti_to_dolbeault,
    dolbeault_to_betti,
    embedding_vector,
    hitchin_embedding,
    multiset_distance,
    neg_log_modulus,
    period_image,
    recover_multiset_g1,
    retract_to_sphere_quotient,
    sample_betti_points,
    spectral_data,
    verify_nah_diagram,
    verify_roundtrip,
)

seeds = st.integers(0, 2**32 - 1)


def random_multiset(rng, r, g, scale=1.0):
    return scale * (rng.normal(size=(r, g)) + 1j * rng.normal(size=(r, g)))


def evaluate_sigma(poly, y):
    return sum(c * np.prod(y ** np.array(e)) for e, c in poly.items())


# -- rank one


def test_square_lattice_example():
    lat = Lattice.square(1)
    z = RankOneBetti(np.array([np.e, 1.0]))
    p = betti_to_dolbeault(lat, z)
    assert np.allclose(p.higgs, [-0.5])
    assert np.allclose(p.phases, [1, 1])


@given(seeds, st.integers(1, 3))
def test_rank_one_roundtrips(seed, g):
    rng = np.random.default_rng(seed)
    lat = Lattice.random(g, rng)
    z = RankOneBetti(np.exp(rng.normal(size=2 * g) + 1j * rng.uniform(0, 6.28, size=2 * g)))
    back = dolbeault_to_betti(lat, betti_to_dolbeault(lat, z))
    assert np.allclose(back.values, z.values, rtol=1e-10, atol=0)
    p = RankOneDolbeault(np.exp(1j * rng.uniform(0, 6.28, size=2 * g)), rng.normal(size=g) + 1j * rng.normal(size=g))
    again = betti_to_dolbeault(lat, dolbeault_to_betti(lat, p))
    assert np.allclose(again.higgs, p.higgs, atol=1e-10)
    assert np.allclose(again.phases, p.phases, atol=1e-12)


@given(seeds)
def test_period_image_is_the_negative_log_modulus(seed):
    rng = np.random.default_rng(seed)
    lat = Lattice.random(2, rng)
    z = RankOneBetti(np.exp(rng.normal(size=4)))
    assert np.allclose(period_image(lat, betti_to_dolbeault(lat, z).higgs), neg_log_modulus(z), atol=1e-10)


def test_lattice_validation(tmp_path):
    with pytest.raises(LatticeError):
        Lattice(np.array([[1.0], [2.0]]))
    with pytest.raises(UsageError):
        Lattice(np.ones((3, 1)))
    lat = Lattice.square(2, tau=0.3 + 1.1j)
    path = tmp_path / "lat.json"
    path.write_text(json.dumps(lat.to_json()))
    assert np.array_equal(Lattice.load(path).basis, lat.basis)


def test_point_validation():
    with pytest.raises(DomainError):
        RankOneBetti(np.array([0.0, 1.0]))
    with pytest.raises(DomainError):
        RankOneDolbeault(np.array([2.0, 1.0]), np.array([0.0]))


# -- spectral data


def test_worked_rank_two_value():
    sig = hitchin_embedding([[2], [3]])
    assert sig == {1: {(1,): 5}, 2: {(2,): 6}}


@given(seeds, st.integers(1, 3), st.integers(1, 4))
def test_sigma_is_elementary_symmetric_in_pairings(seed, g, r):
    rng = np.random.default_rng(seed)
    sd = random_multiset(rng, r, g)
    y = rng.normal(size=g) + 1j * rng.normal(size=g)
    # np.poly gives prod (s - x_a) = s^r - e1 s^{r-1} + e2 s^{r-2} - ...
    coeffs = np.poly(sd @ y)
    sig = hitchin_embedding(sd)
    for i in range(1, r + 1):
        assert abs(evaluate_sigma(sig[i], y) - (-1) ** i * coeffs[i]) < 1e-9 * (1 + abs(coeffs[i]))


@given(seeds, st.integers(1, 3), st.integers(1, 4), st.floats(0.1, 10), st.floats(0, 6.28))
def test_gm_equivariance(seed, g, r, mod, arg):
    rng = np.random.default_rng(seed)
    t = mod * np.exp(1j * arg)
    points = tuple(RankOneDolbeault(np.ones(2 * g), h) for h in random_multiset(rng, r, g))
    m = HiggsMultiset(points)
    sd, sd_scaled = spectral_data(m), spectral_data(m.scaled(t))
    scale = np.max(np.abs(sd)) * mod
    assert np.max(np.abs(sd_scaled - t * sd)) <= 1e-12 * scale
    # sigma_i is homogeneous of degree i
    a, b = hitchin_embedding(sd), hitchin_embedding(sd_scaled)
    for i in a:
        for e in a[i]:
            assert abs(b[i][e] - t**i * a[i][e]) <= 1e-9 * (1 + abs(t**i * a[i][e]))


@given(seeds, st.integers(1, 3), st.integers(1, 4), st.floats(1e-3, 1e3))
def test_retraction_is_scale_and_order_invariant(seed, g, r, c):
    rng = np.random.default_rng(seed)
    sd = random_multiset(rng, r, g)
    base = retract_to_sphere_quotient(sd)
    assert np.linalg.norm(base) == pytest.approx(1.0, abs=1e-12)
    assert np.max(np.abs(retract_to_sphere_quotient(c * sd) - base)) <= 1e-12
    order = rng.permutation(r)
    assert multiset_distance(retract_to_sphere_quotient(sd[order]), base) <= 1e-12


def test_retraction_rejects_origin():
    with pytest.raises(DomainError):
        retract_to_sphere_quotient(np.zeros((2, 2)))


def test_embedding_separates_distinct_multisets():
    rng = np.random.default_rng(7)
    worst = np.inf
    for n in range(1000):
        g, r = 1 + n % 3, 1 + n % 4
        a, b = random_multiset(rng, r, g), random_multiset(rng, r, g)
        if multiset_distance(a, b) < 1e-3:
            continue
        va, vb = embedding_vector(hitchin_embedding(a), g), embedding_vector(hitchin_embedding(b), g)
        worst = min(worst, float(np.max(np.abs(va - vb))))
    assert worst > 1e-6


@given(seeds, st.integers(1, 3))
def test_recovery_for_curves(seed, r):
    rng = np.random.default_rng(seed)
    sd = random_multiset(rng, r, 1)
    assert multiset_distance(recover_multiset_g1(hitchin_embedding(sd)), sd) < 1e-8


def test_multiset_distance_ignores_order():
    a = np.array([[1.0], [2.0], [3.0]])
    for perm in itertools.permutations(range(3)):
        assert multiset_distance(a, a[list(perm)]) == 0


# -- diagram


@pytest.mark.parametrize("g", [1, 2, 3])
@pytest.mark.parametrize("r", [1, 2, 4])
def test_diagram_and_roundtrip_on_random_lattice(g, r):
    lat = Lattice.random(g, np.random.default_rng(g * 10 + r))
    assert verify_roundtrip(lat, r, 100, seed=1).passed
    assert verify_nah_diagram(lat, r, 100, seed=1, radius=1.5).passed


def test_sampling_respects_radius_and_is_reproducible():
    a = sample_betti_points(2, 2, 50, seed=3, radius=4.0)
    b = sample_betti_points(2, 2, 50, seed=3, radius=4.0)
    assert np.array_equal(a, b)
    norms = np.linalg.norm(np.log(np.abs(a)).reshape(50, -1), axis=1)
    assert norms.min() >= 4.0 - 1e-9


def test_faults_are_reported():
    lat = Lattice.square(2)
    rep = verify_nah_diagram(lat, 2, 20, seed=0, inject_fault=True)
    assert not rep.passed and rep.counterexample["sample"] == 10
    assert not verify_roundtrip(lat, 2, 20, seed=0, inject_fault=True).passed
