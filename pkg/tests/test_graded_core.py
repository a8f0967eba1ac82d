import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abelian_pw.errors import ResourceLimitError, UsageError
from abelian_pw.graded_core import (
    CycleType,
    ExteriorMonomial,
    GradedClass,
    InvariantClass,
    InvariantWord,
    TensorWord,
    all_monomials,
    canonical_form,
    check_resources,
    compose,
    cup_invariants,
    cycle_types,
    degree_counts,
    invariant_basis,
    koszul_sign,
    multiply_words,
    permute_word,
    signed_burnside_count,
    symmetrize,
    wedge,
)
from oracles import invariant_dims_by_projector, permute_by_swaps, wedge_by_sorting

SMALL_SHAPES = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)]


def monomials(dim):
    return st.integers(0, (1 << dim) - 1).map(lambda m: ExteriorMonomial(m, dim))


# -- exterior algebra


@given(st.integers(1, 6).flatmap(lambda d: st.tuples(monomials(d), monomials(d))))
def test_wedge_matches_bubble_sort(pair):
    a, b = pair
    prod = wedge(a, b)
    sign, mask = wedge_by_sorting(a.mask, b.mask)
    if sign == 0:
        assert prod.is_zero()
    else:
        assert prod.terms == {ExteriorMonomial(mask, a.dim): sign}


@given(st.integers(1, 6).flatmap(lambda d: st.tuples(monomials(d), monomials(d))))
def test_wedge_graded_commutative(pair):
    a, b = pair
    assert wedge(a, b) == (-1) ** (a.degree * b.degree) * wedge(b, a)


@given(st.integers(1, 5).flatmap(lambda d: st.tuples(monomials(d), monomials(d), monomials(d))))
def test_wedge_associative(triple):
    a, b, c = triple
    x, y, z = (GradedClass.from_monomial(m) for m in (a, b, c))
    assert (x * y) * z == x * (y * z)


def test_monomial_order_and_printing():
    ms = all_monomials(3)
    assert len(ms) == 8
    assert [m.degree for m in ms] == sorted(m.degree for m in ms)
    assert str(ExteriorMonomial.of(4, 1, 3)) == "e{1,3}"
    assert str(ExteriorMonomial.unit(4)) == "1"


# -- signed S_r action


words = st.integers(1, 2).flatmap(
    lambda g: st.integers(1, 4).flatmap(lambda r: st.tuples(st.lists(monomials(2 * g), min_size=r, max_size=r), st.permutations(range(r)), st.permutations(range(r))))
)


@given(words)
def test_permute_word_matches_adjacent_swaps(data):
    factors, sigma, _ = data
    out = permute_word(sigma, TensorWord(tuple(factors)))
    sign, masks = permute_by_swaps(sigma, [f.mask for f in factors])
    assert tuple(f.mask for f in out.factors) == masks
    assert out.coefficient == sign


@given(words)
def test_action_is_a_group_action(data):
    factors, sigma, tau = data
    w = TensorWord(tuple(factors))
    assert permute_word(sigma, permute_word(tau, w)) == permute_word(compose(sigma, tau), w)


def test_koszul_sign_only_counts_odd_pairs():
    assert koszul_sign((1, 0), (1, 1)) == -1
    assert koszul_sign((1, 0), (1, 2)) == 1
    assert koszul_sign((2, 1, 0), (1, 1, 1)) == -1


def test_permute_rejects_non_permutations():
    w = TensorWord((ExteriorMonomial.unit(2),) * 2)
    with pytest.raises(UsageError):
        permute_word((0, 0), w)


# -- invariant basis


@pytest.mark.parametrize("g,r", SMALL_SHAPES)
def test_basis_dimensions_match_projector_rank(g, r):
    counts = degree_counts(invariant_basis(g, r))
    assert dict(counts) == {d: n for d, n in invariant_dims_by_projector(g, r).items() if n}


def test_sixteen_word_case_has_two_invariants_in_degree_two():
    assert len(invariant_basis(1, 2, degree=2)) == 2


@pytest.mark.parametrize("g,r", SMALL_SHAPES + [(1, 4), (3, 1)])
def test_orbit_sums_are_invariant(g, r):
    for b in invariant_basis(g, r):
        words = {tw.factors: tw.coefficient for tw in b.orbit_sum}
        for sigma in itertools.permutations(range(r)):
            moved = {}
            for w, c in words.items():
                p = permute_word(sigma, TensorWord(w, c))
                moved[p.factors] = p.coefficient
            assert moved == words


@pytest.mark.parametrize("g,r", [(1, 2), (1, 3), (2, 2)])
def test_symmetrize_is_idempotent_and_fixes_orbit_sums(g, r):
    for b in invariant_basis(g, r):
        orbit = {tw.factors: tw.coefficient for tw in b.orbit_sum}
        assert symmetrize(orbit) == orbit
        once = symmetrize({b.representative: Fraction(1)})
        assert symmetrize(once) == once
        ratio = {once[w] / c for w, c in orbit.items()}
        assert len(ratio) == 1


def test_repeated_odd_monomial_vanishes():
    e1 = ExteriorMonomial.of(2, 1)
    assert canonical_form((e1, e1))[0] == 0
    assert symmetrize({(e1, e1): Fraction(1)}) == {}


@pytest.mark.parametrize("g,r", [(g, r) for g in range(1, 5) for r in range(1, 9) if 2 * g * r <= 16])
def test_basis_size_equals_signed_burnside(g, r):
    assert len(invariant_basis(g, r)) == signed_burnside_count(g, r)


@pytest.mark.parametrize("g,r", [(1, 2), (1, 3), (2, 2), (3, 1), (2, 3)])
def test_poincare_duality_of_dimensions(g, r):
    counts = degree_counts(invariant_basis(g, r))
    n = 2 * g * r
    assert all(counts[j] == counts[n - j] for j in range(n + 1))


# -- cup product


def basis_classes(g, r):
    return [InvariantClass.from_basis(g, r, b) for b in invariant_basis(g, r)]


shapes = st.sampled_from([(1, 2), (1, 3), (2, 2)])


@st.composite
def class_pairs(draw, n=2):
    g, r = draw(shapes)
    basis = invariant_basis(g, r)
    picks = []
    for _ in range(n):
        chosen = draw(st.lists(st.sampled_from(basis), min_size=1, max_size=3))
        coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(chosen), max_size=len(chosen)))
        cls = InvariantClass(g, r, {})
        for b, c in zip(chosen, coeffs):
            cls = cls + InvariantClass.from_basis(g, r, b, c)
        picks.append(cls)
    return picks


@given(class_pairs())
def test_cup_agrees_with_full_word_product(pair):
    x, y = pair
    assert cup_invariants(x, y).words() == multiply_words(x.words(), y.words())


@given(class_pairs(3))
def test_cup_is_associative(triple):
    x, y, z = triple
    assert (x * y) * z == x * (y * z)


@given(class_pairs())
def test_cup_is_graded_commutative(pair):
    x, y = pair
    for dx in x.degrees():
        for dy in y.degrees():
            a, b = x.component(dx), y.component(dy)
            assert a * b == (-1) ** (dx * dy) * (b * a)


def test_unit_is_neutral():
    for cls in basis_classes(2, 2):
        assert InvariantClass.unit(2, 2) * cls == cls


def test_square_of_odd_orbit_sum():
    e1, e2, e12 = (ExteriorMonomial.of(2, *s) for s in ((1,), (2,), (1, 2)))
    x = InvariantClass(1, 2, {(e1, e2): 1})
    assert x * x == InvariantClass(1, 2, {(e12, e12): -2})


def test_invariant_class_rejects_non_canonical_keys():
    e1, e2 = ExteriorMonomial.of(2, 1), ExteriorMonomial.of(2, 2)
    with pytest.raises(UsageError):
        InvariantClass(1, 2, {(e2, e1): 1})


# -- cycle types and resources


@pytest.mark.parametrize("r", range(1, 8))
def test_cycle_type_class_sizes_partition_the_group(r):
    import math

    assert sum(ct.class_size for ct in cycle_types(r)) == math.factorial(r)


def test_cycle_type_of_permutation():
    assert CycleType.of_permutation((1, 2, 0, 4, 3)).parts == (3, 2)


def test_resource_guard(monkeypatch):
    with pytest.raises(ResourceLimitError):
        check_resources(5, 3)
    monkeypatch.setenv("PW_MAX_WORD_BITS", "40")
    check_resources(5, 3)
    with pytest.raises(UsageError):
        check_resources(0, 2)


def test_invariant_word_string():
    rep = (ExteriorMonomial.unit(2), ExteriorMonomial.of(2, 1))
    assert str(InvariantWord(rep)) == "O(1 x e{1})"
