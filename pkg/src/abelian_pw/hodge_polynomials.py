"""Mixed Hodge polynomial of the Betti moduli space and its curious duality.

The polynomial is an average over S_r of det(I + qt A_sigma)^{2g}; grouping
permutations by cycle type gives

    H(q, t) = sum_lambda z_lambda^{-1} prod_i (1 - (-qt)^{lambda_i})^{2g}.

With the opposite sign inside the determinant the average already has a
negative coefficient at g = r = 1, so ``sign=-1`` is kept only for comparison.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter

from .filtration_tables import BigradedTable, torus_weight, weight_table
from .graded_core import CycleType, TensorWord, all_monomials, check_resources, cycle_types, invariant_basis
from .laurent import BiLaurent
from .reports import Report

__all__ = [
    "BiLaurent",
    "CycleType",
    "mixed_hodge_polynomial",
    "mixed_hodge_polynomial_by_permutations",
    "polynomial_to_table",
    "table_to_polynomial",
    "verify_curious_duality",
    "hodge_tate_check",
    "curious_dual",
]


def _cycle_factor(length: int, u: BiLaurent, sign: int) -> BiLaurent:
    # det(I + sign*u*C) for an l-cycle C equals 1 - (-sign*u)^l
    return BiLaurent.constant(1) - (u * (-sign)) ** length


def mixed_hodge_polynomial(g: int, r: int, *, sign: int = 1) -> BiLaurent:
    """(1/r!) sum_sigma det(I_r + sign*qt*A_sigma)^{2g}, summed over cycle types."""
    if g < 1 or r < 1:
        raise ValueError(f"need g >= 1 and r >= 1, got g={g}, r={r}")
    u = BiLaurent.monomial(1, 1)
    total = BiLaurent.zero()
    for ct in cycle_types(r):
        det = BiLaurent.constant(1)
        for length in ct.parts:
            det = det * _cycle_factor(length, u, sign)
        total = total + det ** (2 * g) * ct.class_size
    return total.exact_div(math.factorial(r))


def _det_polynomial(matrix: list[list[BiLaurent]]) -> BiLaurent:
    """Leibniz expansion; only for the small permutation-matrix oracle."""
    n = len(matrix)
    total = BiLaurent.zero()
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = BiLaurent.constant(-1 if inv & 1 else 1)
        for i, p in enumerate(perm):
            entry = matrix[i][p]
            if not entry:
                term = BiLaurent.zero()
                break
            term = term * entry
        total = total + term
    return total


def mixed_hodge_polynomial_by_permutations(g: int, r: int, *, sign: int = 1) -> BiLaurent:
    """Same average, with det(I + sign*qt*A_sigma) expanded entrywise for every sigma.

    Exponential in r; used to cross-check the cycle-type formula for r <= 5.
    """
    u = BiLaurent.monomial(1, 1) * sign
    total = BiLaurent.zero()
    for sigma in itertools.permutations(range(r)):
        rows = []
        for i in range(r):
            row = []
            for j in range(r):
                entry = BiLaurent.constant(1) if i == j else BiLaurent.zero()
                if sigma[j] == i:
                    entry = entry + u
                row.append(entry)
            rows.append(row)
        total = total + _det_polynomial(rows) ** (2 * g)
    return total.exact_div(math.factorial(r))


def table_to_polynomial(table: BigradedTable) -> BiLaurent:
    return BiLaurent(dict(table.dims))


def polynomial_to_table(poly: BiLaurent, g: int, r: int, side: str = "hodge") -> BigradedTable:
    return BigradedTable(g, r, side, dict(poly.coefficients))


def curious_dual(poly: BiLaurent, g: int, r: int) -> BiLaurent:
    """(qt)^{2gr} * H(q^-1 t^-2, t)."""
    n = 2 * g * r
    return poly.substitute((-1, -2), (0, 1)).shift(n, n)


def verify_curious_duality(g: int, r: int, *, inject_fault: bool = False) -> Report:
    poly = mixed_hodge_polynomial(g, r)
    if inject_fault:
        poly = poly + BiLaurent.monomial(1, 1)
    dual = curious_dual(poly, g, r)
    diff = dual - poly
    counterexample = None
    if diff:
        a, b, _ = diff.terms()[0]
        counterexample = {"q": a, "t": b, "H": poly[(a, b)], "dual": dual[(a, b)]}
    return Report(
        claim="curious Poincare duality: H(1/(q t^2), t) = (qt)^(-2gr) H(q, t)",
        passed=not diff,
        params={"g": g, "r": r},
        details={"polynomial": str(poly), "terms": poly.to_json()},
        counterexample=counterexample,
    )


def _hodge_types(g: int, r: int, inject_fault: bool) -> Counter:
    """Counts h^{p,q;j} of the invariants, from the (1,1) type of each torus generator."""
    types: Counter = Counter()
    for b in invariant_basis(g, r):
        word = TensorWord(b.representative)
        p = q = sum(torus_weight(m) // 2 for m in b.representative)
        types[(p, q, word.degree)] += 1
    if inject_fault:
        # a stray class of type (1,0) in degree 1
        types[(1, 0, 1)] += 1
    return types


def hodge_tate_check(g: int, r: int, *, inject_fault: bool = False) -> Report:
    """Every graded piece has Hodge type (p, p), hence even weight 2p."""
    check_resources(g, r)
    types = _hodge_types(g, r, inject_fault)
    bad = sorted(k for k, v in types.items() if v and k[0] != k[1])
    # collapse to H(q, t) and compare with the weight-side table
    collapsed = Counter()
    for (p, q, j), v in types.items():
        if p == q:
            collapsed[(p, j)] += v
    agrees = dict(collapsed) == dict(weight_table(g, r).dims)
    counterexample = None
    if bad:
        p, q, j = bad[0]
        counterexample = {"p": p, "q": q, "j": j, "dim": types[bad[0]]}
    elif not agrees:
        counterexample = {"reason": "(p,p) pieces do not reproduce the weight table"}
    return Report(
        claim="Hodge-Tate type: h^(p,q;j) = 0 unless p = q",
        passed=not bad and agrees,
        params={"g": g, "r": r},
        details={
            "types": [{"p": p, "q": q, "j": j, "dim": v} for (p, q, j), v in sorted(types.items())],
            "even_weights_only": not bad,
            "matches_weight_table": agrees,
        },
        counterexample=counterexample,
    )
