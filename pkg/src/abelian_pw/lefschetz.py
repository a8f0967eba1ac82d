"""Hyperplane class on the symmetric product and the curious hard Lefschetz check.

On Sym^r of the 2g-torus every graded piece of H^j sits at half weight j, so
L^k : Gr^W_{2gr-2k} -> Gr^W_{2gr+2k} is the map H^{gr-k} -> H^{gr+k} and the
claim becomes a rank condition on integer matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact_linalg import PRIMES, certified_rank, exact_rank, rank_mod_p, to_mod_p
from .graded_core import (
    ExteriorMonomial,
    InvariantClass,
    check_resources,
    cup_invariants,
    invariant_basis,
)
from .reports import Report


def symplectic_form(g: int, weights: Sequence[int] | None = None) -> dict[ExteriorMonomial, Fraction]:
    """sum_i c_i e_i ^ e_{g+i}; c_i = 1 unless weights are given."""
    weights = [1] * g if weights is None else list(weights)
    if len(weights) != g:
        raise ValueError(f"need {g} weights, got {len(weights)}")
    return {ExteriorMonomial.of(2 * g, i + 1, g + i + 1): Fraction(c) for i, c in enumerate(weights)}


def hyperplane_class(g: int, r: int, weights: Sequence[int] | None = None) -> InvariantClass:
    """sum over slots a of 1 x ... x omega x ... x 1, on the orbit-sum basis."""
    unit = ExteriorMonomial.unit(2 * g)
    coeffs = {}
    for m, c in symplectic_form(g, weights).items():
        # orbit sum of (1, ..., 1, m) puts m in each slot once, all with sign +1
        coeffs[(unit,) * (r - 1) + (m,)] = c
    return InvariantClass(g, r, coeffs)


@dataclass
class LefschetzOperator:
    """Cup product with L, as integer matrices between invariant bases of adjacent even steps."""

    g: int
    r: int
    L: InvariantClass
    bases: dict[int, list[tuple]] = field(default_factory=dict)
    matrices: dict[int, list[list[int]]] = field(default_factory=dict)

    @classmethod
    def build(cls, g: int, r: int, weights: Sequence[int] | None = None, *, bound: int | None = None) -> LefschetzOperator:
        check_resources(g, r, bound)
        L = hyperplane_class(g, r, weights)
        if L.degrees() != {2}:
            raise ValueError("hyperplane class must be homogeneous of degree 2")
        bases: dict[int, list[tuple]] = {j: [] for j in range(2 * g * r + 1)}
        for b in invariant_basis(g, r, bound=bound):
            bases[b.degree].append(b.representative)
        op = cls(g, r, L, bases)
        for j in range(2 * g * r - 1):
            op.matrices[j] = op._matrix(j)
        return op

    def _matrix(self, j: int) -> list[list[int]]:
        source, target = self.bases[j], self.bases[j + 2]
        index = {rep: i for i, rep in enumerate(target)}
        mat = [[0] * len(source) for _ in target]
        for col, rep in enumerate(source):
            image = cup_invariants(self.L, InvariantClass(self.g, self.r, {rep: 1}))
            for trep, c in image.coeffs.items():
                if c.denominator != 1:
                    raise ArithmeticError(f"non-integral Lefschetz coefficient {c}")
                mat[index[trep]][col] = int(c)
        return mat

    def dim(self, j: int) -> int:
        return len(self.bases.get(j, []))

    def power_matrix(self, k: int, j: int) -> list[list[int]]:
        """Exact integer matrix of L^k : H^j -> H^{j+2k}."""
        out = np.eye(self.dim(j), dtype=object)
        for step in range(k):
            m = self.matrices.get(j + 2 * step)
            if m is None:
                return [[0] * self.dim(j) for _ in range(self.dim(j + 2 * k))]
            out = np.array(m, dtype=object).reshape(self.dim(j + 2 * step + 2), -1) @ out
        return out.tolist()

    def power_rank(self, k: int, j: int) -> tuple[int, str]:
        src, tgt = self.dim(j), self.dim(j + 2 * k)
        if src == 0 or tgt == 0:
            return 0, "empty"
        if max(src, tgt) <= 160:
            return certified_rank(self.power_matrix(k, j))
        full = min(src, tgt)
        for p in PRIMES:
            acc = np.eye(src, dtype=np.int64)
            for step in range(k):
                m = to_mod_p(self.matrices[j + 2 * step], p).reshape(self.dim(j + 2 * step + 2), -1)
                acc = (m @ acc) % p
            if rank_mod_p(acc, p) == full:
                return full, f"mod-p certificate (p={p})"
        return exact_rank(self.power_matrix(k, j)), "bareiss"


def verify_hard_lefschetz(
    g: int,
    r: int,
    weights: Sequence[int] | None = None,
    *,
    inject_fault: bool = False,
    bound: int | None = None,
) -> Report:
    op = LefschetzOperator.build(g, r, weights, bound=bound)
    mid = g * r
    if inject_fault and op.dim(mid - 1):
        # kill the image of one basis vector in the first map L : H^{gr-1} -> H^{gr+1}
        for row in op.matrices[mid - 1]:
            row[0] = 0
    rows, failed = [], None
    for k in range(1, mid + 1):
        src, tgt = op.dim(mid - k), op.dim(mid + k)
        rank, method = op.power_rank(k, mid - k)
        ok = rank == src == tgt
        rows.append({"k": k, "source_dim": src, "target_dim": tgt, "rank": rank, "pass": ok, "method": method})
        if not ok and failed is None:
            failed = {"k": k, "source_degree": mid - k, "target_degree": mid + k, "rank": rank, "source_dim": src, "target_dim": tgt}
    return Report(
        claim="curious hard Lefschetz: L^k : Gr^W_{2gr-2k} H^* -> Gr^W_{2gr+2k} H^{*+2k} is an isomorphism",
        passed=failed is None,
        params={"g": g, "r": r, "weights": list(weights) if weights is not None else [1] * g},
        details={"ranks": rows, "hyperplane_class": str(op.L)},
        counterexample=failed,
    )


def random_positive_weights(g: int, seed: int, high: int = 9) -> list[int]:
    rng = random.Random(seed)
    return [rng.randint(1, high) for _ in range(g)]
