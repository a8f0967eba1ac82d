"""Finitely generated abelian groups, the Kunneth formula for pairs, and local
homology of the sphere quotient S^{2gr-1}/S_r at a point with stabilizer Z/2.

>>> print(tensor(Z, cyclic(4)))
Z/4
>>> print(tor(cyclic(4), cyclic(6)))
Z/2
>>> print(kunneth_pairs(ball_pair(3), cone_rp_pair(3)))
5: Z/2
7: Z
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError
from .graded_core import cycle_types
from .reports import Report


def _invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Normalize a list of cyclic orders to invariant factors d1 | d2 | ... (each >= 2)."""
    ds = [d for d in orders if d != 1]
    if any(d < 1 for d in ds):
        raise ValueError(f"cyclic orders must be positive: {ds}")
    # pairwise (gcd, lcm) sweeps until the chain divides
    changed = True
    while changed:
        changed = False
        for i, j in itertools.combinations(range(len(ds)), 2):
            a, b = ds[i], ds[j]
            g, l = math.gcd(a, b), a * b // math.gcd(a, b)
            if (g, l) != (a, b):
                ds[i], ds[j] = g, l
                changed = True
    return tuple(sorted(d for d in ds if d != 1))


@dataclass(frozen=True)
class FGAbGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", _invariant_factors(self.torsion))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __add__(self, other: FGAbGroup) -> FGAbGroup:
        return FGAbGroup(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}


ZERO = FGAbGroup()
Z = FGAbGroup(1)


def cyclic(n: int) -> FGAbGroup:
    """Z/n (n = 0 gives Z)."""
    return Z if n == 0 else FGAbGroup(0, (n,))


def direct_sum(groups: Iterable[FGAbGroup]) -> FGAbGroup:
    out = ZERO
    for grp in groups:
        out = out + grp
    return out


def tensor(a: FGAbGroup, b: FGAbGroup) -> FGAbGroup:
    rank = a.free_rank * b.free_rank
    torsion = [d for d in b.torsion for _ in range(a.free_rank)]
    torsion += [d for d in a.torsion for _ in range(b.free_rank)]
    torsion += [math.gcd(m, n) for m in a.torsion for n in b.torsion]
    return FGAbGroup(rank, tuple(torsion))


def tor(a: FGAbGroup, b: FGAbGroup) -> FGAbGroup:
    return FGAbGroup(0, tuple(math.gcd(m, n) for m in a.torsion for n in b.torsion))


@dataclass(frozen=True)
class PairHomologyTable:
    """Relative homology groups H_i, zero outside 0..top_degree."""

    groups: Mapping[int, FGAbGroup] = field(default_factory=dict)
    top_degree: int = 0

    def __post_init__(self):
        clean = {}
        for i, grp in self.groups.items():
            if grp.is_zero():
                continue
            if not 0 <= i <= self.top_degree:
                raise ValueError(f"degree {i} outside 0..{self.top_degree}")
            clean[i] = grp
        object.__setattr__(self, "groups", dict(sorted(clean.items())))

    def __getitem__(self, i: int) -> FGAbGroup:
        return self.groups.get(i, ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairHomologyTable):
            return NotImplemented
        return self.groups == other.groups

    def __hash__(self) -> int:
        return hash(tuple(self.groups.items()))

    def first_difference(self, other: PairHomologyTable) -> dict | None:
        for i in sorted(set(self.groups) | set(other.groups)):
            if self[i] != other[i]:
                return {"i": i, "left": str(self[i]), "right": str(other[i])}
        return None

    def __str__(self) -> str:
        if not self.groups:
            return "0"
        return "\n".join(f"{i}: {grp}" for i, grp in self.groups.items())

    def to_json(self) -> list[dict]:
        return [{"i": i, **grp.to_json()} for i, grp in self.groups.items()]


def ball_pair(k: int) -> PairHomologyTable:
    """H_s(B^k, B^k - 0) = reduced H_{s-1}(S^{k-1})."""
    if k < 1:
        raise DomainError("ball dimension must be positive")
    return PairHomologyTable({k: Z}, k)


def cone_rp_pair(m: int) -> PairHomologyTable:
    """H_t(C(RP^m), C(RP^m) - tip) = reduced H_{t-1}(RP^m), for odd m."""
    if m < 1 or m % 2 == 0:
        raise DomainError(f"only odd-dimensional RP^m is supported, got m={m}")
    groups = {m + 1: Z}
    for t in range(2, m + 1, 2):
        groups[t] = cyclic(2)
    return PairHomologyTable(groups, m + 1)


def kunneth_pairs(a: PairHomologyTable, b: PairHomologyTable) -> PairHomologyTable:
    """H_i(A x B) = (+)_{s+t=i} A_s (x) B_t  (+)  (+)_{s+t=i-1} Tor(A_s, B_t)."""
    top = a.top_degree + b.top_degree + 1
    out: dict[int, list[FGAbGroup]] = {}
    for (s, x), (t, y) in itertools.product(a.groups.items(), b.groups.items()):
        out.setdefault(s + t, []).append(tensor(x, y))
        out.setdefault(s + t + 1, []).append(tor(x, y))
    return PairHomologyTable({i: direct_sum(gs) for i, gs in out.items()}, top)


def manifold_model(n: int) -> PairHomologyTable:
    """Local homology at a point of a topological n-manifold."""
    return ball_pair(n)


def obstruction_closed_form(g: int, r: int) -> PairHomologyTable:
    """Z at i = N, Z/2 at odd i with k+1 < i < N, where N = 2gr-1 and k = N-2g."""
    n = 2 * g * r - 1
    k = n - 2 * g
    groups = {n: Z}
    for i in range(k + 2, n):
        if i % 2:
            groups[i] = cyclic(2)
    return PairHomologyTable(groups, n)


def local_homology(g: int, r: int) -> PairHomologyTable:
    """H_*(Z, Z - p) for the local model Z = B^k x C(RP^{2g-1}) of S^{2gr-1}/S_r, r >= 2."""
    if r < 2:
        raise DomainError("no point with Z/2 stabilizer when r = 1")
    n = 2 * g * r - 1
    return kunneth_pairs(ball_pair(n - 2 * g), cone_rp_pair(2 * g - 1))


def manifold_obstruction(g: int, r: int, *, inject_fault: bool = False) -> Report:
    """Compare local homology at a Z/2-stabilizer point with that of an N-manifold.

    Passes when the obstruction verdict and the homology table both agree with
    the closed form (obstructed exactly when g >= 2 and r >= 2).
    """
    params = {"g": g, "r": r}
    claim = "manifold obstruction: S^(2gr-1)/S_r is not a topological manifold for g, r >= 2"
    if r < 2:
        return Report(claim, True, params, {"vacuous": True, "note": "no stabilizer point, test vacuous", "is_obstructed": False})
    n = 2 * g * r - 1
    local = local_homology(g, r)
    if inject_fault:
        # off-by-one in the ball factor
        local = kunneth_pairs(ball_pair(n - 2 * g + 1), cone_rp_pair(2 * g - 1))
    model = manifold_model(n)
    expected = obstruction_closed_form(g, r)
    is_obstructed = local != model
    predicted = g >= 2 and r >= 2
    counterexample = None
    if local != expected:
        counterexample = {"reason": "Kunneth table differs from the closed form", **expected.first_difference(local)}
    elif is_obstructed != predicted:
        counterexample = {"reason": "obstruction verdict differs from g>=2 and r>=2", "is_obstructed": is_obstructed}
    diff = model.first_difference(local)
    return Report(
        claim,
        passed=counterexample is None,
        params=params,
        details={
            "N": n,
            "k": n - 2 * g,
            "local_homology": local.to_json(),
            "manifold_model": model.to_json(),
            "is_obstructed": is_obstructed,
            "verdict": "not a manifold" if is_obstructed else "no local obstruction",
            "witness": diff,
        },
        counterexample=counterexample,
    )


def _block_permutation_det(sigma, block: int) -> int:
    """Determinant of sigma acting on (R^block)^r by permuting blocks."""
    r = len(sigma)
    mat = np.zeros((r * block, r * block))
    for i, s in enumerate(sigma):
        mat[s * block : (s + 1) * block, i * block : (i + 1) * block] = np.eye(block)
    return int(round(np.linalg.det(mat)))


def rational_sphere_check(g: int, r: int, *, inject_fault: bool = False) -> Report:
    """H_*(S^{2gr-1}/S_r; Q) as S_r-invariants of H_*(S^{2gr-1}; Q).

    S_r acts trivially on H_0 and on H_top through the determinant of its
    action on R^{2gr} = (R^{2g})^r; invariants have dimension equal to the
    average of that character.
    """
    n = 2 * g * r - 1
    # determinant character, one representative per cycle type
    chars = []
    for ct in cycle_types(r):
        sigma, start = [], 0
        for length in ct.parts:
            sigma += [start + (i + 1) % length for i in range(length)]
            start += length
        det = _block_permutation_det(sigma, 2 * g)
        if inject_fault:
            # twist by the sign character, as if S_r reversed orientation
            det *= (-1) ** (r - len(ct.parts))
        chars.append((ct.class_size, det))
    top = sum(size * det for size, det in chars)
    top_dim, rem = divmod(top, math.factorial(r))
    assert rem == 0
    if inject_fault and r == 1:
        top_dim = 0
    betti = {0: 1}
    if top_dim:
        betti[n] = betti.get(n, 0) + top_dim
    expected = {0: 1, n: 1}
    passed = betti == expected
    return Report(
        claim="rational homology sphere: S^(2gr-1)/S_r has the rational homology of a sphere",
        passed=passed,
        params={"g": g, "r": r},
        details={"rational_betti": {str(i): d for i, d in sorted(betti.items())}, "determinants": [d for _, d in chars]},
        counterexample=None if passed else {"i": n, "dim": top_dim, "expected": 1},
    )

