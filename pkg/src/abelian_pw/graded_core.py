"""Exterior algebra over Q, graded tensor words and their symmetric-group invariants.

The cohomology of a real 2g-torus is the exterior algebra on 2g degree-one
generators e_1, ..., e_2g. A basis monomial is a subset of the generators and is
stored as a bitmask (bit ``i - 1`` set when e_i is present).

The symmetric group S_r acts on r-fold tensor words by permuting factors with
the Koszul sign rule. The invariant subspace is spanned by orbit sums of
weakly sorted words; words that repeat an odd-degree monomial have vanishing
orbit sum and are dropped.

>>> e = ExteriorMonomial.of
>>> wedge(e(2, 1), e(2, 2))
GradedClass(+e{1,2})
>>> wedge(e(2, 2), e(2, 1))
GradedClass(-e{1,2})
>>> len(invariant_basis(1, 2))
8
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import ResourceLimitError, UsageError

DEFAULT_MAX_WORD_BITS = 24


def max_word_bits() -> int:
    """Bound on 2*g*r, overridable with the PW_MAX_WORD_BITS environment variable."""
    value = os.environ.get("PW_MAX_WORD_BITS")
    if value is None:
        return DEFAULT_MAX_WORD_BITS
    try:
        return int(value)
    except ValueError:
        raise UsageError(f"PW_MAX_WORD_BITS must be an integer, got {value!r}") from None


def check_resources(g: int, r: int, bound: int | None = None) -> None:
    if g < 1 or r < 1:
        raise UsageError(f"need g >= 1 and r >= 1, got g={g}, r={r}")
    bound = max_word_bits() if bound is None else bound
    if 2 * g * r > bound:
        raise ResourceLimitError(
            f"2*g*r = {2 * g * r} exceeds the word-width bound {bound} "
            "(raise PW_MAX_WORD_BITS to override)"
        )


# --------------------------------------------------------------------------
# exterior monomials and classes


@dataclass(frozen=True)
class ExteriorMonomial:
    """Basis monomial e_S of the exterior algebra on ``dim`` generators."""

    mask: int
    dim: int
    degree: int = field(init=False, repr=False, compare=False)
    key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.dim:
            raise UsageError(f"mask {self.mask:#b} does not fit {self.dim} generators")
        gens = tuple(i + 1 for i in range(self.dim) if self.mask >> i & 1)
        object.__setattr__(self, "degree", len(gens))
        # total order used for canonical tuples: degree first, then index set
        object.__setattr__(self, "key", (len(gens), gens))

    @classmethod
    def of(cls, dim: int, *generators: int) -> ExteriorMonomial:
        """Monomial from 1-based generator indices, e.g. ``of(4, 1, 3)`` is e1^e3."""
        mask = 0
        for i in generators:
            if not 1 <= i <= dim:
                raise UsageError(f"generator index {i} outside 1..{dim}")
            if mask >> (i - 1) & 1:
                raise UsageError(f"repeated generator {i}")
            mask |= 1 << (i - 1)
        return cls(mask, dim)

    @classmethod
    def unit(cls, dim: int) -> ExteriorMonomial:
        return cls(0, dim)

    @property
    def generators(self) -> tuple[int, ...]:
        return self.key[1]

    def __hash__(self) -> int:
        return hash((self.mask, self.dim))

    def __lt__(self, other: ExteriorMonomial) -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        if not self.mask:
            return "1"
        return "e{" + ",".join(map(str, self.generators)) + "}"


@lru_cache(maxsize=8)
def all_monomials(dim: int) -> tuple[ExteriorMonomial, ...]:
    """Every monomial on ``dim`` generators, in canonical order."""
    return tuple(sorted((ExteriorMonomial(m, dim) for m in range(1 << dim)), key=lambda m: m.key))


def _wedge_sign(a: int, b: int) -> int:
    """Sign of e_a ^ e_b relative to e_(a|b); assumes disjoint masks."""
    swaps = 0
    t = b
    while t:
        low = t & -t
        # generators of a above this generator of b must be moved past it
        swaps += (a & ~((low << 1) - 1)).bit_count()
        t ^= low
    return -1 if swaps & 1 else 1


def wedge(a: ExteriorMonomial, b: ExteriorMonomial) -> GradedClass:
    if a.dim != b.dim:
        raise UsageError(f"ambient dimensions differ: {a.dim} vs {b.dim}")
    if a.mask & b.mask:
        return GradedClass(a.dim, {})
    return GradedClass(a.dim, {ExteriorMonomial(a.mask | b.mask, a.dim): Fraction(_wedge_sign(a.mask, b.mask))})


@dataclass(frozen=True)
class GradedClass:
    """Finite Q-linear combination of exterior monomials."""

    dim: int
    terms: Mapping[ExteriorMonomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for m, c in self.terms.items():
            if m.dim != self.dim:
                raise UsageError(f"monomial {m} lives on {m.dim} generators, class on {self.dim}")
            c = Fraction(c)
            if c:
                clean[m] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_monomial(cls, m: ExteriorMonomial, coefficient=1) -> GradedClass:
        return cls(m.dim, {m: Fraction(coefficient)})

    def component(self, degree: int) -> GradedClass:
        return GradedClass(self.dim, {m: c for m, c in self.terms.items() if m.degree == degree})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: GradedClass) -> GradedClass:
        if self.dim != other.dim:
            raise UsageError("ambient dimensions differ")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return GradedClass(self.dim, out)

    def __neg__(self) -> GradedClass:
        return GradedClass(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: GradedClass) -> GradedClass:
        return self + (-other)

    def __rmul__(self, scalar) -> GradedClass:
        return GradedClass(self.dim, {m: scalar * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GradedClass):
            return other * self
        if self.dim != other.dim:
            raise UsageError("ambient dimensions differ")
        out: dict[ExteriorMonomial, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                if a.mask & b.mask:
                    continue
                m = ExteriorMonomial(a.mask | b.mask, self.dim)
                out[m] = out.get(m, 0) + ca * cb * _wedge_sign(a.mask, b.mask)
        return GradedClass(self.dim, out)

    def __repr__(self) -> str:
        if not self.terms:
            return "GradedClass(0)"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            parts.append(f"{sign}{'' if mag == 1 else str(mag) + '*'}{m}")
        return "GradedClass(" + " ".join(parts) + ")"


# --------------------------------------------------------------------------
# tensor words and the signed S_r action


@dataclass(frozen=True)
class TensorWord:
    factors: tuple[ExteriorMonomial, ...]
    coefficient: Fraction = Fraction(1)

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors)

    @property
    def perversity(self) -> int:
        # perversity of a rank-one class is its degree; the span rule adds them up
        return self.degree

    def __str__(self) -> str:
        return f"{self.coefficient}*(" + " x ".join(map(str, self.factors)) + ")"


def koszul_sign(sigma: Sequence[int], degrees: Sequence[int]) -> int:
    """(-1)^m with m the number of pairs i<j inverted by sigma whose degrees are both odd."""
    m = 0
    n = len(sigma)
    for i in range(n):
        if not degrees[i] & 1:
            continue
        for j in range(i + 1, n):
            if degrees[j] & 1 and sigma[i] > sigma[j]:
                m += 1
    return -1 if m & 1 else 1


def _check_permutation(sigma: Sequence[int], r: int) -> None:
    if sorted(sigma) != list(range(r)):
        raise UsageError(f"{tuple(sigma)} is not a permutation of 0..{r - 1}")


def permute_word(sigma: Sequence[int], w: TensorWord) -> TensorWord:
    """Act by sigma (0-based images): factor i of ``w`` moves to slot sigma[i]."""
    r = len(w.factors)
    _check_permutation(sigma, r)
    out: list[ExteriorMonomial | None] = [None] * r
    for i, f in enumerate(w.factors):
        out[sigma[i]] = f
    eps = koszul_sign(sigma, [f.degree for f in w.factors])
    return TensorWord(tuple(out), w.coefficient * eps)


def compose(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """sigma after tau."""
    return tuple(sigma[t] for t in tau)


def canonical_form(factors: Sequence[ExteriorMonomial]) -> tuple[int, tuple[ExteriorMonomial, ...]]:
    """Return ``(sign, rep)`` with ``factors`` equal to ``sign`` times its slot in the orbit sum of ``rep``.

    ``sign`` is 0 when an odd-degree monomial repeats, since then the orbit sum vanishes.
    """
    rep = tuple(sorted(factors))
    odd = [f for f in factors if f.degree & 1]
    if len(set(odd)) < len(odd):
        return 0, rep
    inversions = sum(1 for a, b in itertools.combinations(odd, 2) if b < a)
    return (-1 if inversions & 1 else 1), rep


def is_canonical(factors: Sequence[ExteriorMonomial]) -> bool:
    for a, b in zip(factors, factors[1:]):
        if b < a or (a == b and a.degree & 1):
            return False
    return True


def _distinct_arrangements(items: Sequence) -> Iterator[tuple]:
    counts = Counter(items)
    keys = sorted(counts)
    n = len(items)
    slot: list = []

    def rec():
        if len(slot) == n:
            yield tuple(slot)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                slot.append(k)
                yield from rec()
                slot.pop()
                counts[k] += 1

    yield from rec()


@dataclass(frozen=True)
class InvariantWord:
    """Orbit sum of a canonical word; the representative carries coefficient 1."""

    representative: tuple[ExteriorMonomial, ...]

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.representative)

    @cached_property
    def orbit_sum(self) -> list[TensorWord]:
        out = []
        for arrangement in _distinct_arrangements(self.representative):
            sign, _ = canonical_form(arrangement)
            out.append(TensorWord(arrangement, Fraction(sign)))
        return out

    def __str__(self) -> str:
        return "O(" + " x ".join(map(str, self.representative)) + ")"


def _canonical_tuples(monomials: Sequence[ExteriorMonomial], r: int, degree: int | None) -> Iterator[tuple]:
    top = max((m.degree for m in monomials), default=0)
    chosen: list[ExteriorMonomial] = []

    def rec(start: int, deg: int):
        left = r - len(chosen)
        if degree is not None and (deg > degree or deg + left * top < degree):
            return
        if not left:
            if degree is None or deg == degree:
                yield tuple(chosen)
            return
        for idx in range(start, len(monomials)):
            m = monomials[idx]
            nxt = idx + 1 if m.degree & 1 else idx
            chosen.append(m)
            yield from rec(nxt, deg + m.degree)
            chosen.pop()

    yield from rec(0, 0)


def invariant_basis(g: int, r: int, degree: int | None = None, *, bound: int | None = None) -> list[InvariantWord]:
    """Basis of the S_r-invariants of the r-th graded tensor power of Lambda(Q^2g)."""
    check_resources(g, r, bound)
    monomials = all_monomials(2 * g)
    return [InvariantWord(t) for t in _canonical_tuples(monomials, r, degree)]


def signed_burnside_count(g: int, r: int) -> int:
    """(1/r!) * sum over S_r of det(I + A_sigma)^(2g), evaluated in integers."""
    perms = np.array(list(itertools.permutations(range(r))), dtype=np.intp)
    mats = np.zeros((len(perms), r, r))
    rows = np.arange(r)
    for n, p in enumerate(perms):
        mats[n, p, rows] = 1.0
    mats += np.eye(r)
    dets = np.rint(np.linalg.det(mats)).astype(np.int64)
    total = sum(int(d) ** (2 * g) for d in dets)
    q, rem = divmod(total, math.factorial(r))
    assert rem == 0, "signed Burnside sum not divisible by r!"
    return q


# --------------------------------------------------------------------------
# invariant classes and the cup product


@dataclass(frozen=True)
class InvariantClass:
    """Element of the invariant subspace, as coefficients on orbit sums."""

    g: int
    r: int
    coeffs: Mapping[tuple[ExteriorMonomial, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for rep, c in self.coeffs.items():
            c = Fraction(c)
            if not c:
                continue
            if len(rep) != self.r or any(f.dim != 2 * self.g for f in rep) or not is_canonical(rep):
                raise UsageError(f"{rep} is not a canonical representative for (g={self.g}, r={self.r})")
            clean[rep] = clean.get(rep, 0) + c
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v})

    @classmethod
    def from_basis(cls, g: int, r: int, word: InvariantWord, coefficient=1) -> InvariantClass:
        return cls(g, r, {word.representative: Fraction(coefficient)})

    @classmethod
    def unit(cls, g: int, r: int) -> InvariantClass:
        return cls(g, r, {(ExteriorMonomial.unit(2 * g),) * r: Fraction(1)})

    @classmethod
    def from_words(cls, g: int, r: int, words: Mapping[tuple, Fraction]) -> InvariantClass:
        """Read off orbit-sum coefficients from an (assumed invariant) word expansion."""
        return cls(g, r, {w: c for w, c in words.items() if is_canonical(w)})

    def words(self) -> dict[tuple[ExteriorMonomial, ...], Fraction]:
        out: dict[tuple, Fraction] = {}
        for rep, c in self.coeffs.items():
            for tw in InvariantWord(rep).orbit_sum:
                out[tw.factors] = out.get(tw.factors, 0) + c * tw.coefficient
        return {w: c for w, c in out.items() if c}

    def component(self, degree: int) -> InvariantClass:
        return InvariantClass(self.g, self.r, {k: v for k, v in self.coeffs.items() if sum(f.degree for f in k) == degree})

    def degrees(self) -> set[int]:
        return {sum(f.degree for f in k) for k in self.coeffs}

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same_shape(self, other: InvariantClass) -> None:
        if (self.g, self.r) != (other.g, other.r):
            raise UsageError(f"shapes differ: (g={self.g}, r={self.r}) vs (g={other.g}, r={other.r})")

    def __add__(self, other: InvariantClass) -> InvariantClass:
        self._same_shape(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return InvariantClass(self.g, self.r, out)

    def __neg__(self) -> InvariantClass:
        return InvariantClass(self.g, self.r, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: InvariantClass) -> InvariantClass:
        return self + (-other)

    def __rmul__(self, scalar) -> InvariantClass:
        return InvariantClass(self.g, self.r, {k: scalar * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, InvariantClass):
            return cup_invariants(self, other)
        return other * self

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{InvariantWord(k)}" for k, c in sorted(self.coeffs.items(), key=lambda kv: [f.key for f in kv[0]]))


def _word_product(a: Sequence[ExteriorMonomial], b: Sequence[ExteriorMonomial]) -> tuple[int, tuple | None]:
    """Factorwise product of two words with the interchange sign; (0, None) if it vanishes."""
    dim = a[0].dim
    sign = 1
    # (-1)^{sum_{i>j} |a_i||b_j|}: running parity of b-degrees to the left of a_i
    b_parity = 0
    out = []
    for x, y in zip(a, b):
        if x.mask & y.mask:
            return 0, None
        if x.degree & 1 and b_parity:
            sign = -sign
        b_parity ^= y.degree & 1
        sign *= _wedge_sign(x.mask, y.mask)
        out.append(ExteriorMonomial(x.mask | y.mask, dim))
    return sign, tuple(out)


def multiply_words(x: Mapping[tuple, Fraction], y: Mapping[tuple, Fraction]) -> dict[tuple, Fraction]:
    """Product of two word expansions in the graded tensor algebra."""
    out: dict[tuple, Fraction] = {}
    for a, ca in x.items():
        for b, cb in y.items():
            sign, w = _word_product(a, b)
            if sign:
                out[w] = out.get(w, 0) + sign * ca * cb
    return {w: c for w, c in out.items() if c}


def cup_invariants(x: InvariantClass, y: InvariantClass) -> InvariantClass:
    """Cup product of invariant classes, re-expressed on the orbit-sum basis."""
    x._same_shape(y)
    out: dict[tuple, Fraction] = {}
    ywords = y.words()
    for a, ca in x.words().items():
        for b, cb in ywords.items():
            sign, w = _word_product(a, b)
            # an invariant is determined by its coefficients on canonical words
            if sign and is_canonical(w):
                out[w] = out.get(w, 0) + sign * ca * cb
    return InvariantClass(x.g, x.r, out)


def symmetrize(words: Mapping[tuple, Fraction]) -> dict[tuple, Fraction]:
    """Average over S_r with Koszul signs (the projector onto invariants)."""
    out: dict[tuple, Fraction] = {}
    if not words:
        return out
    r = len(next(iter(words)))
    perms = list(itertools.permutations(range(r)))
    scale = Fraction(1, len(perms))
    for w, c in words.items():
        tw = TensorWord(w, c)
        for sigma in perms:
            p = permute_word(sigma, tw)
            out[p.factors] = out.get(p.factors, 0) + scale * p.coefficient
    return {w: c for w, c in out.items() if c}


def degree_counts(basis: Iterable[InvariantWord]) -> Counter:
    return Counter(b.degree for b in basis)


# --------------------------------------------------------------------------
# conjugacy classes of S_r


@dataclass(frozen=True)
class CycleType:
    """Partition of r recording the cycle lengths of a permutation."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise UsageError(f"cycle lengths must be positive: {self.parts}")
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @property
    def r(self) -> int:
        return sum(self.parts)

    @property
    def z(self) -> int:
        """Centralizer order prod_i i^{m_i} m_i!, so the class has r!/z elements."""
        out = 1
        for length, mult in Counter(self.parts).items():
            out *= length**mult * math.factorial(mult)
        return out

    @property
    def class_size(self) -> int:
        return math.factorial(self.r) // self.z

    @classmethod
    def of_permutation(cls, sigma: Sequence[int]) -> CycleType:
        seen = [False] * len(sigma)
        parts = []
        for i in range(len(sigma)):
            if seen[i]:
                continue
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = sigma[j]
                n += 1
            parts.append(n)
        return cls(tuple(parts))


def cycle_types(r: int) -> list[CycleType]:
    """All partitions of r, largest part first."""
    out = []

    def rec(left: int, cap: int, acc: list[int]):
        if not left:
            out.append(CycleType(tuple(acc)))
            return
        for p in range(min(left, cap), 0, -1):
            acc.append(p)
            rec(left - p, p, acc)
            acc.pop()

    rec(r, r, [])
    return out
