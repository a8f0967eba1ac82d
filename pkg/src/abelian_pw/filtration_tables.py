"""Bigraded dimension tables of the perverse and weight filtrations.

Three routes produce the same table for a given (g, r):

* :func:`perverse_table` enumerates the orbit-sum basis of the invariants and
  files each basis word under (total perversity, total degree);
* :func:`weight_table` counts invariants of the tensor power of the torus
  cohomology by signed fixed-point enumeration over conjugacy classes of S_r,
  filing words by (half weight, degree);
* :func:`closed_form_table` expands the graded symmetric-power generating
  function.

The three share no combinatorics, so their agreement is a real check.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

from .graded_core import (
    ExteriorMonomial,
    TensorWord,
    all_monomials,
    check_resources,
    cycle_types,
    invariant_basis,
)
from .laurent import BiLaurent
from .reports import Report

DOLBEAULT = "dolbeault"
BETTI = "betti"
CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class BigradedTable:
    """dims[(k, j)]: dimension of the level-k graded piece of H^j.

    Level k is the perversity on the Dolbeault side and the half weight (weight
    2k) on the Betti side, so P=W is literal equality of tables.
    """

    g: int
    r: int
    side: str
    dims: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "dims", {k: v for k, v in sorted(self.dims.items()) if v})

    @property
    def top_degree(self) -> int:
        return 2 * self.g * self.r

    def __getitem__(self, kj: tuple[int, int]) -> int:
        return self.dims.get(kj, 0)

    def total(self) -> int:
        return sum(self.dims.values())

    def betti_numbers(self) -> list[int]:
        out = [0] * (self.top_degree + 1)
        for (_, j), d in self.dims.items():
            out[j] += d
        return out

    def diagonal(self) -> list[int]:
        return [self[(j, j)] for j in range(self.top_degree + 1)]

    def off_diagonal(self) -> dict[tuple[int, int], int]:
        return {kj: d for kj, d in self.dims.items() if kj[0] != kj[1]}

    def filtered_dimension(self, k: int, j: int) -> int:
        """dim of the k-th filtration step of H^j, i.e. the sum of pieces at levels <= k."""
        return sum(d for (kk, jj), d in self.dims.items() if jj == j and kk <= k)

    def same_entries(self, other: BigradedTable) -> bool:
        return (self.g, self.r) == (other.g, other.r) and dict(self.dims) == dict(other.dims)

    def first_mismatch(self, other: BigradedTable) -> dict | None:
        for kj in sorted(set(self.dims) | set(other.dims)):
            if self[kj] != other[kj]:
                return {"k": kj[0], "j": kj[1], self.side: self[kj], other.side: other[kj]}
        return None

    def with_entry(self, k: int, j: int, dim: int) -> BigradedTable:
        dims = dict(self.dims)
        dims[(k, j)] = dim
        return BigradedTable(self.g, self.r, self.side, dims)

    # -- serialization

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "r": self.r,
            "side": self.side,
            "entries": [{"k": k, "j": j, "dim": d} for (k, j), d in self.dims.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> BigradedTable:
        return cls(data["g"], data["r"], data["side"], {(e["k"], e["j"]): e["dim"] for e in data["entries"]})

    def csv_rows(self) -> list[list]:
        return [[self.g, self.r, self.side, k, j, d] for (k, j), d in self.dims.items()]

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if header:
            writer.writerow(["g", "r", "side", "k", "j", "dim"])
        writer.writerows(self.csv_rows())
        return buf.getvalue()

    def to_text(self) -> str:
        """Aligned grid: rows are levels k, columns are degrees j."""
        n = self.top_degree
        width = max([len(str(d)) for d in self.dims.values()] + [len(str(n)), 1]) + 1
        lines = [f"{self.side} table, g={self.g}, r={self.r}  (rows: level k, columns: degree j)"]
        lines.append("k\\j".rjust(4) + "".join(str(j).rjust(width) for j in range(n + 1)))
        for k in range(n + 1):
            lines.append(str(k).rjust(4) + "".join((str(self[(k, j)]) if self[(k, j)] else ".").rjust(width) for j in range(n + 1)))
        return "\n".join(lines)


# --------------------------------------------------------------------------
# Dolbeault side: orbit enumeration


def perverse_table(g: int, r: int, *, bound: int | None = None) -> BigradedTable:
    counts: Counter = Counter()
    for b in invariant_basis(g, r, bound=bound):
        word = TensorWord(b.representative)
        counts[(word.perversity, word.degree)] += 1
    return BigradedTable(g, r, DOLBEAULT, counts)


# --------------------------------------------------------------------------
# Betti side: invariants of the torus cohomology by signed fixed-point counts


def torus_weight(m: ExteriorMonomial) -> int:
    """Weight of a monomial class of H^*((C*)^2g): each generator has weight 2 and type (1,1)."""
    return 2 * m.degree


def weight_table(g: int, r: int, *, bound: int | None = None) -> BigradedTable:
    """dim Gr^W_{2k} H^j of Sym^r((C*)^2g) via (1/r!) sum_sigma of signed fixed words.

    A word fixed by sigma up to sign is constant along each cycle; an l-cycle
    carrying a degree-d monomial contributes the Koszul sign (-1)^{d(l-1)}.
    """
    check_resources(g, r, bound)
    labels = []
    for m in all_monomials(2 * g):
        w = torus_weight(m)
        assert w % 2 == 0, "torus classes have even weight"
        labels.append((w // 2, m.degree))
    counts: Counter = Counter()
    for ct in cycle_types(r):
        parts = ct.parts
        local: Counter = Counter()
        for choice in itertools.product(labels, repeat=len(parts)):
            sign, k, j = 1, 0, 0
            for length, (hw, d) in zip(parts, choice):
                if d & 1 and not length & 1:
                    sign = -sign
                k += length * hw
                j += length * d
            local[(k, j)] += sign
        size = ct.class_size
        for kj, v in local.items():
            counts[kj] += size * v
    r_fact = math.factorial(r)
    dims = {}
    for kj, v in counts.items():
        q, rem = divmod(v, r_fact)
        assert rem == 0, f"fixed-point sum at {kj} not divisible by r!"
        assert q >= 0
        dims[kj] = q
    return BigradedTable(g, r, BETTI, dims)


# --------------------------------------------------------------------------
# generating function


def closed_form_table(g: int, r: int) -> BigradedTable:
    """Coefficient of x^r in prod_{j odd}(1 + x q^j t^j)^C(2g,j) * prod_{j even}(1 - x q^j t^j)^-C(2g,j)."""
    series = [BiLaurent.constant(1)] + [BiLaurent.zero()] * r
    for j in range(2 * g + 1):
        mult = math.comb(2 * g, j)
        u = BiLaurent.monomial(j, j)
        if j % 2:
            # (1 + x u)^mult, truncated at x^r
            factor = [u**n * math.comb(mult, n) for n in range(r + 1)]
        else:
            # (1 - x u)^-mult = sum_n C(mult+n-1, n) u^n x^n
            factor = [u**n * math.comb(mult + n - 1, n) for n in range(r + 1)]
        series = _truncated_product(series, factor, r)
    coeff = series[r]
    return BigradedTable(g, r, CLOSED_FORM, {(a, b): c for (a, b), c in coeff.coefficients.items()})


def _truncated_product(a: list[BiLaurent], b: list[BiLaurent], order: int) -> list[BiLaurent]:
    out = [BiLaurent.zero() for _ in range(order + 1)]
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j in range(order + 1 - i):
            if b[j]:
                out[i + j] = out[i + j] + ai * b[j]
    return out


# --------------------------------------------------------------------------
# P=W check


def verify_p_equals_w(g: int, r: int, *, inject_fault: bool = False, bound: int | None = None) -> Report:
    """Compare the perverse and weight tables entrywise.

    ``inject_fault`` perturbs one weight-table entry, to exercise failure reporting.
    """
    perverse = perverse_table(g, r, bound=bound)
    weight = weight_table(g, r, bound=bound)
    if inject_fault:
        k, j = next(iter(weight.dims))
        weight = weight.with_entry(k, j, weight[(k, j)] + 1)
    mismatch = perverse.first_mismatch(weight)
    # W_{2k} = W_{2k+1}: odd-weight graded pieces vanish when every torus class has even weight
    odd_weight_free = all(torus_weight(m) % 2 == 0 for m in all_monomials(2 * g))
    return Report(
        claim="P=W: P_k H^* = W_2k H^* = W_2k+1 H^*",
        passed=mismatch is None and odd_weight_free,
        params={"g": g, "r": r},
        details={
            "perverse": perverse.to_json(),
            "weight": weight.to_json(),
            "odd_weight_pieces_vanish": odd_weight_free,
        },
        counterexample=mismatch,
    )
