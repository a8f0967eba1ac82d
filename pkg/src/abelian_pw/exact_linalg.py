"""Exact rank of rational matrices.

Small matrices go through fraction-free (Bareiss) elimination. Large integer
matrices are first reduced modulo a prime: the rank mod p never exceeds the
rank over Q, so a full rank mod p certifies full rank over Q. Anything short
of full rank falls back to the exact elimination.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

# p^2 * (inner dimension) stays far below 2^63 for inner dimensions up to 2^20
PRIMES = (1_000_003, 1_000_033, 1_000_037)
EXACT_SIZE_LIMIT = 160


def _as_integer_rows(matrix: Sequence[Sequence]) -> list[list[int]]:
    rows = []
    for row in matrix:
        if all(type(x) is int for x in row):
            rows.append(list(row))
            continue
        fr = [Fraction(x) for x in row]
        scale = math.lcm(*(x.denominator for x in fr)) if fr else 1
        rows.append([int(x * scale) for x in fr])
    return rows


def exact_rank(matrix: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free Gaussian elimination."""
    a = _as_integer_rows(matrix)
    if not a or not a[0]:
        return 0
    n_rows, n_cols = len(a), len(a[0])
    rank, prev = 0, 1
    for c in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if a[i][c]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][c]
        for i in range(rank + 1, n_rows):
            f = a[i][c]
            row_i, row_r = a[i], a[rank]
            for j in range(c + 1, n_cols):
                # exact by Sylvester's identity
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def to_mod_p(matrix, p: int) -> np.ndarray:
    if isinstance(matrix, np.ndarray) and matrix.dtype == np.int64:
        return matrix % p
    rows = _as_integer_rows(matrix)
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    return (np.array(rows, dtype=object) % p).astype(np.int64).reshape(len(rows), -1)


def matmul_mod_p(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def rank_mod_p(m: np.ndarray, p: int) -> int:
    m = np.array(m, dtype=np.int64) % p
    n_rows, n_cols = m.shape if m.ndim == 2 else (0, 0)
    rank = 0
    for c in range(n_cols):
        if rank == n_rows:
            break
        nz = np.flatnonzero(m[rank:, c])
        if not nz.size:
            continue
        i = rank + nz[0]
        if i != rank:
            m[[rank, i]] = m[[i, rank]]
        inv = pow(int(m[rank, c]), p - 2, p)
        m[rank, c:] = (m[rank, c:] * inv) % p
        below = np.flatnonzero(m[rank + 1 :, c]) + rank + 1
        if below.size:
            f = m[below, c][:, None]
            m[np.ix_(below, np.arange(c, n_cols))] = (m[below, c:] - (f * m[rank, c:]) % p) % p
        rank += 1
    return rank


def certified_rank(matrix, *, exact_limit: int = EXACT_SIZE_LIMIT) -> tuple[int, str]:
    """Exact rank over Q and the method that established it ("bareiss" or "mod-p certificate")."""
    if isinstance(matrix, np.ndarray):
        shape = matrix.shape
    else:
        shape = (len(matrix), len(matrix[0]) if len(matrix) else 0)
    if 0 in shape:
        return 0, "empty"
    if max(shape) <= exact_limit:
        return exact_rank(_rows(matrix)), "bareiss"
    full = min(shape)
    for p in PRIMES:
        if rank_mod_p(to_mod_p(matrix, p), p) == full:
            return full, f"mod-p certificate (p={p})"
    return exact_rank(_rows(matrix)), "bareiss"


def _rows(matrix) -> list[list]:
    if isinstance(matrix, np.ndarray):
        return [[int(x) for x in row] for row in matrix]
    return [list(row) for row in matrix]
