"""Explicit non-abelian Hodge correspondence for X = C^g / L, in floating point.

A rank-one Betti point is a character of the lattice, recorded by its 2g values
on a chosen basis l_1, ..., l_2g. Polar decomposition splits it into a unitary
character (a point of the dual abelian variety) and the real numbers
-log|z_i|, which determine a unique holomorphic 1-form lambda via

    2 Re <lambda, l_i> = -log|z_i|,   <lambda, l> = sum_j lambda_j l_j.

Rank r objects are unordered r-tuples of rank-one objects. The spectral data
map forgets the unitary part and keeps the multiset of Higgs vectors; the
Hitchin map records the elementary symmetric functions of that multiset.
"""

from __future__ import annotations

import cmath
import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DomainError, LatticeError, UsageError
from .reports import Report

ROUNDTRIP_TOL = 1e-9
DIAGRAM_TOL = 1e-9
MAX_MATCHING_R = 6


@dataclass(frozen=True, eq=False)
class Lattice:
    """Lattice basis as a (2g, g) complex array; row i is l_{i+1}."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim != 2 or b.shape[0] != 2 * b.shape[1] or b.shape[1] < 1:
            raise UsageError(f"lattice basis must have shape (2g, g), got {b.shape}")
        object.__setattr__(self, "basis", b)
        scale = max(np.abs(b).max(), 1e-300)
        if abs(np.linalg.det(self.period_map)) <= 1e-8 * scale ** (2 * self.g):
            raise LatticeError("lattice vectors do not span real 2g-space")

    @property
    def g(self) -> int:
        return self.basis.shape[1]

    @property
    def period_map(self) -> np.ndarray:
        """Real (2g, 2g) matrix of (Re lambda, Im lambda) -> (2 Re <lambda, l_i>)_i."""
        return np.hstack([2 * self.basis.real, -2 * self.basis.imag])

    def condition_number(self) -> float:
        return float(np.linalg.cond(self.period_map))

    @classmethod
    def square(cls, g: int, tau: complex = 1j) -> Lattice:
        """l_j = e_j and l_{g+j} = tau e_j."""
        eye = np.eye(g, dtype=complex)
        return cls(np.vstack([eye, tau * eye]))

    @classmethod
    def random(cls, g: int, rng: np.random.Generator, max_condition: float = 1e3) -> Lattice:
        while True:
            b = rng.normal(size=(2 * g, g)) + 1j * rng.normal(size=(2 * g, g))
            try:
                lat = cls(b)
            except LatticeError:
                continue
            if lat.condition_number() < max_condition:
                return lat

    def to_json(self) -> dict:
        return {"g": self.g, "basis": [[[v.real, v.imag] for v in row] for row in self.basis]}

    @classmethod
    def from_json(cls, data: dict) -> Lattice:
        g = int(data["g"])
        rows = data["basis"]
        if len(rows) != 2 * g or any(len(row) != g for row in rows):
            raise UsageError(f"basis must list 2g={2 * g} vectors of length g={g}")
        return cls(np.array([[complex(re, im) for re, im in row] for row in rows]))

    @classmethod
    def load(cls, path: str | Path) -> Lattice:
        return cls.from_json(json.loads(Path(path).read_text()))


@dataclass(frozen=True, eq=False)
class RankOneBetti:
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if np.any(v == 0):
            raise DomainError("a character takes nonzero values")
        object.__setattr__(self, "values", v)


@dataclass(frozen=True, eq=False)
class RankOneDolbeault:
    phases: np.ndarray
    higgs: np.ndarray

    def __post_init__(self):
        ph = np.asarray(self.phases, dtype=complex)
        if np.any(np.abs(np.abs(ph) - 1) > 1e-12):
            raise DomainError("phases must lie on the unit circle")
        object.__setattr__(self, "phases", ph)
        object.__setattr__(self, "higgs", np.asarray(self.higgs, dtype=complex))


@dataclass(frozen=True, eq=False)
class HiggsMultiset:
    """Unordered r points (all Dolbeault or all Betti)."""

    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise UsageError("a multiset needs at least one point")

    @property
    def r(self) -> int:
        return len(self.points)

    def permuted(self, order: Sequence[int]) -> HiggsMultiset:
        return HiggsMultiset(tuple(self.points[i] for i in order))

    def scaled(self, t: complex) -> HiggsMultiset:
        """G_m action rescaling the Higgs field."""
        return HiggsMultiset(tuple(RankOneDolbeault(p.phases, t * p.higgs) for p in self.points))


# --------------------------------------------------------------------------
# rank one, batched over leading axes


def _check_shape(lat: Lattice, arr: np.ndarray, width: int, what: str) -> None:
    if arr.shape[-1] != width:
        raise UsageError(f"{what} needs last axis {width} for g={lat.g}, got {arr.shape}")


def betti_to_dolbeault_arrays(lat: Lattice, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(..., 2g) characters -> (phases (..., 2g), higgs (..., g))."""
    z = np.asarray(z, dtype=complex)
    _check_shape(lat, z, 2 * lat.g, "character")
    if np.any(z == 0):
        raise DomainError("a character takes nonzero values")
    mod = np.abs(z)
    rhs = -np.log(mod).reshape(-1, 2 * lat.g).T
    # LU with partial pivoting
    sol = np.linalg.solve(lat.period_map, rhs).T.reshape(z.shape[:-1] + (2 * lat.g,))
    g = lat.g
    return z / mod, sol[..., :g] + 1j * sol[..., g:]


def dolbeault_to_betti_arrays(lat: Lattice, phases: np.ndarray, higgs: np.ndarray) -> np.ndarray:
    higgs = np.asarray(higgs, dtype=complex)
    _check_shape(lat, higgs, lat.g, "Higgs vector")
    return np.asarray(phases, dtype=complex) * np.exp(-period_image(lat, higgs))


def period_image(lat: Lattice, higgs: np.ndarray) -> np.ndarray:
    """lambda -> (2 Re <lambda, l_i>)_i, the identification C^g = R^2g."""
    higgs = np.asarray(higgs, dtype=complex)
    return 2 * np.real(higgs @ lat.basis.T)


def betti_to_dolbeault(lat: Lattice, z: RankOneBetti) -> RankOneDolbeault:
    phases, higgs = betti_to_dolbeault_arrays(lat, z.values)
    return RankOneDolbeault(phases, higgs)


def dolbeault_to_betti(lat: Lattice, p: RankOneDolbeault) -> RankOneBetti:
    return RankOneBetti(dolbeault_to_betti_arrays(lat, p.phases, p.higgs))


def neg_log_modulus(z: RankOneBetti | np.ndarray) -> np.ndarray:
    values = z.values if isinstance(z, RankOneBetti) else np.asarray(z)
    return -np.log(np.abs(values))


# --------------------------------------------------------------------------
# rank r


def spectral_data(m: HiggsMultiset) -> np.ndarray:
    """(r, g) array of Higgs vectors; row order carries no meaning."""
    return np.array([p.higgs for p in m.points])


def hitchin_embedding(sd) -> dict[int, dict[tuple[int, ...], complex]]:
    """Elementary symmetric tensors sigma_1..sigma_r of the multiset, as polynomials in y.

    prod_a (s - <lambda_a, y>) = sum_i (-1)^i sigma_i(y) s^{r-i}; sigma_i maps
    exponent tuples of degree-i monomials in y_1..y_g to coefficients.
    """
    sd = np.atleast_2d(np.asarray(sd, dtype=complex))
    r, g = sd.shape
    # coefficients of s^n, each a polynomial in y
    poly: dict[int, dict[tuple, complex]] = {0: {(0,) * g: 1.0 + 0j}}
    for lam in sd:
        nxt: dict[int, dict[tuple, complex]] = {}
        for n, ypoly in poly.items():
            up = nxt.setdefault(n + 1, {})
            for e, c in ypoly.items():
                up[e] = up.get(e, 0) + c
            here = nxt.setdefault(n, {})
            for e, c in ypoly.items():
                for j in range(g):
                    e2 = e[:j] + (e[j] + 1,) + e[j + 1 :]
                    here[e2] = here.get(e2, 0) - c * lam[j]
        poly = nxt
    return {i: {e: (-1) ** i * c for e, c in sorted(poly.get(r - i, {}).items())} for i in range(1, r + 1)}


def embedding_vector(sigmas: dict[int, dict[tuple, complex]], g: int) -> np.ndarray:
    """Flatten the sigma_i into one vector over a fixed monomial order."""
    out = []
    for i in sorted(sigmas):
        for e in _monomials_of_degree(g, i):
            out.append(sigmas[i].get(e, 0))
    return np.array(out, dtype=complex)


def _monomials_of_degree(g: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(g), d):
        e = [0] * g
        for j in combo:
            e[j] += 1
        out.append(tuple(e))
    return sorted(out)


def roots_from_symmetric(sigmas: Sequence[complex]) -> np.ndarray:
    """Roots of x^r - s1 x^{r-1} + s2 x^{r-2} - ... in closed form, r <= 3."""
    r = len(sigmas)
    if r == 1:
        return np.array([sigmas[0]])
    if r == 2:
        s1, s2 = sigmas
        d = cmath.sqrt(s1 * s1 - 4 * s2)
        # avoid cancellation: take the larger root first, get the other from the product
        x1 = (s1 + d) / 2 if abs(s1 + d) >= abs(s1 - d) else (s1 - d) / 2
        x2 = s2 / x1 if x1 != 0 else s1 - x1
        return np.array([x1, x2])
    if r == 3:
        s1, s2, s3 = sigmas
        a, b, c = -s1, s2, -s3
        p = b - a * a / 3
        q = 2 * a**3 / 27 - a * b / 3 + c
        disc = cmath.sqrt(q * q / 4 + p**3 / 27)
        u3 = -q / 2 + disc if abs(-q / 2 + disc) >= abs(-q / 2 - disc) else -q / 2 - disc
        if u3 == 0:
            return np.full(3, -a / 3, dtype=complex)
        u = u3 ** (1 / 3)
        omega = cmath.exp(2j * math.pi / 3)
        ys = [omega**k * u - p / (3 * omega**k * u) for k in range(3)]
        return np.array([y - a / 3 for y in ys])
    raise UsageError("closed-form root recovery is implemented for r <= 3")


def recover_multiset_g1(sigmas: dict[int, dict[tuple, complex]]) -> np.ndarray:
    """Invert hitchin_embedding for g = 1, r <= 3."""
    r = len(sigmas)
    return roots_from_symmetric([sigmas[i].get((i,), 0) for i in range(1, r + 1)]).reshape(r, 1)


def retract_to_sphere_quotient(sd) -> np.ndarray:
    """Scale the multiset so its concatenated 2gr real coordinates have unit norm."""
    sd = np.asarray(sd)
    norm = float(np.sqrt(np.sum(np.abs(sd) ** 2)))
    if norm == 0:
        raise DomainError("the zero multiset is the deleted point")
    return sd / norm


def multiset_distance(a, b) -> float:
    """min over matchings of the max-norm distance between two r-point multisets."""
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise UsageError(f"shapes differ: {a.shape} vs {b.shape}")
    r = a.shape[0]
    if r > MAX_MATCHING_R:
        raise UsageError(f"exhaustive matching is limited to r <= {MAX_MATCHING_R}")
    best = math.inf
    for perm in itertools.permutations(range(r)):
        best = min(best, float(np.max(np.abs(a - b[list(perm)]))))
    return best


def _batch_multiset_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorized multiset_distance over a leading sample axis; a, b have shape (n, r, d)."""
    r = a.shape[1]
    best = np.full(a.shape[0], np.inf)
    for perm in itertools.permutations(range(r)):
        best = np.minimum(best, np.max(np.abs(a - b[:, list(perm)]), axis=(1, 2)))
    return best


# --------------------------------------------------------------------------
# sampling and the commuting diagram


def sample_betti_points(g: int, r: int, samples: int, seed: int, radius: float = 0.0) -> np.ndarray:
    """(samples, r, 2g) characters; sample i uses its own stream seeded by (seed, i).

    With radius > 0 every sample lies outside the deleted ball: the concatenated
    vector of -log|z| has norm at least ``radius``.
    """
    out = np.empty((samples, r, 2 * g), dtype=complex)
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        logs = rng.normal(size=(r, 2 * g))
        if radius > 0:
            norm = np.linalg.norm(logs)
            logs *= radius * (1 + rng.exponential()) / norm
        angles = rng.uniform(0, 2 * math.pi, size=(r, 2 * g))
        out[i] = np.exp(-logs) * np.exp(1j * angles)
    return out


def sample_dolbeault_points(g: int, r: int, samples: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    phases = np.empty((samples, r, 2 * g), dtype=complex)
    higgs = np.empty((samples, r, g), dtype=complex)
    for i in range(samples):
        rng = np.random.default_rng([seed, i, 1])
        phases[i] = np.exp(1j * rng.uniform(0, 2 * math.pi, size=(r, 2 * g)))
        higgs[i] = rng.normal(size=(r, g)) + 1j * rng.normal(size=(r, g))
    return phases, higgs


def verify_roundtrip(
    lat: Lattice,
    r: int,
    samples: int,
    seed: int,
    *,
    tolerance: float = ROUNDTRIP_TOL,
    inject_fault: bool = False,
) -> Report:
    """Both composites of the rank-one correspondence are the identity, pointwise."""
    z = sample_betti_points(lat.g, r, samples, seed)
    phases, higgs = betti_to_dolbeault_arrays(lat, z)
    if inject_fault:
        higgs = higgs.copy()
        higgs[0, 0, 0] += 1e-6
    back = dolbeault_to_betti_arrays(lat, phases, higgs)
    betti_res = np.max(np.abs(back - z) / np.abs(z), axis=(1, 2))

    ph, hi = sample_dolbeault_points(lat.g, r, samples, seed)
    ph2, hi2 = betti_to_dolbeault_arrays(lat, dolbeault_to_betti_arrays(lat, ph, hi))
    scale = 1 + np.max(np.abs(hi), axis=(1, 2))
    dol_res = np.maximum(np.max(np.abs(ph2 - ph), axis=(1, 2)), np.max(np.abs(hi2 - hi), axis=(1, 2)) / scale)

    worst = int(np.argmax(np.maximum(betti_res, dol_res)))
    max_res = float(max(betti_res.max(), dol_res.max()))
    passed = max_res < tolerance
    return Report(
        claim="rank-one non-abelian Hodge: roundtrips are the identity",
        passed=passed,
        params={"g": lat.g, "r": r, "samples": samples, "seed": seed},
        details={
            "max_betti_roundtrip": float(betti_res.max()),
            "max_dolbeault_roundtrip": float(dol_res.max()),
            "tolerance": tolerance,
            "condition_number": lat.condition_number(),
        },
        counterexample=None if passed else {"sample": worst, "residual": max_res},
    )


def verify_nah_diagram(
    lat: Lattice,
    r: int,
    samples: int,
    seed: int,
    *,
    radius: float = 0.0,
    tolerance: float = DIAGRAM_TOL,
    inject_fault: bool = False,
) -> Report:
    """Sym^r(-log|.|) agrees with the period image of the spectral data of eta(z)."""
    if samples < 1:
        raise UsageError("need at least one sample")
    z = sample_betti_points(lat.g, r, samples, seed, radius)
    direct = -np.log(np.abs(z))
    _, higgs = betti_to_dolbeault_arrays(lat, z)
    if inject_fault:
        higgs = higgs.copy()
        higgs[samples // 2, 0, 0] += 1e-6
    via_dolbeault = period_image(lat, higgs)
    # rows of each sample are an unordered multiset: shuffle to make the matching do real work
    order = np.random.default_rng([seed, samples]).permutation(r)
    residual = _batch_multiset_distance(direct, via_dolbeault[:, order])
    worst = int(np.argmax(residual))
    max_res = float(residual[worst])
    passed = max_res < tolerance
    return Report(
        claim="non-abelian Hodge diagram: Sym^r(pr_2) o eta^-1 = Sym^r(-log|.|)",
        passed=passed,
        params={"g": lat.g, "r": r, "samples": samples, "seed": seed, "radius": radius},
        details={"max_residual": max_res, "tolerance": tolerance, "condition_number": lat.condition_number()},
        counterexample=None if passed else {"sample": worst, "residual": max_res},
    )
