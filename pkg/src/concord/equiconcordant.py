"""Skeletal signatures of equiconcordant copulas.

A copula is equiconcordant when kappa_I depends on I only through |I|; for
extremal mixtures this is the same as exchangeability, and the same as the
weights being constant on groups of diagonals with a common comonotonic
number (the size of the larger comonotone block).  Collapsing the full
linear system onto those groups yields a small invertible matrix B_d whose
entries are exact binomial ratios, so attainability of a skeletal signature
(one kappa per even cardinality) reduces to nonnegativity of B_d^{-1} k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .coding import code_matrix
from .errors import DimensionTooLargeError, InvalidSignatureError, InvalidWeightsError
from .signatures import EvenSignature, MixtureWeights
from .subsets import validate_dimension

BINOMIAL_CAP = 30  # B_d entries stay exact rationals; refuse beyond this


def group_count(d: int) -> int:
    """m(d) = 1 + floor(d/2), the number of distinct comonotonic numbers."""
    return 1 + d // 2


@dataclass(frozen=True)
class ComonotonicProfile:
    d: int
    eta: np.ndarray = field(repr=False)  # per diagonal k, max block size
    h: tuple[int, ...]  # distinct values, descending: d, d-1, ..., ceil(d/2)
    mu: tuple[int, ...]  # multiplicities; halved when d = 2h


def comonotonic_profile(d: int) -> ComonotonicProfile:
    validate_dimension(d)
    if d > BINOMIAL_CAP:
        raise DimensionTooLargeError(f"profile capped at d={BINOMIAL_CAP}, got {d}")
    codes = code_matrix(d)
    ones = codes.sum(axis=1).astype(int)
    eta = np.maximum(ones, d - ones)
    h = tuple(range(d, (d + 1) // 2 - 1, -1))
    mu = tuple(
        math.comb(d, hi) // 2 if d == 2 * hi else math.comb(d, hi) for hi in h
    )
    assert sum(mu) == 1 << (d - 1)
    eta.setflags(write=False)
    return ComonotonicProfile(d=d, eta=eta, h=h, mu=mu)


@lru_cache(maxsize=None)
def b_matrix_fractions(d: int) -> tuple[tuple[Fraction, ...], ...]:
    """B_d as exact rationals.

    Row i >= 2 (cardinality l = 2(i-1)) and column j (comonotonic number h_j):
    [C(d-l, h_j-l) + C(d-l, d-h_j-l)] / C(d, h_j), with C(n, p) = 0 for p < 0.
    """
    validate_dimension(d)
    if d > BINOMIAL_CAP:
        raise DimensionTooLargeError(f"B matrix capped at d={BINOMIAL_CAP}, got {d}")
    profile = comonotonic_profile(d)
    m = group_count(d)
    rows: list[tuple[Fraction, ...]] = [tuple(Fraction(1) for _ in range(m))]
    for i in range(2, m + 1):
        l = 2 * (i - 1)
        row = []
        for hj in profile.h:
            num = _comb0(d - l, hj - l) + _comb0(d - l, d - hj - l)
            row.append(Fraction(num, math.comb(d, hj)))
        rows.append(tuple(row))
    return tuple(rows)


def _comb0(n: int, p: int) -> int:
    return math.comb(n, p) if 0 <= p <= n else 0


def build_B_matrix(d: int) -> np.ndarray:
    return np.array(
        [[float(x) for x in row] for row in b_matrix_fractions(d)], dtype=np.float64
    )


def b_matrix_by_averaging(d: int) -> np.ndarray:
    """Oracle construction: average A_d columns within eta groups, drop duplicate rows."""
    from .amatrix import build_A_matrix
    from .subsets import even_power_set

    profile = comonotonic_profile(d)
    A = build_A_matrix(d)
    m = group_count(d)
    cols = np.stack(
        [
            A[:, profile.eta == h].mean(axis=1)
            for h in profile.h
        ],
        axis=1,
    )
    # one row per distinct even cardinality 0, 2, ..., 2 floor(d/2)
    labels = even_power_set(d)
    rows = []
    seen = set()
    for i, s in enumerate(labels):
        if len(s) not in seen:
            seen.add(len(s))
            rows.append(cols[i])
    assert len(rows) == m
    return np.array(rows)


@dataclass(frozen=True)
class SkeletalSignature:
    """One kappa per even cardinality 0, 2, ..., 2 floor(d/2); k[0] = 1."""

    d: int
    k: np.ndarray = field(repr=False)

    @classmethod
    def create(cls, d: int, k) -> "SkeletalSignature":
        validate_dimension(d)
        arr = np.array(k, dtype=np.float64)
        m = group_count(d)
        if arr.shape != (m,):
            raise InvalidSignatureError(
                f"skeletal signature for d={d} needs {m} entries, got {arr.shape}"
            )
        if abs(arr[0] - 1.0) > 1e-9:
            raise InvalidSignatureError(f"kappa_0 must be 1, got {arr[0]}")
        if arr.min() < -1e-9 or arr.max() > 1 + 1e-9:
            raise InvalidSignatureError("skeletal entries must lie in [0, 1]")
        arr.setflags(write=False)
        return cls(d=d, k=arr)

    @property
    def cardinalities(self) -> tuple[int, ...]:
        return tuple(range(0, 2 * (self.d // 2) + 1, 2))


@dataclass(frozen=True)
class SkeletalSolution:
    v: np.ndarray = field(repr=False)  # raw group weights B_d^{-1} k
    attainable: bool
    group_weights: np.ndarray | None = field(default=None, repr=False)  # cleaned


def skeletal_solve(k: SkeletalSignature, tol: float = 1e-9) -> SkeletalSolution:
    """Group weights v with B_d v = k; attainable iff v >= -tol."""
    B = build_B_matrix(k.d)
    v = np.linalg.solve(B, k.k)
    if v.min() < -tol:
        return SkeletalSolution(v=v, attainable=False, group_weights=None)
    cleaned = np.clip(v, 0.0, None)
    cleaned = cleaned / cleaned.sum()
    return SkeletalSolution(v=v, attainable=True, group_weights=cleaned)


def expand_skeletal(v, d: int) -> MixtureWeights:
    """Full weight vector with w_k = v_i / mu_i on each comonotonic group."""
    profile = comonotonic_profile(d)
    arr = np.asarray(v, dtype=np.float64)
    m = group_count(d)
    if arr.shape != (m,):
        raise InvalidWeightsError(f"group weights need length {m}, got {arr.shape}")
    if arr.min() < -1e-9:
        raise InvalidWeightsError(f"group weights must be >= 0, got min {arr.min():.3e}")
    if abs(arr.sum() - 1.0) > 1e-9:
        raise InvalidWeightsError(f"group weights must sum to 1, got {arr.sum()!r}")
    w = np.empty(1 << (d - 1))
    for hi, mui, vi in zip(profile.h, profile.mu, arr):
        w[profile.eta == hi] = max(vi, 0.0) / mui
    return MixtureWeights.create(d, w / w.sum())


def is_equiconcordant(kappa: EvenSignature, tol: float = 1e-9) -> bool:
    """True when entries with equal cardinality agree within tol."""
    by_card: dict[int, list[float]] = {}
    for s, v in zip(kappa.labels, kappa.values):
        by_card.setdefault(len(s), []).append(float(v))
    return all(max(vals) - min(vals) <= tol for vals in by_card.values())


def skeletal_from_even(kappa: EvenSignature, tol: float = 1e-6) -> SkeletalSignature:
    """Collapse an equiconcordant even signature to its skeletal form."""
    if not is_equiconcordant(kappa, tol):
        raise InvalidSignatureError("signature is not equiconcordant within tolerance")
    by_card: dict[int, float] = {}
    for s, v in zip(kappa.labels, kappa.values):
        by_card.setdefault(len(s), float(v))
    k = [by_card[c] for c in range(0, 2 * (kappa.d // 2) + 1, 2)]
    return SkeletalSignature.create(kappa.d, k)


def skeletal_of_equicorrelated(d: int, rho: float, mc=None) -> SkeletalSignature:
    """Skeletal signature of the elliptical family with equicorrelation rho.

    Exchangeable elliptical copulas are equiconcordant, so this traces the
    attainable elliptical curve inside the skeletal polytope.
    """
    from .elliptical import elliptical_signature

    lo = -1.0 / (d - 1)
    if not lo - 1e-12 <= rho <= 1 + 1e-12:
        raise InvalidSignatureError(f"equicorrelation needs rho in [{lo:.4f}, 1]")
    P = np.full((d, d), float(rho))
    np.fill_diagonal(P, 1.0)
    res = elliptical_signature(P, mc)
    # average within cardinalities: MC noise breaks exact equality
    by_card: dict[int, list[float]] = {}
    for s, v in zip(res.signature.labels, res.signature.values):
        by_card.setdefault(len(s), []).append(float(v))
    k = [float(np.mean(by_card[c])) for c in range(0, 2 * (d // 2) + 1, 2)]
    return SkeletalSignature.create(d, k)
