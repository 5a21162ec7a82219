"""Signature vectors, mixture weights, and exact conversions between them.

An even signature is the vector of concordance probabilities kappa_I over
even-cardinality subsets (graded lexicographic order, kappa of the empty set
first and equal to 1).  It determines the full signature through the odd-
cardinality inclusion-exclusion recursion, and it determines a unique vector
of extremal mixture weights through the linear system A_d w = kappa.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .amatrix import a_row, build_A_matrix, solve_A
from .errors import (
    InvalidSignatureError,
    InvalidWeightsError,
    NotAttainableError,
    OutOfRangeError,
)
from .subsets import (
    even_index,
    even_power_set,
    full_index,
    full_power_set,
    validate_dimension,
)

WEIGHT_TOL = 1e-9
VALUE_TOL = 1e-9


def _readonly(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class EvenSignature:
    """kappa_I over the even power set; values[0] is kappa of the empty set."""

    d: int
    values: np.ndarray = field(repr=False)

    @classmethod
    def create(cls, d: int, values) -> "EvenSignature":
        validate_dimension(d)
        arr = _readonly(values)
        expected = 1 << (d - 1)
        if arr.shape != (expected,):
            raise InvalidSignatureError(
                f"even signature for d={d} needs {expected} values, got {arr.shape}"
            )
        if abs(arr[0] - 1.0) > VALUE_TOL:
            raise InvalidSignatureError(f"kappa of the empty set must be 1, got {arr[0]}")
        if arr.min() < -VALUE_TOL or arr.max() > 1 + VALUE_TOL:
            raise InvalidSignatureError("signature entries must lie in [0, 1]")
        return cls(d=d, values=arr)

    @property
    def labels(self):
        return even_power_set(self.d)

    def value_of(self, subset: tuple[int, ...]) -> float:
        return float(self.values[even_index(self.d)[subset]])


@dataclass(frozen=True)
class FullSignature:
    """kappa_I over the full power set in graded lexicographic order."""

    d: int
    values: np.ndarray = field(repr=False)

    @property
    def labels(self):
        return full_power_set(self.d)

    def value_of(self, subset: tuple[int, ...]) -> float:
        return float(self.values[full_index(self.d)[subset]])

    def even_part(self) -> EvenSignature:
        idx = full_index(self.d)
        vals = [self.values[idx[s]] for s in even_power_set(self.d)]
        return EvenSignature.create(self.d, vals)


@dataclass(frozen=True)
class MixtureWeights:
    """Nonnegative weights over the 2^(d-1) extremal copulas, summing to 1."""

    d: int
    w: np.ndarray = field(repr=False)

    @classmethod
    def create(cls, d: int, w, tol: float = WEIGHT_TOL) -> "MixtureWeights":
        validate_dimension(d)
        arr = np.array(w, dtype=np.float64)
        expected = 1 << (d - 1)
        if arr.shape != (expected,):
            raise InvalidWeightsError(
                f"weights for d={d} need length {expected}, got {arr.shape}"
            )
        if arr.min() < -tol:
            raise InvalidWeightsError(
                f"weights must be >= 0 (tolerance {tol}), min is {arr.min():.3e}"
            )
        if abs(arr.sum() - 1.0) > max(tol, 1e-9 * expected):
            raise InvalidWeightsError(f"weights must sum to 1, got {arr.sum()!r}")
        arr = np.clip(arr, 0.0, None)
        arr.setflags(write=False)
        return cls(d=d, w=arr)

    @classmethod
    def unit(cls, d: int, k: int = 1) -> "MixtureWeights":
        w = np.zeros(1 << (d - 1))
        w[k - 1] = 1.0
        return cls.create(d, w)


def signature_from_weights(weights: MixtureWeights) -> EvenSignature:
    """Even signature of the extremal mixture: kappa = A_d w."""
    A = build_A_matrix(weights.d)
    kappa = A @ weights.w
    # a convex combination of 0/1 columns can only leave [0,1] by rounding
    kappa = np.clip(kappa, 0.0, 1.0)
    kappa[0] = 1.0
    return EvenSignature.create(weights.d, kappa)


def weights_from_signature(kappa: EvenSignature, tol: float = WEIGHT_TOL) -> MixtureWeights:
    """Unique solution of A_d w = kappa; raises NotAttainable on negative weights."""
    w = solve_A(kappa.d, np.asarray(kappa.values))
    if w.min() < -tol:
        neg = ", ".join(
            f"w_{int(k) + 1}={float(w[k]):.4g}" for k in np.nonzero(w < -tol)[0][:8]
        )
        raise NotAttainableError(
            f"signature is not attainable: solved weights have negative entries ({neg})",
            weights=w,
        )
    return MixtureWeights.create(kappa.d, np.clip(w, 0.0, None))


def extend_to_full(kappa: EvenSignature) -> FullSignature:
    """Fill odd-cardinality entries by the inclusion-exclusion recursion.

    kappa_I = 1 - |I|/2 + sum over proper subsets A of I with 2 <= |A| < |I|
    of (-1)^{|A|} kappa_A / 2, evaluated in increasing cardinality so lower
    odd orders are available when needed.
    """
    d = kappa.d
    values: dict[tuple[int, ...], float] = {}
    for s, v in zip(even_power_set(d), kappa.values):
        values[s] = float(v)
    for s in full_power_set(d):
        if len(s) % 2 == 0:
            continue
        if len(s) == 1:
            values[s] = 1.0
            continue
        acc = 1.0 - len(s) / 2.0
        for sub in _proper_subsets(s):
            if len(sub) < 2:
                continue
            term = values[sub] / 2.0
            acc += term if len(sub) % 2 == 0 else -term
        values[s] = acc
    ordered = _readonly([values[s] for s in full_power_set(d)])
    return FullSignature(d=d, values=ordered)


def _proper_subsets(s: tuple[int, ...]):
    n = len(s)
    for mask in range(1, (1 << n) - 1):
        yield tuple(s[i] for i in range(n) if mask >> i & 1)


def kappa_to_tau(kappa: float, m: int) -> float:
    """(2^(m-1) - 1) tau = 2^(m-1) kappa - 1, the multivariate Kendall link."""
    if m < 2:
        raise OutOfRangeError(f"cardinality must be >= 2, got {m}")
    if not -VALUE_TOL <= kappa <= 1 + VALUE_TOL:
        raise OutOfRangeError(f"kappa must lie in [0, 1], got {kappa}")
    half = 2.0 ** (m - 1)
    return (half * kappa - 1.0) / (half - 1.0)


def tau_to_kappa(tau: float, m: int) -> float:
    if m < 2:
        raise OutOfRangeError(f"cardinality must be >= 2, got {m}")
    half = 2.0 ** (m - 1)
    lo = -1.0 / (half - 1.0)
    if not lo - VALUE_TOL <= tau <= 1 + VALUE_TOL:
        raise OutOfRangeError(f"tau must lie in [{lo:.6g}, 1] for m={m}, got {tau}")
    return ((half - 1.0) * tau + 1.0) / half


def tau_kappa_convert(value: float, m: int, direction: str) -> float:
    """Convert between kappa and tau for cardinality m; direction 'to_tau'/'to_kappa'."""
    if direction == "to_tau":
        return kappa_to_tau(value, m)
    if direction == "to_kappa":
        return tau_to_kappa(value, m)
    raise OutOfRangeError(f"direction must be 'to_tau' or 'to_kappa', got {direction!r}")


def kendall_matrix_from_even(kappa: EvenSignature) -> np.ndarray:
    """Pairwise Kendall matrix P_tau[i,j] = 2 kappa_{ij} - 1 with unit diagonal."""
    d = kappa.d
    idx = even_index(d)
    P = np.eye(d)
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            tau = 2.0 * kappa.values[idx[(i, j)]] - 1.0
            P[i - 1, j - 1] = P[j - 1, i - 1] = tau
    return P


def odd_kappa_from_weights(weights: MixtureWeights, subset) -> float:
    """Direct mixture value sum_k w_k a_{I,k} for any subset (any parity)."""
    return float(a_row(subset, weights.d) @ weights.w)
