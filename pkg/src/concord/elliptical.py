"""Concordance signatures of elliptical copulas and the heavy-tail limit.

All continuous elliptical distributions sharing a correlation matrix P have
the same concordance signature: kappa_I is twice the negative-orthant
probability of a centred Gaussian with dispersion P.  Pairs have the closed
form 1/2 + arcsin(rho)/pi and triples 1/4 + (sum of pairwise arcsines)/(2 pi);
higher orders are estimated by Monte Carlo from one shared batch of sign
patterns, which keeps the whole estimated signature attainable: the pattern
histogram itself is a nonnegative weight vector.

The same histogram is the direct estimator of the extremal-mixture weights
to which the Student t copula converges as its degrees of freedom go to 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .amatrix import build_A_matrix
from .coding import code_matrix, num_extremal
from .errors import InvalidMatrixError, NotAttainableError
from .rng import batch_sizes, make_generator
from .signatures import EvenSignature, MixtureWeights, weights_from_signature
from .subsets import even_power_set, subset_mask, validate_dimension

PSD_TOL = 1e-9


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo settings; antithetic=True counts each sign pattern together
    with its flip (the pattern statistic), halving the variance for free."""

    samples: int = 1_000_000
    seed: int = 0
    antithetic: bool = True
    batch_size: int = 1_000_000

    def __post_init__(self):
        if self.samples < 1:
            raise InvalidMatrixError(f"samples must be >= 1, got {self.samples}")


@dataclass(frozen=True)
class OrthantEstimate:
    value: float
    std_error: float
    method: str  # "exact" | "monte_carlo"


@dataclass(frozen=True)
class EllipticalSignatureResult:
    signature: EvenSignature
    projected: EvenSignature
    weights: MixtureWeights
    raw_weights: np.ndarray = field(repr=False)
    estimates: tuple[OrthantEstimate, ...]
    samples: int


@dataclass(frozen=True)
class TLimitResult:
    weights: MixtureWeights
    std_errors: np.ndarray | None
    mode: str


@dataclass(frozen=True)
class EllipticalAttainability:
    attainable: bool
    back_transform: np.ndarray = field(repr=False)
    min_eigenvalue: float


def validate_correlation(P, psd: bool = True) -> np.ndarray:
    arr = np.asarray(P, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidMatrixError(f"expected a square matrix, got shape {arr.shape}")
    validate_dimension(arr.shape[0])
    if not np.allclose(arr, arr.T, atol=1e-12):
        raise InvalidMatrixError("correlation matrix must be symmetric")
    if not np.allclose(np.diag(arr), 1.0, atol=1e-12):
        raise InvalidMatrixError("correlation matrix must have a unit diagonal")
    if np.abs(arr).max() > 1 + 1e-12:
        raise InvalidMatrixError("correlation entries must lie in [-1, 1]")
    if psd:
        eigs = np.linalg.eigvalsh(arr)
        if eigs.min() < -PSD_TOL:
            raise InvalidMatrixError(
                f"matrix is not positive semi-definite (min eigenvalue {eigs.min():.3e})"
            )
    return arr


def psd_root(P: np.ndarray) -> np.ndarray:
    """A with A A^T = P via symmetric eigendecomposition; tiny negatives clamped."""
    vals, vecs = np.linalg.eigh(P)
    vals = np.where((vals > -PSD_TOL) & (vals < 0.0), 0.0, vals)
    if vals.min() < 0:
        raise InvalidMatrixError(f"matrix has negative eigenvalue {vals.min():.3e}")
    return vecs * np.sqrt(vals)[None, :]


def bivariate_kappa(rho: float) -> float:
    """kappa for a pair: 1/2 + arcsin(rho)/pi."""
    return 0.5 + math.asin(float(rho)) / math.pi


def trivariate_kappa(r12: float, r13: float, r23: float) -> float:
    """kappa for a triple: twice the classical trivariate orthant probability."""
    return 0.25 + (math.asin(r12) + math.asin(r13) + math.asin(r23)) / (2.0 * math.pi)


def arcsin_tau_matrix(P) -> np.ndarray:
    """Componentwise Kendall transform 2 arcsin(rho) / pi of an elliptical copula."""
    arr = validate_correlation(P)
    out = 2.0 * np.arcsin(arr) / np.pi
    np.fill_diagonal(out, 1.0)
    return out


def sin_transform(P_tau) -> np.ndarray:
    """Inverse transform sin(pi tau / 2), the candidate elliptical correlation."""
    arr = np.asarray(P_tau, dtype=np.float64)
    out = np.sin(np.pi * arr / 2.0)
    np.fill_diagonal(out, 1.0)
    return out


def elliptical_attainable(P_tau) -> EllipticalAttainability:
    """Can P_tau be the Kendall matrix of an elliptical copula?

    Yes iff sin(pi P_tau / 2) is positive semi-definite, since that matrix
    would have to be the copula's correlation matrix.
    """
    arr = validate_correlation(P_tau, psd=False)
    back = sin_transform(arr)
    min_eig = float(np.linalg.eigvalsh(back).min())
    return EllipticalAttainability(
        attainable=min_eig >= -PSD_TOL,
        back_transform=back,
        min_eigenvalue=min_eig,
    )


def pattern_histogram(P: np.ndarray, mc: McConfig, cancel=None) -> tuple[np.ndarray, int]:
    """Histogram of raw sign patterns of A Z over 2^d bins from one shared batch.

    Batches are keyed by (seed, batch index) so any scheduling yields the
    same counts.  `cancel` may be a threading.Event checked between batches.
    """
    d = P.shape[0]
    A = psd_root(P)
    weights = (1 << np.arange(d - 1, -1, -1)).astype(np.int64)
    hist = np.zeros(1 << d, dtype=np.int64)
    for stream, size in batch_sizes(mc.samples, mc.batch_size):
        if cancel is not None and cancel.is_set():
            raise InterruptedError("sampling cancelled")
        G = make_generator(mc.seed, stream).standard_normal((size, d))
        Z = G @ A.T
        codes = (Z > 0).astype(np.int64) @ weights
        hist += np.bincount(codes, minlength=1 << d)
    return hist, mc.samples


def _canonical_counts(hist: np.ndarray, d: int) -> np.ndarray:
    m = num_extremal(d)
    full_mask = (1 << d) - 1
    return hist[:m] + hist[full_mask - np.arange(m)]


def elliptical_signature(P, mc: McConfig | None = None, cancel=None) -> EllipticalSignatureResult:
    """Even signature of the elliptical family with correlation matrix P.

    Pairs are exact (arcsine law); subsets of four or more use the shared
    Monte Carlo pattern histogram.  The raw solve of A_d w = kappa can dip
    a few standard errors below zero on entries driven by noise, so the
    reported weights clamp those and renormalize; the projected signature is
    recomputed from the cleaned weights and is attainable by construction.
    """
    arr = validate_correlation(P)
    d = arr.shape[0]
    labels = even_power_set(d)
    values = np.empty(len(labels))
    estimates: list[OrthantEstimate] = []

    needs_mc = any(len(s) >= 4 for s in labels)
    hist = None
    n_samples = 0
    if needs_mc:
        mc = mc or McConfig()
        hist, n_samples = pattern_histogram(arr, mc, cancel=cancel)
        counts = _canonical_counts(hist, d)
        if mc.antithetic:
            kappa_mc = build_A_matrix(d) @ (counts / n_samples)
        else:
            kappa_mc = _one_sided_kappa(hist, d, n_samples)

    for i, s in enumerate(labels):
        if len(s) == 0:
            values[i] = 1.0
            estimates.append(OrthantEstimate(1.0, 0.0, "exact"))
        elif len(s) == 2:
            values[i] = bivariate_kappa(arr[s[0] - 1, s[1] - 1])
            estimates.append(OrthantEstimate(values[i], 0.0, "exact"))
        else:
            k_hat = float(kappa_mc[i])
            if mc.antithetic:
                se = math.sqrt(max(k_hat * (1.0 - k_hat), 0.0) / n_samples)
            else:
                p_hat = k_hat / 2.0
                se = 2.0 * math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / n_samples)
            values[i] = min(max(k_hat, 0.0), 1.0)
            estimates.append(OrthantEstimate(values[i], se, "monte_carlo"))

    signature = EvenSignature.create(d, values)
    if needs_mc:
        raw = np.linalg.solve(build_A_matrix(d), values)
        # negatives can only be Monte Carlo noise: elliptical signatures are
        # attainable, so anything beyond the amplified noise level is a bug
        noise = _inverse_amplification(d) * math.sqrt(0.25 / n_samples)
        if raw.min() < -(1e-9 + 20.0 * noise):
            raise NotAttainableError(
                f"solved weight {raw.min():.3e} is too negative for MC noise "
                f"at {n_samples} samples"
            )
    else:
        raw = np.asarray(weights_from_signature(signature).w)
    cleaned = np.clip(raw, 0.0, None)
    total = cleaned.sum()
    if total <= 0:  # pragma: no cover - impossible for a probability histogram
        raise NotAttainableError("elliptical signature produced a zero weight vector")
    weights = MixtureWeights.create(d, cleaned / total)
    projected = _signature_of(weights)
    return EllipticalSignatureResult(
        signature=signature,
        projected=projected,
        weights=weights,
        raw_weights=raw,
        estimates=tuple(estimates),
        samples=n_samples,
    )


def _signature_of(weights: MixtureWeights) -> EvenSignature:
    from .signatures import signature_from_weights

    return signature_from_weights(weights)


_AMPLIFICATION: dict[int, float] = {}


def _inverse_amplification(d: int) -> float:
    """Max-norm amplification of A_d^{-1}, bounding noise blow-up in the solve."""
    if d not in _AMPLIFICATION:
        inv = np.linalg.inv(build_A_matrix(d))
        _AMPLIFICATION[d] = float(np.abs(inv).sum(axis=1).max())
    return _AMPLIFICATION[d]


def _one_sided_kappa(hist: np.ndarray, d: int, n: int) -> np.ndarray:
    """kappa_I = 2 P(all signs negative on I) without the flip symmetrization."""
    labels = even_power_set(d)
    patterns = np.arange(1 << d)
    out = np.empty(len(labels))
    for i, s in enumerate(labels):
        mask = subset_mask(s, d)
        out[i] = 2.0 * hist[(patterns & mask) == 0].sum() / n
    return out


def t_limit_weights(P, mode: str = "analytic", mc: McConfig | None = None, cancel=None) -> TLimitResult:
    """Weights of the extremal mixture sharing the elliptical signature of P.

    This is the pointwise limit of the Student t copula as its degrees of
    freedom go to zero.  analytic: solve A_d w = elliptical signature.
    monte_carlo: estimate w_k directly as the frequency of the k-th diagonal
    among sign patterns of A Z.
    """
    arr = validate_correlation(P)
    d = arr.shape[0]
    if mode == "analytic":
        res = elliptical_signature(arr, mc, cancel=cancel)
        return TLimitResult(weights=res.weights, std_errors=None, mode=mode)
    if mode == "monte_carlo":
        mc = mc or McConfig()
        hist, n = pattern_histogram(arr, mc, cancel=cancel)
        w_hat = _canonical_counts(hist, d) / n
        se = np.sqrt(np.clip(w_hat * (1.0 - w_hat), 0.0, None) / n)
        return TLimitResult(
            weights=MixtureWeights.create(d, w_hat), std_errors=se, mode=mode
        )
    raise InvalidMatrixError(f"mode must be 'analytic' or 'monte_carlo', got {mode!r}")


def rank_deficient_support(P, tol: float = 1e-10) -> list[int]:
    """Diagonals forced to zero weight when P is rank deficient.

    If rows i and j of the root A coincide, the sign patterns with
    different bits at i and j are impossible; if the rows are opposite,
    patterns with equal bits are impossible.
    """
    arr = validate_correlation(P)
    d = arr.shape[0]
    A = psd_root(arr)
    codes = code_matrix(d)
    forced: set[int] = set()
    for i in range(d):
        for j in range(i + 1, d):
            if np.abs(A[i] - A[j]).max() <= tol:
                ks = np.nonzero(codes[:, i] != codes[:, j])[0] + 1
                forced.update(int(k) for k in ks)
            elif np.abs(A[i] + A[j]).max() <= tol:
                ks = np.nonzero(codes[:, i] == codes[:, j])[0] + 1
                forced.update(int(k) for k in ks)
    return sorted(forced)
