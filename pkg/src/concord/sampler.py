"""Sampling from extremal copulas and their mixtures, plus diagnostics.

An extremal mixture concentrates on the 2^(d-1) main diagonals of the unit
hypercube: a draw is U b + (1-U)(1-b) where the diagonal's endpoint b is
s_k or 1-s_k with probability w_k/2 each and U is an independent uniform.
Membership of that support, together with conditional uniformity of the
first coordinate given the diagonal pattern, characterizes mixtures; the
dependent-Bernoulli counterexample sampler produces data that sit on the
diagonals and have mixture bivariate margins yet fail the conditional
uniformity test for theta != 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import kstest

from .coding import binary_code, code_matrix, num_extremal
from .errors import InvalidWeightsError, OutOfRangeError, ThetaOutOfRangeError, TooFewRowsError
from .rng import make_generator
from .signatures import MixtureWeights
from .subsets import validate_dimension

DIAGONAL_TOL = 1e-12


def extremal_cdf(k: int, u, d: int | None = None) -> float:
    """CDF of the k-th extremal copula: (min_J u + min_Jc u - 1)^+, min over {} = 1."""
    u = np.asarray(u, dtype=np.float64)
    if d is None:
        d = u.shape[-1]
    validate_dimension(d)
    if u.shape[-1] != d:
        raise OutOfRangeError(f"point has {u.shape[-1]} coordinates, expected {d}")
    if np.any(u < -1e-12) or np.any(u > 1 + 1e-12):
        raise OutOfRangeError("evaluation point must lie in the unit hypercube")
    code = binary_code(k, d)
    J = [j - 1 for j in code.index_set]
    Jc = [j - 1 for j in range(1, d + 1) if j not in code.index_set]
    m1 = u[..., J].min(axis=-1) if J else 1.0
    m2 = u[..., Jc].min(axis=-1) if Jc else 1.0
    return float(np.maximum(m1 + m2 - 1.0, 0.0))


def mixture_cdf(weights: MixtureWeights, u) -> float:
    """CDF of the mixture: sum_k w_k C_k(u)."""
    return float(
        sum(
            wk * extremal_cdf(k + 1, u, weights.d)
            for k, wk in enumerate(weights.w)
            if wk > 0.0
        )
    )


@dataclass(frozen=True)
class MixtureSample:
    values: np.ndarray = field(repr=False)
    seed: int
    weights: MixtureWeights

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]


def sample_mixture(weights: MixtureWeights, n: int, seed: int) -> MixtureSample:
    """Draw n rows: pick a diagonal by weight, an endpoint by a fair coin, slide by U."""
    if n < 1:
        raise OutOfRangeError(f"n must be >= 1, got {n}")
    d = weights.d
    rng = make_generator(seed)
    ks = rng.choice(num_extremal(d), size=n, p=weights.w / weights.w.sum())
    flip = rng.random(n) < 0.5
    U = rng.random(n)
    bits = code_matrix(d)[ks].astype(np.float64)
    bits = np.where(flip[:, None], 1.0 - bits, bits)
    rows = U[:, None] * bits + (1.0 - U[:, None]) * (1.0 - bits)
    return MixtureSample(values=rows, seed=seed, weights=weights)


def diagonal_patterns(values: np.ndarray, tol: float = DIAGONAL_TOL) -> np.ndarray:
    """Canonical diagonal index per row, or 0 for rows off every diagonal.

    Row u lies on diagonal k when each u_j equals u_1 (bit 0) or 1 - u_1
    (bit 1) with the leading bit canonicalized to 0; u_1 close to 1/2 makes
    both matches valid and resolves to bit 0, which is the same diagonal
    identification up to the flip.
    """
    u1 = values[:, :1]
    same = np.abs(values - u1) <= tol
    opposite = np.abs(values - (1.0 - u1)) <= tol
    on_diag = np.all(same | opposite, axis=1)
    bits = np.where(same, 0, 1)
    d = values.shape[1]
    weights = (1 << np.arange(d - 1, -1, -1)).astype(np.int64)
    ks = (bits @ weights) + 1
    return np.where(on_diag, ks, 0)


@dataclass(frozen=True)
class DiagnosticReport:
    n: int
    on_diagonal_fraction: float
    pattern_counts: dict[int, int]
    ks_pvalues: dict[int, float]
    level: float
    uniformity_tested: bool
    passed: bool


def validate_mixture(
    values: np.ndarray,
    level: float = 0.05,
    min_group: int = 20,
    tol: float = DIAGONAL_TOL,
) -> DiagnosticReport:
    """Support + conditional-uniformity diagnostic for mixture samples.

    Checks (a) every row sits on a main diagonal and (b) within each
    diagonal group of at least `min_group` rows the first coordinate is
    uniform (Kolmogorov-Smirnov, Bonferroni-corrected across groups).
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2 or values.shape[0] < 2:
        raise TooFewRowsError("need a 2-D sample with at least two rows")
    ks = diagonal_patterns(values, tol)
    n = len(ks)
    on_frac = float((ks > 0).sum() / n)
    counts: dict[int, int] = {}
    for k in np.unique(ks[ks > 0]):
        counts[int(k)] = int((ks == k).sum())
    pvalues: dict[int, float] = {}
    groups = {k: c for k, c in counts.items() if c >= min_group}
    for k in sorted(groups):
        u1 = values[ks == k, 0]
        pvalues[k] = float(kstest(u1, "uniform").pvalue)
    tested = bool(pvalues)
    support_ok = on_frac == 1.0
    if tested:
        threshold = level / len(pvalues)  # Bonferroni across diagonal groups
        uniform_ok = all(p >= threshold for p in pvalues.values())
    else:
        uniform_ok = True
    return DiagnosticReport(
        n=n,
        on_diagonal_fraction=on_frac,
        pattern_counts=counts,
        ks_pvalues=pvalues,
        level=level,
        uniformity_tested=tested,
        passed=support_ok and uniform_ok,
    )


THETA_LIMIT = 4.0


def sample_dependent_bernoulli_counterexample(theta: float, n: int, seed: int) -> np.ndarray:
    """Trivariate rows on the diagonals whose copula is not a mixture for theta != 0.

    (Y1,Y2,Y3) is uniform on {0,1}^3 and U | Y=y has CDF
    u + (-1)^(y1+y2+y3) theta u(1-u)/4; the emitted row is U y + (1-U)(1-y).
    Nonnegativity of the conditional density bounds |theta| by 4.
    """
    if abs(theta) > THETA_LIMIT:
        raise ThetaOutOfRangeError(
            f"|theta| must be <= {THETA_LIMIT} for a valid distribution, got {theta}"
        )
    if n < 1:
        raise OutOfRangeError(f"n must be >= 1, got {n}")
    rng = make_generator(seed)
    y = rng.integers(0, 2, size=(n, 3))
    signs = np.where(y.sum(axis=1) % 2 == 0, 1.0, -1.0)
    p = rng.random(n)
    U = _invert_quadratic_cdf(p, signs * theta / 4.0)
    rows = U[:, None] * y + (1.0 - U[:, None]) * (1.0 - y)
    return rows


def _invert_quadratic_cdf(p: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Solve u + a u(1-u) = p for u in [0,1], elementwise.

    The quadratic a u^2 - (1+a) u + p = 0 has one root in [0,1]; the stable
    form avoids cancellation, with bisection as a fallback for the few
    entries where rounding pushes the closed form outside tolerance.
    """
    u = np.where(np.abs(a) < 1e-12, p, _stable_root(p, a))
    cdf = u + a * u * (1.0 - u)
    bad = np.abs(cdf - p) > 1e-12
    if np.any(bad):
        u[bad] = _bisect_cdf(p[bad], a[bad])
    return np.clip(u, 0.0, 1.0)


def _stable_root(p: np.ndarray, a: np.ndarray) -> np.ndarray:
    a = np.where(a == 0.0, 1e-300, a)
    b = -(1.0 + a)
    disc = np.sqrt(np.maximum(b * b - 4.0 * a * p, 0.0))
    q = -0.5 * (b - disc)  # b < 0, so this is the large-magnitude combination
    root1 = q / a
    with np.errstate(divide="ignore", invalid="ignore"):
        root2 = np.where(q != 0, p / q, np.inf)
    in_unit1 = (root1 >= -1e-12) & (root1 <= 1 + 1e-12)
    return np.where(in_unit1, root1, root2)


def _bisect_cdf(p: np.ndarray, a: np.ndarray, iters: int = 60) -> np.ndarray:
    lo = np.zeros_like(p)
    hi = np.ones_like(p)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        val = mid + a * mid * (1.0 - mid)
        lower = val < p
        lo = np.where(lower, mid, lo)
        hi = np.where(lower, hi, mid)
    return 0.5 * (lo + hi)


def empirical_cdf_at(values: np.ndarray, u) -> float:
    """Fraction of rows componentwise <= u."""
    u = np.asarray(u, dtype=np.float64)
    return float(np.mean(np.all(values <= u[None, :], axis=1)))
