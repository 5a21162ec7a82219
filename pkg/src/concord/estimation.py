"""Estimation of attainable concordance signatures from multivariate samples.

For every unordered pair of observations the componentwise sign vector
selects one of the 2^(d-1) hypercube diagonals; the histogram of those
diagonals, normalized by the number of pairs, is a nonnegative weight
vector summing to one, so the estimated signature is attainable by
construction.  Occasional ties (components equal between two rows) are
handled by splitting the pair's mass equally over the 2^m binary
resolutions of its m tied components.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .coding import num_extremal
from .errors import (
    MalformedCsvError,
    NonPositivePriceError,
    RaggedRowsError,
    TiesPresentError,
    TooFewRowsError,
)
from .rng import make_generator
from .signatures import (
    EvenSignature,
    FullSignature,
    MixtureWeights,
    extend_to_full,
    signature_from_weights,
)
from .subsets import validate_dimension

DEFAULT_PAIR_BLOCK = 2048

try:  # optional accelerator for the O(n^2 d) pair loop
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised on minimal installs
    HAVE_NUMBA = False


if HAVE_NUMBA:

    @njit(parallel=True, cache=True)
    def _pair_hist_jit(X, m, d):  # pragma: no cover - compiled
        n = X.shape[0]
        full_mask = (1 << d) - 1
        out = np.zeros((n, m), dtype=np.int64)
        for i in prange(n - 1):
            row = out[i]
            for j in range(i + 1, n):
                code = 0
                for c in range(d):
                    if X[i, c] > X[j, c]:
                        code |= 1 << (d - 1 - c)
                if code >= m:
                    code = full_mask - code
                row[code] += 1
        return out.sum(axis=0)


@dataclass(frozen=True)
class SampleMatrix:
    values: np.ndarray = field(repr=False)
    columns: tuple[str, ...] | None = None

    @classmethod
    def create(cls, values, columns=None) -> "SampleMatrix":
        arr = np.array(values, dtype=np.float64)
        if arr.ndim != 2:
            raise TooFewRowsError(f"sample must be 2-D, got shape {arr.shape}")
        n, d = arr.shape
        if n < 2:
            raise TooFewRowsError(f"need at least 2 observations, got {n}")
        validate_dimension(d)
        if not np.all(np.isfinite(arr)):
            raise MalformedCsvError("sample contains non-finite values")
        if columns is not None:
            columns = tuple(str(c) for c in columns)
            if len(columns) != d:
                raise MalformedCsvError(
                    f"{len(columns)} column names for {d} columns"
                )
        arr.setflags(write=False)
        return cls(values=arr, columns=columns)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class EmpiricalSignature:
    even: EvenSignature
    full: FullSignature
    weights: MixtureWeights
    n: int
    n_pairs: int
    tie_adjusted: bool


def _pair_blocks(n: int, block: int):
    """Fixed iteration order over row-index blocks covering all pairs i < j."""
    starts = list(range(0, n, block))
    for bi, i0 in enumerate(starts):
        for j0 in starts[bi:]:
            yield i0, min(i0 + block, n), j0, min(j0 + block, n)


def has_ties(X: np.ndarray) -> bool:
    """A pair with a tied component exists iff some column has duplicate values."""
    n = X.shape[0]
    return any(np.unique(X[:, c]).size < n for c in range(X.shape[1]))


def _diagonal_histogram(X: np.ndarray, block: int, allow_ties: bool):
    """Counts of canonical diagonals over all pairs; tie mass split binarily.

    Integer diagonal codes are packed coordinate by coordinate to keep the
    per-block footprint at a couple of bytes per pair; counting is exact, so
    any block iteration order gives identical results.  Pairs with tied
    components take the slow per-pair resolution path.
    """
    n, d = X.shape
    m = num_extremal(d)
    full_mask = (1 << d) - 1
    counts = np.zeros(m, dtype=np.float64)
    tie_pairs = 0
    for i0, i1, j0, j1 in _pair_blocks(n, block):
        A = X[i0:i1]
        B = X[j0:j1]
        codes = np.zeros((i1 - i0, j1 - j0), dtype=np.int32)
        any_tie = np.zeros((i1 - i0, j1 - j0), dtype=bool)
        for c in range(d):
            ac = A[:, c][:, None]
            bc = B[:, c][None, :]
            codes |= (ac > bc).astype(np.int32) << (d - 1 - c)
            any_tie |= ac == bc
        if i0 == j0:
            keep = np.triu(np.ones_like(any_tie), k=1).astype(bool)
        else:
            keep = np.ones_like(any_tie)
        clean = keep & ~any_tie
        flat = codes[clean]
        flat = np.where(flat >= m, full_mask - flat, flat)  # flip leading-one codes
        counts += np.bincount(flat, minlength=m).astype(np.float64)
        tied_mask = keep & any_tie
        n_tied = int(tied_mask.sum())
        if n_tied:
            if not allow_ties:
                raise TiesPresentError(
                    f"{n_tied} pairs have tied components; use the tie-splitting "
                    "estimator (empirical_signature_ties)"
                )
            tie_pairs += n_tied
            ii, jj = np.nonzero(tied_mask)
            for a, b in zip(ii, jj):
                row = A[a] - B[b]
                positions = np.nonzero(row == 0.0)[0]
                base = (row > 0).astype(np.int64)
                share = 0.5 ** len(positions)
                for mask in range(1 << len(positions)):
                    bits = base.copy()
                    for bit_index, pos in enumerate(positions):
                        bits[pos] = (mask >> bit_index) & 1
                    if bits[0] == 1:
                        bits = 1 - bits
                    code = int(bits @ (1 << np.arange(d - 1, -1, -1)))
                    counts[code] += share
    return counts, tie_pairs


def _signature_from_counts(counts: np.ndarray, data: SampleMatrix, tie_adjusted: bool):
    from .amatrix import build_A_matrix

    n = data.n
    n_pairs = n * (n - 1) // 2
    weights = MixtureWeights.create(data.d, counts / n_pairs)
    # divide the exact integer (or dyadic, under tie splitting) numerator
    # once: kappa then equals the direct pair-count U-statistic to the bit
    numer = build_A_matrix(data.d) @ counts
    even = EvenSignature.create(data.d, np.clip(numer / n_pairs, 0.0, 1.0))
    full = extend_to_full(even)
    return EmpiricalSignature(
        even=even,
        full=full,
        weights=weights,
        n=n,
        n_pairs=n_pairs,
        tie_adjusted=tie_adjusted,
    )


def empirical_signature(
    data: SampleMatrix, block: int = DEFAULT_PAIR_BLOCK, use_jit: bool | None = None
) -> EmpiricalSignature:
    """Signature of the unique extremal mixture matching the sample's pair signs.

    Requires a tie-free sample (continuous data); raises TiesPresent
    otherwise so the caller can switch to empirical_signature_ties.
    """
    if has_ties(data.values):
        raise TiesPresentError(
            "sample has tied components; use the tie-splitting estimator "
            "(empirical_signature_ties)"
        )
    counts = _tie_free_histogram(data.values, block, use_jit)
    return _signature_from_counts(counts, data, tie_adjusted=False)


def empirical_signature_ties(
    data: SampleMatrix, block: int = DEFAULT_PAIR_BLOCK, use_jit: bool | None = None
) -> EmpiricalSignature:
    """Tie-splitting variant: each tied pair spreads its mass over resolutions."""
    if not has_ties(data.values):
        counts = _tie_free_histogram(data.values, block, use_jit)
        return _signature_from_counts(counts, data, tie_adjusted=False)
    counts, tie_pairs = _diagonal_histogram(data.values, block, allow_ties=True)
    return _signature_from_counts(counts, data, tie_adjusted=tie_pairs > 0)


def _tie_free_histogram(X: np.ndarray, block: int, use_jit: bool | None) -> np.ndarray:
    if use_jit is None:
        use_jit = HAVE_NUMBA and X.shape[0] >= 4096
    if use_jit and HAVE_NUMBA:
        counts = _pair_hist_jit(
            np.ascontiguousarray(X), num_extremal(X.shape[1]), X.shape[1]
        )
        return counts.astype(np.float64)
    counts, _ = _diagonal_histogram(X, block, allow_ties=False)
    return counts


def bootstrap_standard_errors(
    data: SampleMatrix,
    n_boot: int = 500,
    seed: int = 0,
    block: int = DEFAULT_PAIR_BLOCK,
) -> np.ndarray:
    """Nonparametric bootstrap SEs for the even signature entries."""
    rng = make_generator(seed)
    stats = []
    for _ in range(n_boot):
        idx = rng.integers(0, data.n, size=data.n)
        resampled = SampleMatrix.create(data.values[idx], data.columns)
        est = empirical_signature_ties(resampled, block=block)
        stats.append(est.even.values)
    return np.std(np.array(stats), axis=0, ddof=1)


def ingest_csv(
    source,
    log_returns: bool = False,
    column_filter=None,
    header: bool | str = "auto",
) -> SampleMatrix:
    """Read a rectangular numeric CSV into a SampleMatrix.

    `source` is a path or a text stream.  With log_returns the rows are
    mapped to ln(p_t / p_{t-1}), dropping the first row; prices must be
    strictly positive.  column_filter selects columns by name or 0-based
    index before any transformation.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    rows = [row for row in csv.reader(io.StringIO(text)) if row and any(c.strip() for c in row)]
    if not rows:
        raise MalformedCsvError("empty CSV input")

    names: tuple[str, ...] | None = None
    first = rows[0]
    has_header = header
    if header == "auto":
        has_header = not all(_is_number(c) for c in first)
    if has_header:
        names = tuple(c.strip() for c in first)
        rows = rows[1:]
        if not rows:
            raise MalformedCsvError("CSV has a header but no data rows")

    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise RaggedRowsError(f"row {i} has {len(row)} cells, expected {width}")
    try:
        values = np.array([[float(c) for c in row] for row in rows], dtype=np.float64)
    except ValueError as err:
        raise MalformedCsvError(f"non-numeric cell: {err}") from None

    if column_filter is not None:
        indices = []
        for c in column_filter:
            if isinstance(c, str):
                if names is None or c not in names:
                    raise MalformedCsvError(f"unknown column {c!r}")
                indices.append(names.index(c))
            else:
                indices.append(int(c))
        values = values[:, indices]
        names = tuple(names[i] for i in indices) if names else None

    if log_returns:
        if np.any(values <= 0.0):
            raise NonPositivePriceError("log returns need strictly positive prices")
        values = np.log(values[1:] / values[:-1])

    return SampleMatrix.create(values, names)


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True
