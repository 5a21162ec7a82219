"""The coefficient matrix A_d linking mixture weights to even signatures.

Entry a_{I,k} is 1 when the subvector indexed by I is comonotone under the
k-th extremal copula, i.e. when I is contained in J_k or in its complement;
rows run over the even power set in graded lexicographic order, columns over
k = 1..2^(d-1).  A_d is square and invertible, so a full even signature
pins down its extremal mixture weights uniquely.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .errors import DimensionTooLargeError, SingularSystemError
from .subsets import even_power_set, subset_mask, validate_dimension, validate_subset

DEFAULT_DIMENSION_CAP = 14


def check_dimension_cap(d: int, cap: int | None = None) -> None:
    cap = DEFAULT_DIMENSION_CAP if cap is None else cap
    if d > cap:
        raise DimensionTooLargeError(
            f"d={d} exceeds the dense-matrix cap {cap} (2^{d - 1} columns)"
        )


def a_row(subset, d: int) -> np.ndarray:
    """Row of coefficients a_{I,k} over k for an arbitrary subset I (any parity)."""
    subset = validate_subset(subset, d)
    mask = subset_mask(subset, d)
    codes = np.arange(1 << (d - 1), dtype=np.int64)
    masked = codes & mask
    return ((masked == 0) | (masked == mask)).astype(np.float64)


@lru_cache(maxsize=8)
def build_A_matrix(d: int, cap: int | None = None) -> np.ndarray:
    """Dense A_d, shape (2^(d-1), 2^(d-1)), rows in even-power-set order."""
    validate_dimension(d)
    check_dimension_cap(d, cap)
    subsets = even_power_set(d)
    n = 1 << (d - 1)
    A = np.empty((n, n), dtype=np.float64)
    codes = np.arange(n, dtype=np.int64)
    for i, subset in enumerate(subsets):
        mask = subset_mask(subset, d)
        masked = codes & mask
        A[i] = (masked == 0) | (masked == mask)
    A.setflags(write=False)
    return A


@lru_cache(maxsize=8)
def _lu_cache(d: int):
    A = build_A_matrix(d)
    try:
        lu, piv = lu_factor(A)
    except np.linalg.LinAlgError as err:  # pragma: no cover - A_d is invertible
        raise SingularSystemError(f"A_{d} unexpectedly singular: {err}") from err
    if not np.all(np.isfinite(lu)):  # pragma: no cover
        raise SingularSystemError(f"A_{d} LU factorization is not finite")
    return lu, piv


def solve_A(d: int, rhs: np.ndarray) -> np.ndarray:
    """Solve A_d x = rhs by the cached LU factorization (partial pivoting)."""
    lu, piv = _lu_cache(d)
    return lu_solve((lu, piv), rhs)
