"""Binary coding of extremal copulas.

Extremal copula k (k = 1..2^(d-1)) concentrates on the main diagonal of the
unit hypercube joining s_k and 1-s_k, where s_k is the d-digit binary
representation of k-1.  The leading digit of s_k is always 0, which picks a
canonical representative of each diagonal; the index set J_k collects the
(1-based) positions of the zeros, so J_1 = {1..d} is the comonotone copula.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidBitsError, OutOfRangeError
from .subsets import validate_dimension


@dataclass(frozen=True)
class ExtremalCode:
    k: int
    d: int
    bits: tuple[int, ...]
    index_set: tuple[int, ...]

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.d + 1) if j not in self.index_set)


def num_extremal(d: int) -> int:
    return 1 << (d - 1)


def binary_code(k: int, d: int) -> ExtremalCode:
    """Code s_k and index set J_k of the k-th extremal copula."""
    validate_dimension(d)
    if not 1 <= k <= num_extremal(d):
        raise OutOfRangeError(f"k must be in 1..{num_extremal(d)} for d={d}, got {k}")
    v = k - 1
    bits = tuple((v >> (d - 1 - j)) & 1 for j in range(d))
    index_set = tuple(j + 1 for j, b in enumerate(bits) if b == 0)
    return ExtremalCode(k=k, d=d, bits=bits, index_set=index_set)


def canonicalize_bits(bits) -> tuple[int, ...]:
    """Flip a 0/1 vector so its leading entry is 0 (diagonals are unordered)."""
    out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise InvalidBitsError(f"bits must be 0/1, got {tuple(bits)}")
    if not out:
        raise InvalidBitsError("bits must be non-empty")
    if out[0] == 1:
        out = tuple(1 - b for b in out)
    return out


def canonical_index(bits) -> int:
    """Inverse of binary_code under the flip identification s_k <-> 1-s_k."""
    out = canonicalize_bits(bits)
    v = 0
    for b in out:
        v = (v << 1) | b
    return v + 1


def code_matrix(d: int) -> np.ndarray:
    """All codes stacked: row k-1 is s_k.  Shape (2^(d-1), d), dtype uint8."""
    n = num_extremal(d)
    ks = np.arange(n, dtype=np.uint32)[:, None]
    shifts = np.arange(d - 1, -1, -1, dtype=np.uint32)[None, :]
    return ((ks >> shifts) & 1).astype(np.uint8)


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Pack rows of a 0/1 array (n, d) into integer codes v = binary value."""
    d = bits.shape[-1]
    weights = (1 << np.arange(d - 1, -1, -1)).astype(np.int64)
    return bits.astype(np.int64) @ weights


def canonical_codes(bits: np.ndarray) -> np.ndarray:
    """Vectorized canonical k for rows of a 0/1 array: flip rows led by 1, add 1."""
    flipped = np.where(bits[:, :1] == 1, 1 - bits, bits)
    return pack_bits(flipped) + 1
