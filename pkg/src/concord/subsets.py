"""Subsets of {1..d} and label sets.

Subsets are plain tuples of strictly increasing 1-based indices; the empty
set is ``()``.  All vectors indexed by collections of subsets use graded
lexicographic order: cardinality first, then lexicographic within each
cardinality, empty set first.  This is the row order of the coefficient
matrix and of every signature vector in the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidLabelError, OutOfRangeError

MIN_DIMENSION = 2


def validate_dimension(d: int) -> int:
    if not isinstance(d, (int,)) or isinstance(d, bool):
        raise OutOfRangeError(f"dimension must be an integer, got {d!r}")
    if d < MIN_DIMENSION:
        raise OutOfRangeError(f"dimension must be >= {MIN_DIMENSION}, got {d}")
    return d


def validate_subset(members, d: int) -> tuple[int, ...]:
    """Normalize ``members`` to a tuple and check it is a subset of 1..d."""
    validate_dimension(d)
    subset = tuple(int(m) for m in members)
    if any(isinstance(m, bool) for m in members):
        raise InvalidLabelError(f"subset members must be integers, got {members!r}")
    for lo, hi in zip(subset, subset[1:]):
        if lo >= hi:
            raise InvalidLabelError(f"subset must be strictly increasing, got {subset}")
    if subset and (subset[0] < 1 or subset[-1] > d):
        raise InvalidLabelError(f"subset {subset} not contained in 1..{d}")
    return subset


def subset_mask(subset: tuple[int, ...], d: int) -> int:
    """Bitmask of a subset; coordinate j occupies bit d-j (coordinate 1 is the MSB).

    This matches the binary coding of extremal copulas, where the code of
    column k is the d-digit binary representation of k-1.
    """
    mask = 0
    for m in subset:
        mask |= 1 << (d - m)
    return mask


@lru_cache(maxsize=None)
def even_power_set(d: int) -> tuple[tuple[int, ...], ...]:
    """All even-cardinality subsets of {1..d} in graded lexicographic order."""
    validate_dimension(d)
    out: list[tuple[int, ...]] = []
    for r in range(0, d + 1, 2):
        out.extend(itertools.combinations(range(1, d + 1), r))
    return tuple(out)


@lru_cache(maxsize=None)
def full_power_set(d: int) -> tuple[tuple[int, ...], ...]:
    """All subsets of {1..d} in graded lexicographic order."""
    validate_dimension(d)
    out: list[tuple[int, ...]] = []
    for r in range(0, d + 1):
        out.extend(itertools.combinations(range(1, d + 1), r))
    return tuple(out)


@lru_cache(maxsize=None)
def even_index(d: int) -> dict[tuple[int, ...], int]:
    """Position of each even subset within the even power set ordering."""
    return {s: i for i, s in enumerate(even_power_set(d))}


@lru_cache(maxsize=None)
def full_index(d: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(full_power_set(d))}


def sort_key(subset: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (len(subset), subset)


@dataclass(frozen=True)
class LabelSet:
    """A collection of subsets of {1..d} containing the empty set.

    Subsets are kept in graded lexicographic order with no duplicates.
    """

    d: int
    subsets: tuple[tuple[int, ...], ...]

    @classmethod
    def create(cls, d: int, subsets, require_even: bool = False) -> "LabelSet":
        validate_dimension(d)
        normalized = [validate_subset(s, d) for s in subsets]
        if () not in normalized:
            normalized.append(())
        ordered = tuple(sorted(set(normalized), key=sort_key))
        if len(ordered) != len(normalized):
            raise InvalidLabelError("label set contains duplicate subsets")
        if require_even:
            for s in ordered:
                if len(s) % 2:
                    raise InvalidLabelError(
                        f"label set restricted to even cardinalities, got {s}"
                    )
        return cls(d=d, subsets=ordered)

    def __len__(self) -> int:
        return len(self.subsets)

    def __iter__(self):
        return iter(self.subsets)

    def positions_in_even(self) -> list[int]:
        """Row indices of the labels within the even power set ordering."""
        idx = even_index(self.d)
        try:
            return [idx[s] for s in self.subsets]
        except KeyError as err:
            raise InvalidLabelError(f"label {err.args[0]} has odd cardinality") from None


def pairs(d: int) -> list[tuple[int, int]]:
    """All unordered pairs in lexicographic order."""
    return list(itertools.combinations(range(1, d + 1), 2))


def pair_label_set(d: int) -> LabelSet:
    """The label set {empty set} + all pairs, used for Kendall matrix queries."""
    return LabelSet.create(d, pairs(d), require_even=True)
