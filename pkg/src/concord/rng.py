"""Seeded, counter-based random number generation.

Philox is a counter-based generator: output depends only on (key, counter),
so batch b of a run seeded with s can be produced independently of batches
0..b-1 by keying the stream with (s, b).  Every sampling routine in the
package takes an explicit 64-bit seed and derives its streams here, which
makes results reproducible regardless of how batches are scheduled.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

_MASK64 = (1 << 64) - 1


def make_generator(seed: int, stream: int = 0) -> np.random.Generator:
    """Generator for (seed, stream); distinct streams are independent."""
    key = np.array([int(seed) & _MASK64, int(stream) & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def batch_sizes(total: int, batch_size: int) -> Iterator[tuple[int, int]]:
    """(stream_index, size) pairs covering `total` in fixed-size batches."""
    if total < 0:
        raise ValueError(f"total must be >= 0, got {total}")
    if batch_size < 1:
        raise ValueError(f"batch_size must be >= 1, got {batch_size}")
    index = 0
    done = 0
    while done < total:
        size = min(batch_size, total - done)
        yield index, size
        done += size
        index += 1
