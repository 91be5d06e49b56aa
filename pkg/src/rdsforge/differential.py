"""Differential uniformity and image multiplicity of value tables."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .functions import ValueTable

# rows of the (a, x) derivative matrix handled per vectorised block
_BLOCK_CELLS = 1 << 20


@dataclass(frozen=True)
class DiffSpectrum:
    max_delta: int
    histogram: dict[int, int]  # delta value -> number of (a, b) pairs with a != 0

    def to_dict(self) -> dict:
        return {
            "max_delta": self.max_delta,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


@dataclass(frozen=True)
class ImageProfile:
    image: np.ndarray  # sorted distinct values
    counts: np.ndarray  # preimage count of each image value
    uniform_k: Optional[int]

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(zip(self.image.tolist(), self.counts.tolist()))

    def to_dict(self) -> dict:
        return {
            "image_size": int(self.image.size),
            "uniform_k": self.uniform_k,
            "multiplicity_histogram": {
                str(k): v for k, v in sorted(Counter(self.counts.tolist()).items())
            },
        }


def delta_count(f: ValueTable, a: int, b: int) -> int:
    """Number of x with f(x + a) + f(x) = b."""
    f.spec.check(a)
    f.spec.check(b)
    if a == 0:
        raise ValueError("delta_count needs a non-zero shift a")
    x = f.spec.elements()
    return int(np.count_nonzero((f.table[x ^ a] ^ f.table) == b))


@lru_cache(maxsize=None)
def _half_blocks(order: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Blocks of shifts a sharing their top bit t, with the x that have bit t clear.

    x and x ^ a give the same derivative value, so visiting only x with bit t
    clear counts every solution pair once: half_counts = delta / 2.
    """
    x = np.arange(order, dtype=np.int64)
    out = []
    t = 0
    while (1 << t) < order:
        lo = x[(x >> t) & 1 == 0]
        shifts = np.arange(1 << t, 2 << t, dtype=np.int64)
        rows = max(1, _BLOCK_CELLS // lo.size)
        out.extend((shifts[i:i + rows], lo) for i in range(0, shifts.size, rows))
        t += 1
    return out


def _half_counts(t: np.ndarray, shifts: np.ndarray, xs: np.ndarray) -> np.ndarray:
    # result[r, b] = delta(shifts[r], b) / 2
    size = t.size
    derived = t[xs[None, :] ^ shifts[:, None]] ^ t[xs][None, :]
    derived += (np.arange(shifts.size, dtype=np.int64) * size)[:, None]
    return np.bincount(derived.ravel(), minlength=shifts.size * size).reshape(shifts.size, size)


def diff_spectrum(f: ValueTable, jobs: int = 1) -> DiffSpectrum:
    """Full delta histogram over all a != 0 and all b."""
    t = f.table

    def work(block):
        c = 2 * _half_counts(t, *block)
        return np.bincount(c.ravel(), minlength=f.spec.order + 1)

    blocks = _half_blocks(f.spec.order)
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            parts = list(pool.map(work, blocks))
    else:
        parts = [work(b) for b in blocks]
    hist = np.sum(parts, axis=0)
    nz = np.flatnonzero(hist)
    return DiffSpectrum(
        max_delta=int(nz.max()),
        histogram={int(d): int(hist[d]) for d in nz},
    )


def max_delta(f: ValueTable, stop_above: Optional[int] = None) -> int:
    """Differential uniformity; returns early once it exceeds ``stop_above``."""
    best = 0
    for shifts, xs in _half_blocks(f.spec.order):
        best = max(best, 2 * int(_half_counts(f.table, shifts, xs).max()))
        if stop_above is not None and best > stop_above:
            break
    return best


def is_apn(f: ValueTable) -> bool:
    return max_delta(f, stop_above=2) == 2


def image_profile(f: ValueTable) -> ImageProfile:
    image, counts = np.unique(f.table, return_counts=True)
    uniform = int(counts[0]) if np.all(counts == counts[0]) else None
    return ImageProfile(image=image, counts=counts, uniform_k=uniform)


def is_two_to_one(f: ValueTable) -> bool:
    return image_profile(f).uniform_k == 2
