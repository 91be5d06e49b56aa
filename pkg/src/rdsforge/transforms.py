"""Integer Walsh-Hadamard butterfly shared by the difference-set and Boolean code."""

import numpy as np


def fwht(v) -> np.ndarray:
    """Unnormalised transform: out[u] = sum_x (-1)^popcount(u & x) v[x], exact in int64.

    Intermediate values are bounded by sum |v|, so int64 is exact for every
    input used here (|v| sums stay below 2^62).
    """
    a = np.array(v, dtype=np.int64)
    size = a.size
    if size & (size - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < size:
        a = a.reshape(-1, 2, h)
        lo, hi = a[:, 0, :], a[:, 1, :]
        a = np.stack((lo + hi, lo - hi), axis=1)
        h *= 2
    return a.reshape(size)
