"""Relative difference sets in the elementary abelian group (F_2^bits, XOR)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .transforms import fwht


@dataclass(frozen=True)
class RdsParams:
    m: int
    n_sub: int
    k: int
    lam: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.m, self.n_sub, self.k, self.lam)


@dataclass(frozen=True)
class Counterexample:
    element: int
    observed: int
    expected: int


@dataclass(frozen=True)
class RdsReport:
    verdict: bool
    params: Optional[RdsParams]
    forbidden: tuple[int, ...]
    counterexample: Optional[Counterexample] = None

    def to_dict(self) -> dict:
        p = self.params
        ce = self.counterexample
        return {
            "verdict": self.verdict,
            "m": p.m if p else None,
            "n": p.n_sub if p else None,
            "k": p.k if p else None,
            "lambda": p.lam if p else None,
            "forbidden": list(self.forbidden),
            "counterexample": (
                {"element": ce.element, "observed": ce.observed, "expected": ce.expected}
                if ce else None
            ),
        }


def _as_set_array(D: Iterable[int], group_bits: int) -> np.ndarray:
    arr = np.unique(np.fromiter((int(d) for d in D), dtype=np.int64))
    if arr.size == 0:
        raise ValueError("difference set candidate is empty")
    if arr[0] < 0 or arr[-1] >= 1 << group_bits:
        raise ValueError(f"element outside the group of 2^{group_bits} elements")
    return arr


def difference_counts(D: Iterable[int], group_bits: int) -> np.ndarray:
    """counts[g] = number of ordered pairs (d, d') of distinct members with d ^ d' = g.

    Computed as the autocorrelation of the indicator of D through the
    Walsh-Hadamard transform, which is exact over the integers.
    """
    arr = _as_set_array(D, group_bits)
    size = 1 << group_bits
    ind = np.zeros(size, dtype=np.int64)
    ind[arr] = 1
    spec = fwht(ind)
    counts = fwht(spec * spec) >> group_bits
    counts[0] -= arr.size
    return counts


def param_identity_check(p: RdsParams) -> bool:
    return p.k * (p.k - 1) == p.lam * p.n_sub * (p.m - 1)


def _subgroup_violation(N: np.ndarray) -> Optional[int]:
    """Smallest element of the XOR-span of N missing from N, or None if N is closed."""
    basis = []
    reduced: dict[int, int] = {}
    for v in N.tolist():
        r = v
        while r and (r.bit_length() - 1) in reduced:
            r ^= reduced[r.bit_length() - 1]
        if r:
            reduced[r.bit_length() - 1] = r
            basis.append(v)
    if N.size == 1 << len(basis):
        return None
    span = np.zeros(1, dtype=np.int64)
    for b in basis:
        span = np.concatenate((span, span ^ b))
    return int(np.setdiff1d(span, N)[0])


def _evaluate(counts: np.ndarray, N: np.ndarray, k: int) -> RdsReport:
    size = counts.size
    in_n = np.zeros(size, dtype=bool)
    in_n[N] = True
    outside = np.flatnonzero(~in_n)
    forbidden = tuple(int(g) for g in N)
    total = k * (k - 1)
    if outside.size == 0:
        lam = 0
    elif total % outside.size == 0:
        lam = total // outside.size
    else:
        lam = int(counts[outside[0]])
    expected = np.where(in_n, 0, lam)
    expected[0] = 0
    bad = np.flatnonzero(counts != expected)
    if bad.size:
        g = int(bad[0])
        return RdsReport(False, None, forbidden,
                         Counterexample(g, int(counts[g]), int(expected[g])))
    params = RdsParams(m=size // N.size, n_sub=int(N.size), k=k, lam=lam)
    return RdsReport(True, params, forbidden)


def check_rds(D: Iterable[int], N: Iterable[int], group_bits: int) -> RdsReport:
    """Check D against a supplied forbidden subgroup N."""
    arr = _as_set_array(D, group_bits)
    sub = _as_set_array(N, group_bits)
    if sub[0] != 0 or _subgroup_violation(sub) is not None:
        raise ValueError("forbidden set is not a subgroup (needs 0 and XOR-closure)")
    return _evaluate(difference_counts(arr, group_bits), sub, int(arr.size))


def detect_forbidden(D: Iterable[int], group_bits: int) -> RdsReport:
    """Take N = {0} plus every non-zero element no difference hits, then check."""
    arr = _as_set_array(D, group_bits)
    counts = difference_counts(arr, group_bits)
    zeros = np.flatnonzero(counts == 0)
    N = np.union1d([0], zeros).astype(np.int64)
    g = _subgroup_violation(N)
    if g is not None:
        return RdsReport(False, None, tuple(int(x) for x in N),
                         Counterexample(g, int(counts[g]), 0))
    return _evaluate(counts, N, int(arr.size))
