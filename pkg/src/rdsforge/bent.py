"""Boolean functions derived from APN images: Walsh spectra, bentness, quadratic forms.

Truth tables are indexed by bitmask ``u``; bit ``i - 1`` of ``u`` is the
variable ``x_i``.  Graphs of Boolean functions are embedded in F_2^(m+1)
as ``(x << 1) | F(x)``, so the forbidden subgroup is ``{0, 1}``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .field import (
    FieldSpec,
    complete_basis,
    f2_rank,
    finv,
    fmul,
    fpow,
    vmul,
    vpow,
    vtrace,
)
from .rds import RdsReport, check_rds
from .transforms import fwht

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TruthTable:
    m: int
    bits: np.ndarray

    def __post_init__(self):
        b = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if b.shape != (1 << self.m,):
            raise ValueError(f"truth table needs 2^{self.m} entries, got {b.size}")
        if b.size and b.max() > 1:
            raise ValueError("truth table entries must be 0 or 1")
        b.flags.writeable = False
        object.__setattr__(self, "bits", b)

    def __eq__(self, other):
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.m, self.bits.tobytes()))

    def tolist(self) -> list[int]:
        return self.bits.tolist()

    def to_dict(self) -> dict:
        return {"m": self.m, "bits": self.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "TruthTable":
        return cls(int(d["m"]), np.asarray(d["bits"]))


@dataclass(frozen=True)
class WalshSpectrum:
    values: np.ndarray

    def max_abs(self) -> int:
        return int(np.abs(self.values).max())


@dataclass(frozen=True, eq=False)
class QuadraticForm:
    m: int
    coeffs: np.ndarray  # coeffs[i-1, j-1] = a_ij over F_2

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.uint8) & 1
        if c.shape != (self.m, self.m):
            raise ValueError("coefficient matrix must be m x m")
        object.__setattr__(self, "coeffs", c)


def _input_bits(m: int) -> np.ndarray:
    """Row u holds (x_1, ..., x_m) for input bitmask u."""
    u = np.arange(1 << m, dtype=np.int64)
    return ((u[:, None] >> np.arange(m)) & 1).astype(np.int64)


def _span_table(basis: list[int]) -> np.ndarray:
    """x(u) = XOR of basis[i] over the set bits i of u."""
    vals = np.zeros(1, dtype=np.int64)
    for w in basis:
        vals = np.concatenate((vals, vals ^ w))
    return vals


def _check_odd_nonzero(spec: FieldSpec, a: int) -> None:
    if spec.n % 2 == 0:
        raise ValueError("family requires odd n")
    spec.check(a)
    if a == 0:
        raise ValueError("a must be non-zero")


def bent_from_apn(spec: FieldSpec, a: int) -> TruthTable:
    """F_h(x_1..x_{n-1}) = Tr(a^3 x^3) with x = sum x_i w_i over the basis completing a^-1."""
    _check_odd_nonzero(spec, a)
    omegas = complete_basis(spec, finv(spec, a))[1:]
    x = _span_table(omegas)
    bits = vtrace(spec, vmul(spec, fpow(spec, a, 3), vpow(spec, x, 3)))
    return TruthTable(spec.n - 1, bits)


def bent_from_image(spec: FieldSpec, image: Iterable[int], c: int) -> TruthTable:
    """Read a graph off a set meeting every coset of {0, c} exactly once.

    In coordinates over the basis ``[c, w_1, ..., w_{n-1}]`` every element
    of the set is ``F(x) c + sum x_i w_i``; the coefficient of ``c`` is F.
    """
    spec.check(c)
    if c == 0:
        raise ValueError("forbidden element must be non-zero")
    omegas = complete_basis(spec, c)[1:]
    x = _span_table(omegas)
    members = np.zeros(spec.order, dtype=bool)
    members[np.fromiter((int(d) for d in image), dtype=np.int64)] = True
    lo, hi = members[x], members[x ^ c]
    if not np.all(lo ^ hi):
        raise ValueError("set does not meet every coset of {0, c} exactly once")
    return TruthTable(spec.n - 1, hi.astype(np.uint8))


def walsh(F: TruthTable) -> WalshSpectrum:
    signs = 1 - 2 * F.bits.astype(np.int64)
    return WalshSpectrum(fwht(signs))


def is_bent(F: TruthTable) -> bool:
    if F.m % 2:
        log.info("bent functions need an even number of variables; m=%d", F.m)
        return False
    return bool(np.all(np.abs(walsh(F).values) == 1 << (F.m // 2)))


def distance_to_affine(F: TruthTable) -> int:
    """Hamming distance to the nearest affine function, 2^(m-1) - max|W|/2."""
    return (1 << F.m) // 2 - walsh(F).max_abs() // 2


def quad_coeffs(spec: FieldSpec, a: int) -> QuadraticForm:
    """a_ij = Tr(b_i^2 b_j) with b_i = a w_i, same basis as :func:`bent_from_apn`."""
    _check_odd_nonzero(spec, a)
    omegas = complete_basis(spec, finv(spec, a))[1:]
    b = np.array([fmul(spec, a, w) for w in omegas], dtype=np.int64)
    sq = vmul(spec, b, b)
    coeffs = vtrace(spec, vmul(spec, sq[:, None], b[None, :]))
    return QuadraticForm(spec.n - 1, coeffs)


def eval_quadratic(q: QuadraticForm) -> TruthTable:
    X = _input_bits(q.m)
    vals = ((X @ q.coeffs.astype(np.int64)) * X).sum(axis=1) & 1
    return TruthTable(q.m, vals)


def anf(F: TruthTable) -> np.ndarray:
    """Algebraic normal form coefficients by the binary Moebius transform."""
    a = F.bits.astype(np.uint8).copy()
    h = 1
    while h < a.size:
        a = a.reshape(-1, 2, h)
        a[:, 1, :] ^= a[:, 0, :]
        a = a.reshape(-1)
        h *= 2
    return a


def algebraic_degree(F: TruthTable) -> int:
    support = np.flatnonzero(anf(F))
    if support.size == 0:
        return 0
    return int(np.bitwise_count(support.astype(np.uint64)).max())


def _gram(F: TruthTable) -> list[int]:
    """Rows of B(e_i, e_j) = F(e_i+e_j) + F(e_i) + F(e_j) + F(0), as bitmasks."""
    t = F.bits
    rows = []
    for i in range(F.m):
        r = 0
        for j in range(F.m):
            if i != j:
                ei, ej = 1 << i, 1 << j
                r |= int(t[ei ^ ej] ^ t[ei] ^ t[ej] ^ t[0]) << j
        rows.append(r)
    return rows


def bilinear_rank(F: TruthTable) -> int:
    """F_2-rank of the polar bilinear form of a quadratic (or affine) F.

    Raises ValueError when some first derivative D_{e_j} F is not affine,
    i.e. when F has algebraic degree above 2.
    """
    t = F.bits
    rows = _gram(F)
    x = np.arange(1 << F.m, dtype=np.int64)
    for j in range(F.m):
        e = 1 << j
        col = 0
        for i in range(F.m):
            col |= (rows[i] >> j & 1) << i
        # D_e F(x) + D_e F(0) must equal <x, Gram column j>
        lhs = t[x ^ e] ^ t ^ (t[e] ^ t[0])
        rhs = np.bitwise_count(x & col) & 1
        if not np.array_equal(lhs, rhs.astype(lhs.dtype)):
            raise ValueError("function has algebraic degree > 2; polar form not bilinear")
    return f2_rank(rows)


def derivative_balance(F: TruthTable) -> bool:
    """Every non-zero derivative F(x+a) + F(x) is balanced."""
    t = F.bits
    size = 1 << F.m
    x = np.arange(size, dtype=np.int64)
    rows = max(1, (1 << 20) // size)
    for start in range(1, size, rows):
        a = np.arange(start, min(size, start + rows), dtype=np.int64)
        zeros = np.count_nonzero((t[x[None, :] ^ a[:, None]] ^ t[None, :]) == 0, axis=1)
        if np.any(zeros != size // 2):
            return False
    return True


def graph_set(F: TruthTable) -> np.ndarray:
    x = np.arange(1 << F.m, dtype=np.int64)
    return (x << 1) | F.bits.astype(np.int64)


def graph_rds_check(F: TruthTable) -> RdsReport:
    """The graph {(x, F(x))} checked as an RDS relative to {0} x F_2."""
    return check_rds(graph_set(F), [0, 1], F.m + 1)


@dataclass(frozen=True)
class BentSummary:
    m: int
    is_bent: bool
    degree: int
    rank: Optional[int]
    epsilon: int

    def to_dict(self) -> dict:
        return {"m": self.m, "is_bent": self.is_bent, "degree": self.degree,
                "bilinear_rank": self.rank, "epsilon": self.epsilon}


def summarize(F: TruthTable) -> BentSummary:
    deg = algebraic_degree(F)
    rank = bilinear_rank(F) if deg <= 2 else None
    return BentSummary(F.m, is_bent(F), deg, rank, int(F.bits[0]))
