"""Arithmetic in GF(2^n) with elements encoded as polynomial-basis bitmasks.

Bit ``i`` of an element is the coefficient of ``x^i``.  Addition is XOR.
Scalar routines work on Python ints; the ``v*`` routines apply the same
operation elementwise to numpy arrays so whole value tables can be built
without a Python-level loop over the field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable

import numpy as np

MIN_DEGREE = 2
MAX_DEGREE = 24

ELEM_DTYPE = np.int64


@dataclass(frozen=True)
class FieldSpec:
    """Degree ``n`` and the irreducible modulus ``poly`` (bit ``n`` set)."""

    n: int
    poly: int

    def __post_init__(self):
        if not MIN_DEGREE <= self.n <= MAX_DEGREE:
            raise ValueError(f"degree {self.n} outside [{MIN_DEGREE}, {MAX_DEGREE}]")
        if self.poly >> self.n != 1:
            raise ValueError(f"poly {self.poly:#x} does not have degree {self.n}")
        if not is_irreducible(self.poly):
            raise ValueError(f"poly {self.poly:#x} is reducible over GF(2)")

    @property
    def order(self) -> int:
        return 1 << self.n

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element of GF(2^{self.n})")
        return a

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=ELEM_DTYPE)

    def to_dict(self) -> dict:
        return {"n": self.n, "poly": self.poly}

    @classmethod
    def from_dict(cls, d: dict) -> "FieldSpec":
        return cls(n=int(d["n"]), poly=int(d["poly"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __repr__(self):
        return f"FieldSpec(n={self.n}, poly={self.poly:#x})"


# --- GF(2)[x] helpers (polynomials as int bitmasks) ---------------------------

def _pmod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _pmulmod(a: int, b: int, m: int) -> int:
    dm = m.bit_length() - 1
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> dm & 1:
            a ^= m
    return r


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def is_irreducible(poly: int) -> bool:
    """Irreducibility over GF(2): gcd(x^(2^d) - x mod p, p) = 1 for all d <= n/2."""
    n = poly.bit_length() - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = 0b10
    t = x
    for _ in range(n // 2):
        t = _pmulmod(t, t, poly)
        if _pgcd(poly, t ^ x) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def make_field(n: int) -> FieldSpec:
    """Field of degree ``n`` using the smallest irreducible bitmask of that degree."""
    if not MIN_DEGREE <= n <= MAX_DEGREE:
        raise ValueError(f"degree {n} outside [{MIN_DEGREE}, {MAX_DEGREE}]")
    for poly in range(1 << n, 1 << (n + 1)):
        if is_irreducible(poly):
            return FieldSpec(n, poly)
    raise AssertionError("unreachable: every degree has an irreducible")


# --- scalar arithmetic --------------------------------------------------------

def fadd(a: int, b: int) -> int:
    return a ^ b


def fmul(spec: FieldSpec, a: int, b: int) -> int:
    return _pmulmod(a, b, spec.poly)


def _reduce_exponent(spec: FieldSpec, e: int) -> int:
    # Keeps 0^e = 0 for e > 0: a reduced exponent of 0 is replaced by 2^n - 1.
    q1 = spec.order - 1
    r = e % q1
    return q1 if r == 0 and e != 0 else r


def fpow(spec: FieldSpec, a: int, e: int) -> int:
    if a == 0:
        if e < 0:
            raise ZeroDivisionError("negative power of zero")
        return 1 if e == 0 else 0
    e = _reduce_exponent(spec, e)
    r = 1
    while e:
        if e & 1:
            r = fmul(spec, r, a)
        a = fmul(spec, a, a)
        e >>= 1
    return r


def finv(spec: FieldSpec, a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("zero has no inverse in GF(2^n)")
    return fpow(spec, a, spec.order - 2)


@lru_cache(maxsize=None)
def trace_mask(spec: FieldSpec) -> int:
    """Bitmask t with Tr(a) = parity(a & t), from Tr(x^i) on the polynomial basis."""
    mask = 0
    for i in range(spec.n):
        t, s = 0, 1 << i
        for _ in range(spec.n):
            t ^= s
            s = fmul(spec, s, s)
        assert t in (0, 1)
        mask |= t << i
    return mask


def trace(spec: FieldSpec, a: int) -> int:
    return (a & trace_mask(spec)).bit_count() & 1


def exponent_inverse(e: int, modulus: int) -> int:
    """Return d in (0, modulus) with e*d = 1 mod modulus."""
    if gcd(e, modulus) != 1:
        raise ValueError(f"exponent {e} not invertible modulo {modulus}")
    if modulus == 1:
        return 1
    return pow(e, -1, modulus)


# --- F2 linear algebra ----------------------------------------------------------

def f2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of vectors given as int bitmasks."""
    pivots: dict[int, int] = {}
    for r in rows:
        r = int(r)
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = r
                break
            r ^= pivots[top]
    return len(pivots)


def complete_basis(spec: FieldSpec, first: int) -> list[int]:
    """Greedy F2-basis of the field starting with ``first``, scanning 1, 2, 3, ..."""
    spec.check(first)
    if first == 0:
        raise ValueError("basis cannot start with zero")
    basis = [first]
    reduced = {first.bit_length() - 1: first}
    for cand in range(1, spec.order):
        if len(basis) == spec.n:
            break
        r = cand
        while r and (r.bit_length() - 1) in reduced:
            r ^= reduced[r.bit_length() - 1]
        if r:
            reduced[r.bit_length() - 1] = r
            basis.append(cand)
    return basis


# --- vectorised arithmetic ------------------------------------------------------

def vmul(spec: FieldSpec, a, b) -> np.ndarray:
    """Elementwise field product of broadcastable int arrays (or scalars)."""
    a = np.asarray(a, dtype=ELEM_DTYPE)
    b = np.asarray(b, dtype=ELEM_DTYPE)
    a, b = np.broadcast_arrays(a, b)
    a = a.copy()
    r = np.zeros(a.shape, dtype=ELEM_DTYPE)
    top = spec.order
    for i in range(spec.n):
        r ^= a * ((b >> i) & 1)
        a <<= 1
        a ^= np.where(a & top, spec.poly, 0)
    return r


def vsquare(spec: FieldSpec, a) -> np.ndarray:
    return vmul(spec, a, a)


def vpow(spec: FieldSpec, a, e: int) -> np.ndarray:
    a = np.asarray(a, dtype=ELEM_DTYPE)
    if e < 0:
        raise ValueError("vpow takes non-negative exponents")
    if e == 0:
        return np.ones_like(a)
    e = _reduce_exponent(spec, e)
    r = np.ones_like(a)
    base = a.copy()
    while e:
        if e & 1:
            r = vmul(spec, r, base)
        e >>= 1
        if e:
            base = vmul(spec, base, base)
    return r


def parity(a) -> np.ndarray:
    a = np.asarray(a, dtype=ELEM_DTYPE)
    return (np.bitwise_count(a) & 1).astype(ELEM_DTYPE)


def vtrace(spec: FieldSpec, a) -> np.ndarray:
    return parity(np.asarray(a, dtype=ELEM_DTYPE) & trace_mask(spec))


@lru_cache(maxsize=256)
def power_column(spec: FieldSpec, d: int) -> np.ndarray:
    """Read-only array holding x^d for every x in the field (cached)."""
    col = vpow(spec, spec.elements(), d)
    col.flags.writeable = False
    return col
