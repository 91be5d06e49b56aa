"""Cyclotomic equivalence of power maps and EA transforms under explicit witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .field import FieldSpec, f2_rank
from .functions import ValueTable, identity, is_linear, is_permutation


@dataclass(frozen=True)
class AffineWitness:
    """y -> linear[y] + constant with ``linear`` an F_2-linear bijection."""

    linear: ValueTable
    constant: int = 0

    def __post_init__(self):
        self.linear.spec.check(self.constant)
        if not (is_linear(self.linear) and is_permutation(self.linear)):
            raise ValueError("witness must be a linear bijection")

    @property
    def spec(self) -> FieldSpec:
        return self.linear.spec

    def apply(self, y: np.ndarray) -> np.ndarray:
        return self.linear.table[y] ^ self.constant

    @classmethod
    def identity(cls, spec: FieldSpec) -> "AffineWitness":
        return cls(identity(spec))


def cyclotomic_equivalent(k: int, l: int, n: int) -> bool:
    """x^k ~ x^l over GF(2^n): l = k 2^a or k l = 2^a modulo 2^n - 1 for some 0 <= a < n."""
    q1 = (1 << n) - 1
    if gcd(k, q1) != 1:
        raise ValueError(f"exponent {k} is not coprime with 2^{n} - 1")
    k %= q1
    l %= q1
    for a in range(n):
        p = pow(2, a, q1)
        if l == k * p % q1 or k * l % q1 == p:
            return True
    return False


def linear_table(spec: FieldSpec, columns: list[int]) -> ValueTable:
    """Table of the linear map sending basis vector 2^i to ``columns[i]``."""
    vals = np.zeros(1, dtype=np.int64)
    for c in columns:
        vals = np.concatenate((vals, vals ^ c))
    return ValueTable(spec, vals)


def random_linear_permutation(spec: FieldSpec, rng: np.random.Generator) -> ValueTable:
    """Uniform invertible matrix over F_2 by rejection sampling."""
    while True:
        cols = [int(c) for c in rng.integers(0, spec.order, size=spec.n)]
        if f2_rank(cols) == spec.n:
            return linear_table(spec, cols)


def random_affine_witness(spec: FieldSpec, rng: np.random.Generator) -> AffineWitness:
    lin = random_linear_permutation(spec, rng)
    return AffineWitness(lin, int(rng.integers(0, spec.order)))


def random_affine_function(spec: FieldSpec, rng: np.random.Generator) -> ValueTable:
    """Arbitrary (not necessarily bijective) affine table."""
    cols = [int(c) for c in rng.integers(0, spec.order, size=spec.n)]
    lin = linear_table(spec, cols)
    return ValueTable(spec, lin.table ^ int(rng.integers(0, spec.order)))


def is_affine(f: ValueTable) -> bool:
    return is_linear(ValueTable(f.spec, f.table ^ f.table[0]))


def ea_apply(F: ValueTable, A: AffineWitness, B: AffineWitness, C: ValueTable) -> ValueTable:
    """G = A o F o B + C."""
    if not (F.spec == A.spec == B.spec == C.spec):
        raise ValueError("field mismatch")
    if not is_affine(C):
        raise ValueError("C must be affine")
    x = F.spec.elements()
    return ValueTable(F.spec, A.apply(F.table[B.apply(x)]) ^ C.table)
