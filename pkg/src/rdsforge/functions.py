"""Vectorial functions GF(2^n) -> GF(2^n) as full value tables, and the families we study."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Optional

import numpy as np

from .field import (
    ELEM_DTYPE,
    FieldSpec,
    finv,
    fmul,
    fpow,
    power_column,
    trace,
    vmul,
    vtrace,
)


class ParameterError(ValueError):
    """A family constructor was given parameters outside its hypotheses."""


@dataclass(frozen=True, eq=False)
class ValueTable:
    spec: FieldSpec
    table: np.ndarray

    def __post_init__(self):
        t = np.ascontiguousarray(self.table, dtype=ELEM_DTYPE)
        if t.shape != (self.spec.order,):
            raise ValueError(f"table length {t.size} != 2^{self.spec.n}")
        if t.size and (t.min() < 0 or t.max() >= self.spec.order):
            raise ValueError("table entry outside the field")
        t.flags.writeable = False
        object.__setattr__(self, "table", t)

    def __len__(self):
        return self.spec.order

    def __getitem__(self, x):
        return self.table[x]

    def __eq__(self, other):
        if not isinstance(other, ValueTable):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.spec, self.table.tobytes()))

    def tolist(self) -> list[int]:
        return self.table.tolist()

    def to_dict(self) -> dict:
        return {"n": self.spec.n, "poly": self.spec.poly, "table": self.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "ValueTable":
        return cls(FieldSpec.from_dict(d), np.asarray(d["table"], dtype=ELEM_DTYPE))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()))

    @classmethod
    def load(cls, path) -> "ValueTable":
        return cls.from_dict(json.loads(Path(path).read_text()))


class Family(str, enum.Enum):
    PAPER_LINEAR = "paper-linear"
    PAPER_CUBIC = "paper-cubic"
    KGAMMA = "kgamma"
    SPECIAL = "special"
    X3X4 = "x3x4"
    GOLD = "gold"
    KASAMI = "kasami"
    WELCH = "welch"
    POWER = "power"


# parameters each family consumes, in canonical order
FAMILY_PARAMS: dict[Family, tuple[str, ...]] = {
    Family.PAPER_LINEAR: ("a",),
    Family.PAPER_CUBIC: ("a",),
    Family.KGAMMA: ("alpha", "beta", "gamma"),
    Family.SPECIAL: (),
    Family.X3X4: (),
    Family.GOLD: ("i",),
    Family.KASAMI: ("i",),
    Family.WELCH: (),
    Family.POWER: ("d",),
}


@dataclass(frozen=True)
class FamilyParams:
    family: Family
    a: Optional[int] = None
    alpha: Optional[int] = None
    beta: Optional[int] = None
    gamma: Optional[int] = None
    i: Optional[int] = None
    k: Optional[int] = None
    d: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        missing = [p for p in FAMILY_PARAMS[self.family] if getattr(self, p) is None]
        if missing:
            raise ParameterError(f"family {self.family.value} requires {', '.join(missing)}")

    def values(self) -> dict[str, int]:
        return {p: getattr(self, p) for p in FAMILY_PARAMS[self.family]}


def identity(spec: FieldSpec) -> ValueTable:
    return ValueTable(spec, spec.elements())


def power_map(spec: FieldSpec, d: int) -> ValueTable:
    if d < 0:
        raise ParameterError("exponent must be non-negative")
    return ValueTable(spec, power_column(spec, d))


def _require_odd(spec: FieldSpec) -> None:
    if spec.n % 2 == 0:
        raise ParameterError("family requires odd n")


def _require_nonzero(spec: FieldSpec, **elems: int) -> None:
    for name, v in elems.items():
        spec.check(v)
        if v == 0:
            raise ParameterError(f"{name} must be non-zero")


def _gated(base: np.ndarray, bits: np.ndarray, shift: int) -> np.ndarray:
    # adds `shift` exactly where the trace bit is 1, without branching
    return base ^ (bits * shift)


def family_paper_linear(spec: FieldSpec, a: int) -> ValueTable:
    """x + a^-1 Tr(a^3 x^3); 2-to-1 for odd n, collisions differ by a^-1."""
    _require_odd(spec)
    _require_nonzero(spec, a=a)
    x = spec.elements()
    bits = vtrace(spec, vmul(spec, fpow(spec, a, 3), power_column(spec, 3)))
    return ValueTable(spec, _gated(x, bits, finv(spec, a)))


def family_paper_cubic(spec: FieldSpec, a: int) -> ValueTable:
    """x^3 + a^-1 Tr(a^3 x^9)."""
    _require_odd(spec)
    _require_nonzero(spec, a=a)
    bits = vtrace(spec, vmul(spec, fpow(spec, a, 3), power_column(spec, 9)))
    return ValueTable(spec, _gated(power_column(spec, 3), bits, finv(spec, a)))


@lru_cache(maxsize=4096)
def linearized_image(spec: FieldSpec, alpha: int) -> frozenset[int]:
    """{x^2 + alpha*x : x in the field}."""
    spec.check(alpha)
    x = spec.elements()
    return frozenset(np.unique(power_column(spec, 2) ^ vmul(spec, alpha, x)).tolist())


def check_kgamma_params(spec: FieldSpec, alpha: int, beta: int, gamma: int) -> None:
    _require_odd(spec)
    _require_nonzero(spec, alpha=alpha, beta=beta, gamma=gamma)
    if gamma in linearized_image(spec, alpha):
        raise ParameterError("gamma lies in {x^2 + alpha*x}; must be outside it")
    if trace(spec, fmul(spec, beta, alpha)) != 1:
        raise ParameterError("trace(beta*alpha) must equal 1")


def family_kgamma(spec: FieldSpec, alpha: int, beta: int, gamma: int) -> ValueTable:
    """x^6 + alpha x^3 + gamma Tr(alpha^-3 x^9 + beta x^3)."""
    check_kgamma_params(spec, alpha, beta, gamma)
    x3 = power_column(spec, 3)
    x6 = power_column(spec, 6)
    x9 = power_column(spec, 9)
    inner = vmul(spec, fpow(spec, finv(spec, alpha), 3), x9) ^ vmul(spec, beta, x3)
    base = x6 ^ vmul(spec, alpha, x3)
    return ValueTable(spec, _gated(base, vtrace(spec, inner), gamma))


def kgamma_outer_linear(spec: FieldSpec, alpha: int, beta: int, gamma: int) -> ValueTable:
    """The linear permutation x^2 + alpha x + gamma Tr(beta x) that maps x^3 + alpha Tr(alpha^-3 x^9) onto k."""
    x = spec.elements()
    base = power_column(spec, 2) ^ vmul(spec, alpha, x)
    return ValueTable(spec, _gated(base, vtrace(spec, vmul(spec, beta, x)), gamma))


def special_k(spec: FieldSpec) -> int:
    _require_odd(spec)
    if spec.n < 3:
        raise ParameterError("special family needs n = 2k - 1 with k >= 2")
    return (spec.n + 1) // 2


def family_special(spec: FieldSpec) -> ValueTable:
    """x^(2^k - 1) + x^(2^k) on GF(2^(2k-1))."""
    k = special_k(spec)
    return ValueTable(spec, power_column(spec, (1 << k) - 1) ^ power_column(spec, 1 << k))


def family_x3x4(spec: FieldSpec) -> ValueTable:
    _require_odd(spec)
    return ValueTable(spec, power_column(spec, 3) ^ power_column(spec, 4))


def named_exponent(kind: str | Family, n: int, i: Optional[int] = None) -> int:
    kind = Family(kind)
    if kind is Family.WELCH:
        if n % 2 == 0:
            raise ParameterError("Welch exponent requires odd n")
        return (1 << ((n - 1) // 2)) + 3
    if kind not in (Family.GOLD, Family.KASAMI):
        raise ParameterError(f"{kind.value} is not a named exponent family")
    if i is None or not 1 <= i <= (n - 1) // 2:
        raise ParameterError(f"index i must lie in [1, {(n - 1) // 2}]")
    if gcd(i, n) != 1:
        raise ParameterError(f"gcd(i, n) = {gcd(i, n)} != 1")
    if kind is Family.GOLD:
        return (1 << i) + 1
    return (1 << (2 * i)) - (1 << i) + 1


def valid_indices(kind: str | Family, n: int) -> list[int]:
    return [i for i in range(1, (n - 1) // 2 + 1) if gcd(i, n) == 1]


def compose(f: ValueTable, g: ValueTable) -> ValueTable:
    """x -> f(g(x))."""
    if f.spec != g.spec:
        raise ValueError("field mismatch")
    return ValueTable(f.spec, f.table[g.table])


def pointwise_add(f: ValueTable, g: ValueTable) -> ValueTable:
    if f.spec != g.spec:
        raise ValueError("field mismatch")
    return ValueTable(f.spec, f.table ^ g.table)


def is_permutation(f: ValueTable) -> bool:
    return bool(np.unique(f.table).size == f.spec.order)


def is_linear(f: ValueTable) -> bool:
    # Additivity along each basis direction for every x is equivalent to full additivity.
    t = f.table
    if t[0] != 0:
        return False
    x = f.spec.elements()
    for i in range(f.spec.n):
        e = 1 << i
        if not np.array_equal(t[x ^ e], t ^ t[e]):
            return False
    return True


def build(spec: FieldSpec, params: FamilyParams) -> ValueTable:
    """Construct the value table of any supported family."""
    fam = params.family
    if fam is Family.PAPER_LINEAR:
        return family_paper_linear(spec, params.a)
    if fam is Family.PAPER_CUBIC:
        return family_paper_cubic(spec, params.a)
    if fam is Family.KGAMMA:
        return family_kgamma(spec, params.alpha, params.beta, params.gamma)
    if fam is Family.SPECIAL:
        return family_special(spec)
    if fam is Family.X3X4:
        return family_x3x4(spec)
    if fam in (Family.GOLD, Family.KASAMI, Family.WELCH):
        return power_map(spec, named_exponent(fam, spec.n, params.i))
    if fam is Family.POWER:
        return power_map(spec, params.d)
    raise ParameterError(f"unknown family {fam}")
