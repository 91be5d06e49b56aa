"""Exhaustive checks of every family theorem, one result per (theorem, n) instance."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .bent import (
    bent_from_apn,
    bent_from_image,
    bilinear_rank,
    eval_quadratic,
    graph_rds_check,
    is_bent,
    quad_coeffs,
)
from .differential import image_profile, is_apn
from .equiv import cyclotomic_equivalent
from .field import FieldSpec, exponent_inverse, finv, make_field, vpow, vtrace
from .functions import (
    Family,
    ValueTable,
    compose,
    family_kgamma,
    family_paper_cubic,
    family_paper_linear,
    family_special,
    family_x3x4,
    kgamma_outer_linear,
    named_exponent,
    power_map,
    valid_indices,
)
from .rds import check_rds, detect_forbidden
from .sweep import enumerate_params, sample_params, space_size

SEED = 0x5EED
FULL_A_MAX_N = 9
A_SAMPLES = 32
KGAMMA_MAX_N = 7
KGAMMA_FULL_LIMIT = 1 << 13
KGAMMA_SAMPLES = 512
BENT_SAMPLES = 8


@dataclass(frozen=True)
class CheckResult:
    theorem: str
    n: int
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.theorem:<14} n={self.n:<3} {self.detail}"

    def to_dict(self) -> dict:
        return {"theorem": self.theorem, "n": self.n, "passed": self.passed, "detail": self.detail}


def rds_params_for(n: int) -> tuple[int, int, int, int]:
    """(2^(n-1), 2, 2^(n-1), 2^(n-2)): the tuple every family theorem predicts on GF(2^n)."""
    return (1 << (n - 1), 2, 1 << (n - 1), 1 << (n - 2))


def a_values(n: int, seed: int = SEED) -> list[int]:
    if n <= FULL_A_MAX_N:
        return list(range(1, 1 << n))
    rng = np.random.default_rng([seed, n])
    return sorted(int(a) for a in rng.choice(np.arange(1, 1 << n), A_SAMPLES, replace=False))


def kgamma_instances(n: int, seed: int = SEED) -> list[tuple[int, int, int]]:
    if space_size(Family.KGAMMA, n) <= KGAMMA_FULL_LIMIT:
        return enumerate_params(Family.KGAMMA, n)
    return sample_params(Family.KGAMMA, n, np.random.default_rng([seed, n]), KGAMMA_SAMPLES)


def image_rds(f: ValueTable, forbidden: int) -> tuple[bool, str]:
    """2-to-1, RDS against {0, forbidden} with the predicted tuple, and detection agrees."""
    n = f.spec.n
    prof = image_profile(f)
    if prof.uniform_k != 2:
        return False, f"not 2-to-1 (uniform_k={prof.uniform_k})"
    rep = check_rds(prof.image, [0, forbidden], n)
    if not rep.verdict or rep.params.as_tuple() != rds_params_for(n):
        return False, f"rds failed: {rep.to_dict()}"
    det = detect_forbidden(prof.image, n)
    if not det.verdict or det.forbidden != (0, forbidden):
        return False, f"detected forbidden {det.forbidden} != (0, {forbidden})"
    return True, ""


def check_paper_linear(spec: FieldSpec, a_list: list[int]) -> CheckResult:
    n = spec.n
    for a in a_list:
        f = family_paper_linear(spec, a)
        ok, why = image_rds(f, finv(spec, a))
        if not ok:
            return CheckResult("paper-linear", n, False, f"a={a}: {why}")
    return CheckResult("paper-linear", n, True,
                       f"{len(a_list)} values of a, RDS {rds_params_for(n)} rel {{0, a^-1}}")


def check_paper_cubic(spec: FieldSpec, a_list: list[int]) -> CheckResult:
    n = spec.n
    cube = power_map(spec, 3)
    for a in a_list:
        f = family_paper_cubic(spec, a)
        if f != compose(family_paper_linear(spec, a), cube):
            return CheckResult("paper-cubic", n, False, f"a={a}: composition identity fails")
        if not is_apn(f):
            return CheckResult("paper-cubic", n, False, f"a={a}: not APN")
        ok, why = image_rds(f, finv(spec, a))
        if not ok:
            return CheckResult("paper-cubic", n, False, f"a={a}: {why}")
    return CheckResult("paper-cubic", n, True,
                       f"{len(a_list)} values of a, APN, RDS {rds_params_for(n)} rel {{0, a^-1}}")


def check_kgamma(spec: FieldSpec, instances: list[tuple[int, int, int]]) -> CheckResult:
    n = spec.n
    for alpha, beta, gamma in instances:
        k = family_kgamma(spec, alpha, beta, gamma)
        h = family_paper_cubic(spec, finv(spec, alpha))
        if k != compose(kgamma_outer_linear(spec, alpha, beta, gamma), h):
            return CheckResult("kgamma", n, False, f"{(alpha, beta, gamma)}: k != l o h")
        if not is_apn(k):
            return CheckResult("kgamma", n, False, f"{(alpha, beta, gamma)}: not APN")
        ok, why = image_rds(k, gamma)
        if not ok:
            return CheckResult("kgamma", n, False, f"{(alpha, beta, gamma)}: {why}")
    return CheckResult("kgamma", n, True,
                       f"{len(instances)} triples, APN, k = l o h, RDS rel {{0, gamma}}")


def check_special(spec: FieldSpec) -> CheckResult:
    n = spec.n
    f = family_special(spec)
    if not is_apn(f):
        return CheckResult("special", n, False, "not APN")
    ok, why = image_rds(f, 1)
    if not ok:
        return CheckResult("special", n, False, why)
    return CheckResult("special", n, True, f"APN, RDS {rds_params_for(n)} rel {{0, 1}}")


def check_special_trace(spec: FieldSpec) -> CheckResult:
    n = spec.n
    k = (n + 1) // 2
    inv = exponent_inverse((1 << k) - 1, (1 << n) - 1)
    if inv != ((1 << k) + 1) % ((1 << n) - 1):
        return CheckResult("special-trace", n, False, f"1/(2^k-1) = {inv} != 2^k+1")
    if not cyclotomic_equivalent((1 << k) - 1, (1 << k) + 1, n):
        return CheckResult("special-trace", n, False, "not cyclotomic-equivalent to Gold")
    x = spec.elements()
    predicted = x[vtrace(spec, vpow(spec, x, (1 << k) + 1)) == 0]
    image = image_profile(family_special(spec)).image
    if not np.array_equal(predicted, image):
        return CheckResult("special-trace", n, False, "image != {a : Tr(a^(2^k+1)) = 0}")
    return CheckResult("special-trace", n, True,
                       f"image = {{a : Tr(a^{(1 << k) + 1}) = 0}}, 1/(2^k-1) = {inv}")


def x3x4_outcome(spec: FieldSpec) -> bool:
    f = family_x3x4(spec)
    return detect_forbidden(image_profile(f).image, spec.n).verdict


def check_bent(spec: FieldSpec, a_list: list[int]) -> CheckResult:
    n = spec.n
    m = n - 1
    for a in a_list:
        F = bent_from_apn(spec, a)
        if not is_bent(F):
            return CheckResult("bent", n, False, f"a={a}: F_h not bent")
        if eval_quadratic(quad_coeffs(spec, a)) != F:
            return CheckResult("bent", n, False, f"a={a}: quadratic form mismatch")
        if bilinear_rank(F) != m:
            return CheckResult("bent", n, False, f"a={a}: bilinear rank != {m}")
        image = image_profile(family_paper_linear(spec, a)).image
        if bent_from_image(spec, image, finv(spec, a)) != F:
            return CheckResult("bent", n, False, f"a={a}: graph of image differs from F_h")
        g = graph_rds_check(F)
        if not g.verdict or g.params.as_tuple() != (1 << m, 2, 1 << m, 1 << (m - 1)):
            return CheckResult("bent", n, False, f"a={a}: graph is not a semiregular RDS")
    return CheckResult("bent", n, True, f"{len(a_list)} values of a, bent with rank {m}")


def bent_a_values(n: int, seed: int = SEED) -> list[int]:
    rng = np.random.default_rng([seed, n, 3])
    count = min(BENT_SAMPLES, (1 << n) - 1)
    return sorted(int(a) for a in rng.choice(np.arange(1, 1 << n), count, replace=False))


def check_monomials(spec: FieldSpec) -> CheckResult:
    n = spec.n
    exps = [("gold", i) for i in valid_indices(Family.GOLD, n)]
    exps += [("kasami", i) for i in valid_indices(Family.KASAMI, n)]
    exps += [("welch", None)]
    for kind, i in exps:
        d = named_exponent(kind, n, i)
        if not is_apn(power_map(spec, d)):
            return CheckResult("monomials", n, False, f"{kind} d={d} not APN")
    names = ", ".join(f"{k}{'' if i is None else f' i={i}'}" for k, i in exps)
    return CheckResult("monomials", n, True, f"APN: {names}")


def run_all(n_max: int, seed: int = SEED) -> Iterator[CheckResult]:
    """Yield results for every odd n in [3, n_max]."""
    outcomes = {}
    for n in range(3, n_max + 1, 2):
        spec = make_field(n)
        a_list = a_values(n, seed)
        yield check_paper_linear(spec, a_list)
        yield check_paper_cubic(spec, a_list)
        if n <= KGAMMA_MAX_N:
            yield check_kgamma(spec, kgamma_instances(n, seed))
        yield check_special(spec)
        yield check_special_trace(spec)
        yield check_monomials(spec)
        if n >= 5:
            yield check_bent(spec, bent_a_values(n, seed))
        outcomes[n] = x3x4_outcome(spec)
    table = ", ".join(f"n={n}:{'RDS' if v else 'no'}" for n, v in outcomes.items())
    ok = outcomes.get(3, False) and (n_max < 5 or not all(outcomes.values()))
    yield CheckResult("x3x4-note", n_max, bool(ok), table)


def run(n_max: int, emit: Callable[[CheckResult], None] = lambda r: None,
        seed: int = SEED) -> list[CheckResult]:
    results = []
    for r in run_all(n_max, seed):
        emit(r)
        results.append(r)
    return results
