"""Parameter sweeps over function families, persisted as resumable JSONL.

Each grid point is an independent unit of work.  Records are appended to
the output file as they finish, and the file is rewritten in canonical
order ``(n, parameter tuple)`` once the sweep completes, so the worker
count never changes the result.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .bent import bent_from_image, is_bent
from .differential import image_profile, is_apn
from .field import fmul, make_field, trace
from .functions import (
    FAMILY_PARAMS,
    Family,
    FamilyParams,
    ParameterError,
    build,
    check_kgamma_params,
    linearized_image,
    valid_indices,
)
from .rds import detect_forbidden

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
CHECKS = ("two_to_one", "apn", "rds", "bent")
FULL_ENUMERATION_LIMIT = 1 << 12
DEFAULT_SAMPLE_COUNT = 64

ODD_ONLY = {Family.PAPER_LINEAR, Family.PAPER_CUBIC, Family.KGAMMA,
            Family.SPECIAL, Family.X3X4, Family.WELCH}


class IncompatibleResume(ValueError):
    """The existing output was produced by a different job signature."""


def normalize_check(name: str) -> str:
    c = name.strip().lower().replace("-", "_")
    if c not in CHECKS:
        raise ValueError(f"unknown check {name!r}; expected one of {', '.join(CHECKS)}")
    return c


@dataclass
class SweepJob:
    family: Family
    n_values: list[int]
    checks: list[str] = field(default_factory=lambda: list(CHECKS))
    output: Optional[str] = None
    params: Optional[dict[str, list[int]]] = None
    sample_seed: Optional[int] = None
    sample_count: int = DEFAULT_SAMPLE_COUNT

    def __post_init__(self):
        self.family = Family(self.family)
        self.checks = [normalize_check(c) for c in self.checks]
        self.n_values = [int(n) for n in self.n_values]
        for n in self.n_values:
            if n < 2 or n > 24:
                raise ValueError(f"n={n} outside [2, 24]")
            if self.family in ODD_ONLY and n % 2 == 0:
                raise ValueError(f"family {self.family.value} requires odd n, got {n}")
            if self.family is Family.SPECIAL and n < 3:
                raise ValueError("special family needs n >= 3")
        names = FAMILY_PARAMS[self.family]
        if self.params is not None:
            extra = set(self.params) - set(names)
            missing = set(names) - set(self.params)
            if extra or missing:
                raise ValueError(f"params must give exactly {list(names)}")
        elif self.family is Family.POWER:
            raise ValueError("family power needs explicit params {'d': [...]}")

    @property
    def signature(self) -> dict:
        return {"family": self.family.value, "checks": sorted(self.checks),
                "schema_version": SCHEMA_VERSION}

    def to_dict(self) -> dict:
        d = {"family": self.family.value, "n_values": self.n_values,
             "checks": self.checks, "output": self.output}
        if self.params is not None:
            d["params"] = self.params
        if self.sample_seed is not None:
            d["sample"] = {"seed": self.sample_seed, "count": self.sample_count}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SweepJob":
        sample = d.get("sample") or {}
        return cls(
            family=d["family"],
            n_values=d.get("n_values", []),
            checks=d.get("checks", list(CHECKS)),
            output=d.get("output"),
            params=d.get("params"),
            sample_seed=sample.get("seed"),
            sample_count=int(sample.get("count", DEFAULT_SAMPLE_COUNT)),
        )

    @classmethod
    def load(cls, path) -> "SweepJob":
        return cls.from_dict(json.loads(Path(path).read_text()))


# --- grid planning ------------------------------------------------------------

def space_size(family: Family, n: int) -> int:
    q = 1 << n
    if family in (Family.PAPER_LINEAR, Family.PAPER_CUBIC):
        return q - 1
    if family is Family.KGAMMA:
        return (q - 1) * (q // 2) * (q // 2)
    if family in (Family.GOLD, Family.KASAMI):
        return len(valid_indices(family, n))
    return 1


def enumerate_params(family: Family, n: int) -> list[tuple[int, ...]]:
    spec = make_field(n)
    q = spec.order
    if family in (Family.PAPER_LINEAR, Family.PAPER_CUBIC):
        return [(a,) for a in range(1, q)]
    if family is Family.KGAMMA:
        out = []
        for alpha in range(1, q):
            img = linearized_image(spec, alpha)
            betas = [b for b in range(1, q) if trace(spec, fmul(spec, b, alpha)) == 1]
            gammas = [g for g in range(1, q) if g not in img]
            out.extend((alpha, b, g) for b in betas for g in gammas)
        return out
    if family in (Family.GOLD, Family.KASAMI):
        return [(i,) for i in valid_indices(family, n)]
    return [()]


def sample_params(family: Family, n: int, rng: np.random.Generator, count: int) -> list[tuple[int, ...]]:
    spec = make_field(n)
    q = spec.order
    arity = len(FAMILY_PARAMS[family])
    count = min(count, space_size(family, n))
    picked: set[tuple[int, ...]] = set()
    while len(picked) < count:
        cand = tuple(int(v) for v in rng.integers(1, q, size=arity))
        if family is Family.KGAMMA:
            try:
                check_kgamma_params(spec, *cand)
            except ParameterError:
                continue
        picked.add(cand)
    return sorted(picked)


def plan_grid(job: SweepJob) -> list[tuple[int, tuple[int, ...]]]:
    """Canonically ordered (n, parameter tuple) points of the job."""
    points = []
    names = FAMILY_PARAMS[job.family]
    for n in sorted(set(job.n_values)):
        if job.params is not None:
            combos = sorted(set(itertools.product(*(job.params[p] for p in names))))
        elif space_size(job.family, n) <= FULL_ENUMERATION_LIMIT:
            combos = enumerate_params(job.family, n)
        else:
            if job.sample_seed is None:
                raise ValueError(
                    f"parameter space at n={n} exceeds {FULL_ENUMERATION_LIMIT}; "
                    "job needs sample.seed")
            rng = np.random.default_rng([job.sample_seed, n])
            combos = sample_params(job.family, n, rng, job.sample_count)
        points.extend((n, tuple(int(v) for v in c)) for c in combos)
    return points


# --- evaluation -----------------------------------------------------------------

def evaluate_point(family: str, n: int, values: tuple[int, ...], checks: list[str]) -> dict:
    """Compute one SweepRecord as a plain dict (safe to ship across processes)."""
    start = time.perf_counter()
    fam = Family(family)
    spec = make_field(n)
    params = dict(zip(FAMILY_PARAMS[fam], values))
    f = build(spec, FamilyParams(fam, **params))
    verdicts: dict[str, bool] = {}
    rds_params = forbidden = None
    report = None
    prof = image_profile(f)
    for c in CHECKS:
        if c not in checks:
            continue
        if c == "two_to_one":
            verdicts[c] = prof.uniform_k == 2
        elif c == "apn":
            verdicts[c] = is_apn(f)
        elif c in ("rds", "bent"):
            if report is None:
                report = detect_forbidden(prof.image, n)
            if c == "rds":
                verdicts[c] = report.verdict
                if report.verdict:
                    rds_params = dict(zip(("m", "n", "k", "lambda"), report.params.as_tuple()))
                    forbidden = list(report.forbidden)
            else:
                ok = report.verdict and len(report.forbidden) == 2
                if ok:
                    F = bent_from_image(spec, prof.image, report.forbidden[1])
                    ok = is_bent(F)
                verdicts[c] = bool(ok)
    return {
        "schema_version": SCHEMA_VERSION,
        "family": fam.value,
        "n": n,
        "poly": spec.poly,
        "params": params,
        "verdicts": verdicts,
        "rds_params": rds_params,
        "forbidden": forbidden,
        "elapsed": round(time.perf_counter() - start, 6),
    }


def record_key(rec: dict) -> tuple[int, tuple[int, ...]]:
    fam = Family(rec["family"])
    return rec["n"], tuple(rec["params"][p] for p in FAMILY_PARAMS[fam])


def dumps_record(rec: dict, canonical: bool = False) -> str:
    if canonical:
        rec = {k: v for k, v in rec.items() if k != "elapsed"}
    return json.dumps(rec)


def canonical_jsonl(records: list[dict]) -> str:
    """Records in canonical order without timing, for byte-level comparison."""
    return "".join(dumps_record(r, canonical=True) + "\n"
                   for r in sorted(records, key=record_key))


def read_records(path) -> list[dict]:
    """Read JSONL records, dropping a trailing partially written line."""
    records = []
    lines = Path(path).read_text().splitlines()
    for i, line in enumerate(lines):
        if not line.strip():
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError:
            if i == len(lines) - 1:
                log.warning("dropping truncated final line in %s", path)
                continue
            raise
    return records


def _write_sorted(path: Path, records: list[dict]) -> None:
    text = "".join(dumps_record(r) + "\n" for r in sorted(records, key=record_key))
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _compute(job: SweepJob, todo, out: Optional[Path], jobs: int,
             progress: Optional[Callable[[int, int], None]]) -> list[dict]:
    results: list[dict] = []
    sink = out.open("a") if out is not None else None
    try:
        def done(rec):
            results.append(rec)
            if sink is not None:
                sink.write(dumps_record(rec) + "\n")
                sink.flush()
            if progress is not None:
                progress(len(results), len(todo))

        if jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futs = [pool.submit(evaluate_point, job.family.value, n, vals, job.checks)
                        for n, vals in todo]
                for fut in as_completed(futs):
                    done(fut.result())
        else:
            for n, vals in todo:
                done(evaluate_point(job.family.value, n, vals, job.checks))
    finally:
        if sink is not None:
            sink.close()
    return results


def _output_path(job: SweepJob, path) -> Optional[Path]:
    p = path if path is not None else job.output
    return Path(p) if p is not None else None


def run_sweep(job: SweepJob, jobs: int = 1, output=None,
              progress: Optional[Callable[[int, int], None]] = None) -> list[dict]:
    """Evaluate every grid point of ``job`` from scratch."""
    todo = plan_grid(job)
    out = _output_path(job, output)
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text("")
    records = _compute(job, todo, out, jobs, progress)
    records.sort(key=record_key)
    if out is not None:
        _write_sorted(out, records)
    return records


def _check_signature(job: SweepJob, rec: dict) -> None:
    sig = job.signature
    got = {"family": rec.get("family"), "checks": sorted(rec.get("verdicts", {})),
           "schema_version": rec.get("schema_version")}
    if got != sig:
        raise IncompatibleResume(f"incompatible resume: record {got} vs job {sig}")


def resume_sweep(job: SweepJob, existing_path=None, jobs: int = 1,
                 progress: Optional[Callable[[int, int], None]] = None) -> list[dict]:
    """Finish a partially written sweep, recomputing only missing grid points."""
    out = _output_path(job, existing_path)
    if out is None:
        raise ValueError("resume needs an output path")
    if not out.exists():
        return run_sweep(job, jobs=jobs, output=out, progress=progress)
    grid = plan_grid(job)
    wanted = set(grid)
    existing: dict[tuple, dict] = {}
    for rec in read_records(out):
        _check_signature(job, rec)
        key = record_key(rec)
        if key in wanted:
            existing.setdefault(key, rec)
    todo = [p for p in grid if p not in existing]
    before = out.read_text()
    if todo:
        # drop any torn line before appending
        _write_sorted(out, list(existing.values()))
        before = None
    new = _compute(job, todo, out, jobs, progress)
    records = sorted(list(existing.values()) + new, key=record_key)
    text = "".join(dumps_record(r) + "\n" for r in records)
    if before != text:
        _write_sorted(out, records)
    return records
