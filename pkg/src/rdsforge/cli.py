"""Command-line front end: ``rdsforge analyze | verify-paper | sweep``.

Field elements on the command line are integers (decimal, or hex with a
``0x`` prefix) in the polynomial-basis bitmask encoding.

Exit codes: 0 ran fine (whatever the verdicts), 1 verification failure or
I/O error, 2 invalid arguments or parameters.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import verify
from .bent import bent_from_image, summarize
from .differential import diff_spectrum, image_profile, is_apn
from .field import FieldSpec, make_field
from .functions import FAMILY_PARAMS, Family, FamilyParams, ValueTable, build
from .rds import detect_forbidden
from .sweep import (
    SCHEMA_VERSION,
    IncompatibleResume,
    SweepJob,
    normalize_check,
    resume_sweep,
    run_sweep,
)

LARGE_N = 16
VERIFY_N_CAP = 13


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("RDSFORGE_THREADS", "1")))
    except ValueError:
        return 1


# --- analyze --------------------------------------------------------------------

def _load_function(args) -> tuple[ValueTable, dict]:
    if args.table:
        if args.family:
            raise UsageError("--table and --family are mutually exclusive")
        try:
            f = ValueTable.load(args.table)
        except (OSError, KeyError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read table {args.table}: {e}")
        return f, {"family": "custom", "source": str(args.table)}
    if not args.family or args.n is None:
        raise UsageError("need --n and --family, or --table")
    spec = FieldSpec(args.n, args.poly) if args.poly else make_field(args.n)
    fam = Family(args.family)
    given = {p: getattr(args, p) for p in ("a", "alpha", "beta", "gamma", "i", "d")
             if getattr(args, p) is not None}
    f = build(spec, FamilyParams(fam, **given))
    used = {p: given[p] for p in FAMILY_PARAMS[fam]}
    return f, {"family": fam.value, "params": used}


def analyze(f: ValueTable, checks: list[str], descriptor: dict,
            spectrum: bool = False, jobs: int = 1) -> dict:
    """Build the analysis report; sections appear only for requested checks."""
    spec = f.spec
    report: dict = {
        "schema_version": SCHEMA_VERSION,
        "function": descriptor,
        "field": spec.to_dict(),
        "verdicts": {},
    }
    prof = image_profile(f)
    if "two_to_one" in checks:
        report["verdicts"]["two_to_one"] = prof.uniform_k == 2
        report["image_profile"] = prof.to_dict()
    if "apn" in checks:
        if spectrum:
            ds = diff_spectrum(f, jobs=jobs)
            report["verdicts"]["apn"] = ds.max_delta == 2
            report["diff_spectrum"] = ds.to_dict()
        else:
            ok = is_apn(f)
            report["verdicts"]["apn"] = ok
            report["diff_spectrum"] = {"max_delta": 2 if ok else None,
                                       "histogram": None}
    rep = None
    if "rds" in checks or "bent" in checks:
        rep = detect_forbidden(prof.image, spec.n)
    if "rds" in checks:
        report["verdicts"]["rds"] = rep.verdict
        report["rds"] = rep.to_dict()
    if "bent" in checks:
        if rep.verdict and len(rep.forbidden) == 2:
            s = summarize(bent_from_image(spec, prof.image, rep.forbidden[1]))
            report["verdicts"]["bent"] = s.is_bent
            report["bent"] = s.to_dict()
        else:
            report["verdicts"]["bent"] = False
            report["bent"] = None
    return report


def _human(report: dict) -> str:
    fn = report["function"]
    head = fn["family"] + "".join(f" {k}={v}" for k, v in fn.get("params", {}).items())
    fld = report["field"]
    lines = [f"function: {head}", f"field: GF(2^{fld['n']}) poly={fld['poly']:#x}"]
    for k, v in report["verdicts"].items():
        lines.append(f"{k:<11} {'yes' if v else 'no'}")
    if "image_profile" in report:
        p = report["image_profile"]
        lines.append(f"image size {p['image_size']}, uniform_k={p['uniform_k']}")
    if report.get("diff_spectrum") and report["diff_spectrum"]["histogram"]:
        lines.append(f"delta histogram {report['diff_spectrum']['histogram']}")
    r = report.get("rds")
    if r:
        if r["verdict"]:
            lines.append(f"rds ({r['m']}, {r['n']}, {r['k']}, {r['lambda']}) "
                         f"forbidden {r['forbidden']}")
        else:
            lines.append(f"rds counterexample {r['counterexample']}")
    b = report.get("bent")
    if b:
        lines.append(f"bent m={b['m']} degree={b['degree']} rank={b['bilinear_rank']} "
                     f"epsilon={b['epsilon']}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    f, descriptor = _load_function(args)
    checks = [normalize_check(c) for c in args.checks.split(",") if c.strip()]
    if "apn" in checks and f.spec.n > LARGE_N and not args.allow_large:
        raise UsageError(f"APN check at n > {LARGE_N} needs --allow-large")
    report = analyze(f, checks, descriptor, spectrum=args.spectrum, jobs=args.jobs)
    text = json.dumps(report, indent=2) if args.json else _human(report)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0


# --- verify-paper -----------------------------------------------------------------

def cmd_verify(args) -> int:
    if args.n_max < 3:
        raise UsageError("no odd n in range: --n-max must be at least 3")
    if args.n_max > VERIFY_N_CAP:
        raise UsageError(f"--n-max capped at {VERIFY_N_CAP}")
    emit = (lambda r: None) if args.json else (lambda r: print(r.line(), flush=True))
    results = verify.run(args.n_max, emit=emit, seed=args.seed)
    ok = all(r.passed for r in results)
    if args.json:
        print(json.dumps({"schema_version": SCHEMA_VERSION, "n_max": args.n_max,
                          "passed": ok, "results": [r.to_dict() for r in results]},
                         indent=2))
    else:
        print(f"{sum(r.passed for r in results)}/{len(results)} instances passed")
    return 0 if ok else 1


# --- sweep ------------------------------------------------------------------------

def cmd_sweep(args) -> int:
    try:
        job = SweepJob.load(args.job)
    except OSError as e:
        raise UsageError(f"cannot read job file: {e}")
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        raise UsageError(f"invalid job file: {e}")
    out = args.out or job.output
    if out is None:
        raise UsageError("job has no output path; pass --out")

    def progress(done, total):
        print(f"\r{done}/{total} grid points", end="", file=sys.stderr, flush=True)

    try:
        if args.resume:
            recs = resume_sweep(job, out, jobs=args.jobs, progress=progress)
        else:
            recs = run_sweep(job, jobs=args.jobs, output=out, progress=progress)
    except IncompatibleResume as e:
        raise UsageError(str(e))
    except OSError as e:
        print(f"\nerror: {e}", file=sys.stderr)
        return 1
    print(f"\n{len(recs)} records in {out}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rdsforge", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyse one function")
    a.add_argument("--n", type=int)
    a.add_argument("--poly", type=_int, help="modulus bitmask (default: smallest irreducible)")
    a.add_argument("--family", choices=[f.value for f in Family])
    for p in ("a", "alpha", "beta", "gamma", "d", "i"):
        a.add_argument(f"--{p}", type=_int)
    a.add_argument("--table", help="JSON value table {n, poly, table}")
    a.add_argument("--checks", default="two-to-one,apn,rds,bent")
    a.add_argument("--spectrum", action="store_true", help="full delta histogram")
    a.add_argument("--json", action="store_true")
    a.add_argument("--out")
    a.add_argument("--jobs", type=int, default=_default_jobs())
    a.add_argument("--allow-large", action="store_true")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify-paper", help="check every family theorem up to n-max")
    v.add_argument("--n-max", type=int, default=7)
    v.add_argument("--seed", type=int, default=verify.SEED)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="run a JSON-described parameter sweep")
    s.add_argument("--job", required=True)
    s.add_argument("--out")
    s.add_argument("--resume", action="store_true")
    s.add_argument("--jobs", type=int, default=_default_jobs())
    s.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
