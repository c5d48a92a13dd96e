"""Command-line front end.

Exit codes: 0 when every check passes, 1 for a mathematical failure (a check
failed or sampling gave up), 2 for usage errors (bad parameters, unreadable
input).  ``--format json-lines`` prints one JSON record per line followed by
a summary record; the same command, flags and seed always give byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence, TextIO

from .cohomtab import NORMAL_RANGE, bundle_numerics, ext_dims, splitting_table
from .decompose import WITNESS_FORMS, SamplingError, dimension_obstruction, sample_decomposition, verify_appendix
from .field import FieldError, FieldSpec
from .mfactory import FactorizationError, MatrixFactorization, mf_from_decomposition, verify_mf, write_mf
from .polyring import ParseError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

APPENDIX_RANGE = (2, 3, 4)


class UsageError(Exception):
    pass


class Emitter:
    """Writes records as aligned text or as JSON lines."""

    def __init__(self, fmt: str, stream: TextIO):
        self.fmt = fmt
        self.stream = stream

    @property
    def json(self) -> bool:
        return self.fmt == "json-lines"

    def record(self, doc: dict[str, Any], text: str | None = None) -> None:
        if self.json:
            self.stream.write(json.dumps(doc, sort_keys=True) + "\n")
        elif text is not None:
            self.stream.write(text + "\n")

    def text(self, line: str) -> None:
        if not self.json:
            self.stream.write(line + "\n")

    def summary(self, command: str, code: int, **extra: Any) -> int:
        doc = {"record": "summary", "command": command, "passed": code == EXIT_OK, "exit_code": code, **extra}
        self.record(doc, f"{'PASS' if code == EXIT_OK else 'FAIL'} {command} (exit {code})")
        return code


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except (FieldError, ValueError) as exc:
        raise UsageError(f"invalid field {text!r}: {exc}") from None


def _pmap(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _check_type(alpha: int, beta: int, m: int) -> None:
    if m < 1 or not (1 <= alpha <= m and 1 <= beta <= m):
        raise UsageError(f"need 1 <= alpha, beta <= m, got (alpha, beta, m) = ({alpha}, {beta}, {m})")


# verify-appendix

def _appendix_job(args: tuple[int, int, str | None]):
    return verify_appendix(*args)


def cmd_verify_appendix(ns: argparse.Namespace, out: Emitter) -> int:
    if ns.m == "all":
        ms = list(APPENDIX_RANGE)
    else:
        try:
            m = int(ns.m)
        except ValueError:
            raise UsageError(f"--m must be an integer or 'all', got {ns.m!r}") from None
        if m not in APPENDIX_RANGE:
            source, target = dimension_obstruction(m) if m >= 1 else (0, 0)
            msg = f"witness ideals exist only for m in {APPENDIX_RANGE}, got m = {m}"
            if m >= 1 and source < target:
                msg += (
                    f"; for alpha = beta = {m} the differential has rank <= source dimension {source}"
                    f" < {target} = target dimension, so no decomposition family is dominant"
                )
            raise UsageError(msg)
        ms = [m]
    char = ns.char
    if char != 0:
        try:
            FieldSpec.prime(char)
        except (FieldError, ValueError) as exc:
            raise UsageError(f"invalid characteristic {char}: {exc}") from None
        if char == 2:
            raise UsageError("characteristic 2 is excluded")
    reports = _pmap(_appendix_job, [(m, char, ns.witness) for m in ms], ns.jobs)
    total = passed = 0
    out.text(f"{'m':>2} {'alpha':>5} {'beta':>4} {'quotient':>8}  result")
    for rep in reports:
        for case in rep.cases:
            total += 1
            passed += case.passed
            doc = {
                "record": "case",
                "m": rep.m,
                "char": char,
                "witness": rep.last,
                "alpha": case.alpha,
                "beta": case.beta,
                "quotient_dim": case.quotient_dim,
                "passed": case.passed,
            }
            line = f"{rep.m:>2} {case.alpha:>5} {case.beta:>4} {case.quotient_dim:>8}  {'pass' if case.passed else 'FAIL'}"
            out.record(doc, line)
    code = EXIT_OK if passed == total else EXIT_FAIL
    out.text(f"{passed}/{total} witness ideals contain every form of degree 2m")
    return out.summary("verify-appendix", code, cases=total, cases_passed=passed)


# build-mf / verify-mf

def _report_checks(out: Emitter, report) -> None:
    for c in report.checks:
        doc = {"record": "check", "name": c.name, "passed": c.passed, "detail": c.detail}
        out.record(doc, f"  {c.name:<8} {'pass' if c.passed else 'FAIL'}  {c.detail}".rstrip())


def cmd_build_mf(ns: argparse.Namespace, out: Emitter) -> int:
    _check_type(ns.alpha, ns.beta, ns.m)
    field = _field(ns.field)
    try:
        dec = sample_decomposition(ns.alpha, ns.beta, ns.m, field, ns.seed, ns.max_retries)
    except SamplingError as exc:
        doc = {"record": "sampling_failure", "message": str(exc), "last_rank": exc.last_rank,
               "rank_bound": exc.rank_bound, "target_dim": exc.target_dim, "attempts": exc.attempts}
        out.record(doc, f"sampling failed: {exc}")
        return out.summary("build-mf", EXIT_FAIL)
    mf = mf_from_decomposition(dec, check=False)
    report = verify_mf(mf, ns.seed)
    out.record(
        {"record": "factorization", "order": mf.order, "r": mf.rank, "twists": list(mf.twists),
         "base_p": mf.base.to_str(), "field": field.label},
        f"{mf.order}x{mf.order} factorization of t^2 - b over {field.label}, twists {list(mf.twists)}",
    )
    _report_checks(out, report)
    if report.passed and ns.out:
        write_mf(mf, ns.out)
        out.text(f"wrote {ns.out}")
    return out.summary("build-mf", EXIT_OK if report.passed else EXIT_FAIL)


def cmd_verify_mf(ns: argparse.Namespace, out: Emitter) -> int:
    path = Path(ns.path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
        mf = MatrixFactorization.from_dict(doc)
    except (OSError, json.JSONDecodeError, ParseError, FactorizationError, FieldError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read factorization from {path}: {exc}") from None
    out.record(
        {"record": "factorization", "order": mf.order, "d": mf.d, "field": mf.ring.field.label},
        f"{mf.order}x{mf.order} factorization, d = {mf.d}, over {mf.ring.field.label}",
    )
    report = verify_mf(mf, ns.seed)
    _report_checks(out, report)
    return out.summary("verify-mf", EXIT_OK if report.passed else EXIT_FAIL)


# sample-decomposition

def _sample_job(args: tuple) -> dict[str, Any]:
    alpha, beta, m, field_text, seed, retries = args
    try:
        dec = sample_decomposition(alpha, beta, m, FieldSpec.parse(field_text), seed, retries)
    except SamplingError as exc:
        return {"record": "sampling_failure", "seed": seed, "message": str(exc), "last_rank": exc.last_rank,
                "rank_bound": exc.rank_bound, "target_dim": exc.target_dim}
    doc = {"record": "decomposition", "seed": seed, **dec.to_dict()}
    cert = dec.certificate
    doc["certificate"] = {"rank": cert.rank, "source_dim": cert.source_dim, "target_dim": cert.target_dim,
                          "attempts": cert.attempts}
    return doc


def cmd_sample_decomposition(ns: argparse.Namespace, out: Emitter) -> int:
    _check_type(ns.alpha, ns.beta, ns.m)
    field = _field(ns.field)
    if ns.count < 1:
        raise UsageError("--count must be positive")
    jobs = [(ns.alpha, ns.beta, ns.m, field.label, ns.seed + k, ns.max_retries) for k in range(ns.count)]
    failures = 0
    for doc in _pmap(_sample_job, jobs, ns.jobs):
        if doc["record"] == "decomposition":
            c = doc["certificate"]
            text = (f"seed {doc['seed']}: rank {c['rank']}/{c['target_dim']} after {c['attempts']} draw(s)\n"
                    + "\n".join(f"  {k} = {doc[k]}" for k in ("p_alpha", "q_alpha", "p_beta", "q_beta", "p_m", "b")))
        else:
            failures += 1
            text = f"seed {doc['seed']}: {doc['message']}"
        out.record(doc, text)
    return out.summary("sample-decomposition", EXIT_FAIL if failures else EXIT_OK, samples=ns.count, failures=failures)


# cohomology-table

def _parse_range(text: str) -> range:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"--range must look like LO:HI, got {text!r}") from None
    if hi < lo:
        raise UsageError("--range upper end is below the lower end")
    return range(lo, hi + 1)


def cmd_cohomology_table(ns: argparse.Namespace, out: Emitter) -> int:
    if ns.n < 3:
        raise UsageError("--n must be at least 3")
    _check_type(ns.alpha, ns.beta, ns.m)
    table = splitting_table(ns.n, ns.m, ns.alpha, ns.beta, _parse_range(ns.range))
    out.record({"record": "table", **table.to_dict()}, table.to_text())
    aCM = all(v == 0 for v in table.hn1_row.values())
    if ns.n == 3 and ns.m in NORMAL_RANGE:
        nums = bundle_numerics(ns.alpha, ns.beta, ns.m)
        ext = ext_dims(ns.alpha, ns.beta, ns.m)
        doc = {"record": "numerics", **nums.to_dict(), "spherical": ext.spherical, "assumption": ext.assumption}
        text = "\n".join([
            f"normal bundle: h0 = {nums.h0_normal}, h1 = {nums.h1_normal}, chi = {nums.chi_normal}",
            f"ext = ({nums.hom}, {nums.ext1}, {nums.ext2}, {nums.ext3})  [{ext.assumption}]",
            f"spherical: {'yes' if ext.spherical else 'no'}",
            f"omega_X = O_X({nums.omega_twist}), deg X = {nums.deg_X}, deg Y = {nums.deg_Y}",
        ])
        out.record(doc, text)
    else:
        out.text("normal bundle and ext dimensions: tabulated only for n = 3 and m in (2, 3, 4)")
    return out.summary("cohomology-table", EXIT_OK if aCM else EXIT_FAIL)


# parser

COMMANDS: dict[str, Callable[[argparse.Namespace, Emitter], int]] = {
    "verify-appendix": cmd_verify_appendix,
    "build-mf": cmd_build_mf,
    "verify-mf": cmd_verify_mf,
    "sample-decomposition": cmd_sample_decomposition,
    "cohomology-table": cmd_cohomology_table,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    common.add_argument("--field", default="10007", help="'q' for the rationals or an odd prime (default 10007)")
    common.add_argument("--format", choices=("text", "json-lines"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for batch work")

    parser = argparse.ArgumentParser(
        prog="ulrichmf",
        description="Matrix factorizations and rank 2 aCM bundles on double covers of projective space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-appendix", parents=[common], help="check the witness ideals for m = 2, 3, 4")
    p.add_argument("--m", default="all", help="2, 3, 4 or 'all'")
    p.add_argument("--char", type=int, default=0, help="0 for the rationals, or a prime")
    p.add_argument(
        "--witness",
        choices=WITNESS_FORMS,
        default=None,
        help="fifth generator: (x+y+z+w)^m or the all-ones form (default: linear-power in char 0, all-ones in char p)",
    )

    def typed(p: argparse.ArgumentParser) -> None:
        p.add_argument("--alpha", type=int, required=True)
        p.add_argument("--beta", type=int, required=True)
        p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("build-mf", parents=[common], help="sample a decomposition and build its 4x4 factorization")
    typed(p)
    p.add_argument("--out", help="write the factorization here as JSON")
    p.add_argument("--max-retries", type=int, default=10)

    p = sub.add_parser("verify-mf", parents=[common], help="verify a serialized factorization")
    p.add_argument("path")

    p = sub.add_parser("sample-decomposition", parents=[common], help="sample certified decompositions of b")
    typed(p)
    p.add_argument("--count", type=int, default=1, help="number of samples, with seeds seed, seed+1, ...")
    p.add_argument("--max-retries", type=int, default=10)

    p = sub.add_parser("cohomology-table", parents=[common], help="closed-form cohomology of E")
    typed(p)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--range", default="-5:5", help="twists LO:HI, inclusive; write --range=-5:5 when LO is negative")
    return parser


def main(argv: Iterable[str] | None = None, stdout: TextIO | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(None if argv is None else list(argv))
    out = Emitter(ns.format, stdout or sys.stdout)
    if ns.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return COMMANDS[ns.command](ns, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return out.summary(ns.command, EXIT_USAGE, error=str(exc))


if __name__ == "__main__":
    raise SystemExit(main())
