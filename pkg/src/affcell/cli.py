"""Command-line interface.

Exit codes: 0 verdict computed (whatever the answer), 1 syntax or I/O
error, 2 semantic validation failure, 3 Groebner budget exceeded.
The budget is read from ``AFFCELL_MAX_PAIRS`` / ``AFFCELL_MAX_POLYS``.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from .cellular import asymptotic_algebra, validate_spec
from .decide import CHECKS, Answer, check_semisimple, full_report
from .groebner import BudgetExceeded
from .oracle import RealizationError, build_realization, dickson_radical, random_instance
from .quotient import INFINITE
from .specfile import SpecSyntaxError, load_spec

EXIT_OK, EXIT_SYNTAX, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3

PROPERTY_ALIASES = {
    "artinian": "artinian",
    "semisimple": "semisimple",
    "jacobson": "jacobson_semisimple",
    "semiprime": "semiprime",
    "separable": "separable",
}


class _Invalid(Exception):
    pass


def _load(path):
    spec = load_spec(path)
    report = validate_spec(spec)
    if not report.valid:
        raise _Invalid(str(report))
    return spec


def oracle_summary(spec) -> dict | None:
    """Oracle cross-check for specs the realization supports, else ``None``."""
    if not spec.field.is_rational:
        return None
    try:
        alg = build_realization(spec)
    except RealizationError as e:
        return {"available": False, "reason": str(e)}
    rad = dickson_radical(alg)
    criteria = check_semisimple(spec.with_top_layer()).answer is Answer.YES
    return {
        "available": True,
        "realizationDim": alg.dim,
        "radicalDim": len(rad),
        "semisimple": not rad,
        "criteriaSemisimple": criteria,
        "agrees": criteria == (not rad),
    }


def _dump(obj, out):
    json.dump(obj, out, indent=2, sort_keys=False)
    out.write("\n")


def cmd_validate(args, out):
    spec = load_spec(args.file)
    report = validate_spec(spec)
    if args.json:
        _dump({"valid": report.valid, "issues": [vars(i) for i in report.issues]}, out)
    else:
        print(report, file=out)
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_check(args, out):
    spec = _load(args.file)
    prop = PROPERTY_ALIASES[args.property]
    verdict = CHECKS[prop](spec)
    if args.json:
        data = verdict.to_json()
        oracle = oracle_summary(spec)
        if oracle is not None:
            data["oracle"] = oracle
        _dump(data, out)
    else:
        print(verdict.answer.value, file=out)
        print(f"{verdict.property}: {verdict.reason}", file=out)
        for f in verdict.layers:
            d = f.to_json()
            print(f"  layer {d['index']}: dimK={d['dimK']} det={d['detPhi']}"
                  + (f" unit={d['detPhiUnit']}" if d["detPhiUnit"] is not None else ""), file=out)
    return EXIT_OK


def cmd_asymptotic(args, out):
    spec = _load(args.file)
    asym = asymptotic_algebra(spec)
    if args.json:
        _dump({"description": asym.describe(),
               "dimK": "infinite" if asym.dim == INFINITE else asym.dim}, out)
    else:
        print(asym.describe(), file=out)
        print(f"dimK = {'infinite' if asym.dim == INFINITE else asym.dim}", file=out)
    return EXIT_OK


def cmd_radical(args, out):
    spec = _load(args.file)
    if not spec.field.is_rational:
        print("the radical oracle works over Q only", file=sys.stderr)
        return EXIT_INVALID
    try:
        summary = oracle_summary(spec)
    except RealizationError as e:
        print(str(e), file=sys.stderr)
        return EXIT_INVALID
    if not summary["available"]:
        print(summary["reason"], file=sys.stderr)
        return EXIT_INVALID
    if args.json:
        _dump({"oracle": summary}, out)
    else:
        print(f"realization dimension {summary['realizationDim']}, "
              f"radical dimension {summary['radicalDim']}", file=out)
        print("semisimple" if summary["semisimple"] else "not semisimple", file=out)
        print("criteria agree" if summary["agrees"] else "criteria DISAGREE", file=out)
    return EXIT_OK


def corpus_seeds(seed: int, count: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(32) for _ in range(count)]


def cmd_corpus(args, out):
    agree = 0
    mismatches = []
    for s in corpus_seeds(args.seed, args.count):
        spec = random_instance(s)
        summary = oracle_summary(spec)
        if summary["agrees"]:
            agree += 1
        else:
            mismatches.append(s)
    if args.json:
        _dump({"seed": args.seed, "count": args.count, "agreements": agree, "mismatchSeeds": mismatches}, out)
    else:
        print(f"{agree}/{args.count} oracle agreements", file=out)
        for s in mismatches:
            print(f"  mismatch at instance seed {s}", file=out)
    return EXIT_OK


def cmd_report(args, out):
    spec = _load(args.file)
    report = full_report(spec)
    data = report.to_json()
    oracle = oracle_summary(spec)
    if oracle is not None:
        data["oracle"] = oracle
    if args.json:
        _dump(data, out)
    else:
        for v in report.verdicts.values():
            print(v, file=out)
        print(f"asymptotic algebra: {data['asymptotic']['description']}", file=out)
        if oracle is not None and oracle.get("available"):
            print(f"oracle: radical dimension {oracle['radicalDim']}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="affcell", description="Decide properties of affine cellular algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check layer invariants")
    v.add_argument("file")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("check", help="decide one property")
    c.add_argument("property", choices=sorted(PROPERTY_ALIASES))
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    a = sub.add_parser("asymptotic", help="describe the asymptotic algebra")
    a.add_argument("file")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_asymptotic)

    r = sub.add_parser("radical", help="radical of the finite-dimensional realization")
    r.add_argument("file")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_radical)

    k = sub.add_parser("corpus", help="random specs cross-checked against the oracle")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--count", type=int, default=100)
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_corpus)

    rep = sub.add_parser("report", help="all verdicts with certificates")
    rep.add_argument("file")
    rep.add_argument("--json", action="store_true")
    rep.set_defaults(func=cmd_report)
    return p


def run_command(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_SYNTAX
    try:
        return args.func(args, out)
    except (OSError, SpecSyntaxError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SYNTAX
    except _Invalid as e:
        print(f"invalid spec:\n{e}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as e:
        print(f"resource budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as e:
        # semantic problems surfacing while building layers, e.g. a bad budget setting
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


def main():
    sys.exit(run_command())
