"""Command-line entry point: ``artinian-forms <command> ...``."""

import argparse
import json
import sys

from . import dsl
from .corpus import run_corpus
from .hochschild import HochschildError, hh
from .algebra import Algebra, AlgebraError
from .randomized import CHECKS, run_properties

EXIT_OK, EXIT_DIAGNOSTIC, EXIT_USAGE = 0, 1, 2


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror}", file=sys.stderr)
        return None


def cmd_run(args):
    text = _read(args.file)
    if text is None:
        return EXIT_USAGE
    result = dsl.run(text, max_dim=args.max_dim)
    if args.json:
        sys.stdout.write(result.to_json())
    else:
        sys.stdout.write(result.to_text())
    return result.exit_code


def cmd_verify(args):
    report = run_corpus(args.case, max_dim=args.max_dim)
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return report.exit_code


def cmd_hh(args):
    text = _read(args.algebra)
    if text is None:
        return EXIT_USAGE
    try:
        script = dsl.parse(text)
    except dsl.ScriptError as exc:
        for d in exc.diagnostics:
            print(f"error: {d}", file=sys.stderr)
        return EXIT_DIAGNOSTIC
    ev = dsl.Evaluator(script, max_dim=args.max_dim)
    res = ev.run()
    if res.diagnostics:
        for d in res.diagnostics:
            print(f"error: {d}", file=sys.stderr)
        return EXIT_DIAGNOSTIC
    algebras = [k for k, v in ev.env.items() if isinstance(v, Algebra)]
    name = args.name or (algebras[-1] if algebras else None)
    if name not in algebras:
        print(f"error: no algebra named {name!r} in {args.algebra}", file=sys.stderr)
        return EXIT_DIAGNOSTIC
    try:
        dim = hh(ev.env[name], args.degree, args.max_dim).dim
    except (HochschildError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIAGNOSTIC
    if args.json:
        print(json.dumps({"version": 1, "field": script.field.name, "algebra": name,
                          "degree": args.degree, "dim": dim}))
    else:
        print(f"HH_{args.degree}({name}) has dimension {dim}")
    return EXIT_OK


def cmd_properties(args):
    report = run_properties(args.seed, args.count, args.check or None)
    bad = sum(len(r["failures"]) for r in report.values())
    if args.json:
        print(json.dumps({"seed": args.seed, "results": report}, indent=2))
    else:
        for name, r in report.items():
            print(f"{'PASS' if not r['failures'] else 'FAIL'} {name}: "
                  f"{r['runs'] - len(r['failures'])}/{r['runs']}")
            for i, detail in r["failures"]:
                print(f"    #{i}: {detail}")
    return EXIT_OK if not bad else EXIT_DIAGNOSTIC


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-dim", type=int, default=None, metavar="N",
                        help="override the cap on bar-complex chain dimensions")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="artinian-forms",
                                description="Kahler differentials, torsion brackets and "
                                            "Hochschild homology of finite algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", parents=[common], help="evaluate a script")
    r.add_argument("file")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify-paper", parents=[common], help="check the worked-example corpus")
    v.add_argument("--case", default=None, metavar="GLOB", help="only cases whose id matches")
    v.set_defaults(func=cmd_verify)

    h = sub.add_parser("hh", parents=[common], help="dimension of HH_n of a scripted algebra")
    h.add_argument("--algebra", required=True, metavar="FILE")
    h.add_argument("--degree", required=True, type=int, choices=(0, 1, 2))
    h.add_argument("--name", default=None, help="which binding (default: the last algebra)")
    h.set_defaults(func=cmd_hh)

    q = sub.add_parser("properties", parents=[common], help="seeded randomized invariant checks")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--count", type=int, default=100)
    q.add_argument("--check", action="append", choices=sorted(CHECKS))
    q.set_defaults(func=cmd_properties)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "max_dim", None) is not None and args.max_dim < 1:
        print("error: --max-dim must be positive", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
