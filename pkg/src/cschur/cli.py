"""Command-line harness: run named verification suites and evaluate
canonical expressions."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import cache, exprs, reporting
from .hecke import HeckeAlgebra
from .scalars import Coeffs, ParseError
from .schur import SchurContext
from .suites import SUITE_NAMES, SuiteConfig, SuiteConfigError, run_suite
from .tensor import TensorModule
from .weyl import WeylGroup


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--r", type=int, default=3, help="weight range parameter (period n = 2r+2)")
    p.add_argument("--d", type=int, default=2, help="number of tensor factors / Weyl rank")
    p.add_argument("--variant", choices=("jj", "ji", "ij", "ii"), default="jj")
    p.add_argument("--spec", choices=("generic", "b2", "b1", "d1"), default="generic",
                   help="parameter specialization")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cschur",
                                 description="Exact verification suites for the "
                                             "three-parameter type-C duality setup")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("--suite", required=True, choices=SUITE_NAMES + ("all",))
    _add_common(v)
    v.add_argument("--window", type=int, default=2,
                   help="window multiplier: indices range over [-w*n, w*n]")
    v.add_argument("--maxlen", type=int, default=6,
                   help="word-length bound for Weyl/Hecke sweeps")
    v.add_argument("--genlen", type=int, default=3,
                   help="representative length bound for generation certificates")
    v.add_argument("--format", choices=("json", "md"), default="md")
    v.add_argument("--out", type=Path, default=None,
                   help="directory for report, CSV table and figures")
    v.add_argument("--cache-dir", type=Path, default=None,
                   help=f"cache directory (also {cache.ENV_VAR})")

    e = sub.add_parser("eval", help="evaluate an expression and print its canonical form")
    e.add_argument("--kind", required=True, choices=("hecke", "tensor", "schur"))
    e.add_argument("--expr", required=True)
    _add_common(e)

    c = sub.add_parser("certify",
                       help="emit the generation certificates as JSON")
    _add_common(c)
    c.add_argument("--genlen", type=int, default=3)
    c.add_argument("--out", type=Path, default=None, help="output file (default stdout)")
    return ap


def cmd_verify(args) -> int:
    if args.cache_dir is not None:
        os.environ[cache.ENV_VAR] = str(args.cache_dir)
    suites = list(SUITE_NAMES) if args.suite == "all" else [args.suite]
    if args.suite == "all":
        suites.remove("variants")
        suites.extend(["variants"])  # keep order stable; variants needs a variant flag
    exit_code = 0
    for name in suites:
        variant = args.variant
        if name == "variants" and variant == "jj":
            variant = "ji"
        cfg = SuiteConfig(name, r=args.r, d=args.d, variant=variant, spec=args.spec,
                          window=args.window, maxlen=args.maxlen, genlen=args.genlen)
        try:
            report = run_suite(cfg)
        except SuiteConfigError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        if args.format == "json":
            sys.stdout.write(reporting.to_json(report))
        else:
            sys.stdout.write(reporting.to_markdown(report))
        if args.out is not None:
            written = reporting.write_report_files(report, args.out, args.format)
            for p in written:
                print(f"wrote {p}", file=sys.stderr)
        if not report.passed:
            exit_code = 1
    return exit_code


def cmd_eval(args) -> int:
    coeffs = Coeffs.named(args.spec)
    try:
        if args.kind == "hecke":
            W = WeylGroup(args.d, 2 * args.r + 2)
            alg = HeckeAlgebra(W, coeffs)
            print(exprs.eval_hecke(args.expr, alg))
        elif args.kind == "tensor":
            mod = TensorModule(args.r, args.d, coeffs, args.variant)
            print(exprs.eval_tensor(args.expr, mod))
        else:
            ctx = SchurContext(args.r, args.d, coeffs, args.variant)
            print(exprs.eval_schur(args.expr, ctx))
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_certify(args) -> int:
    import json

    from .schur import generate_certificates

    ctx = SchurContext(args.r, args.d, Coeffs.named(args.spec), args.variant)
    certs = generate_certificates(ctx, maxlen=args.genlen)
    text = json.dumps({
        "r": args.r, "d": args.d, "variant": args.variant, "spec": args.spec,
        "genlen": args.genlen, "atoms": sorted(certs.atoms),
        "certificates": certs.to_json_obj(),
    }, indent=2, sort_keys=True) + "\n"
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
        print(f"wrote {args.out} ({len(certs.certs)} certificates)", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "certify":
        return cmd_certify(args)
    return cmd_eval(args)


if __name__ == "__main__":
    sys.exit(main())
