"""Command-line interface.

Subcommands:
  analyze        full pipeline on one density + phi; text or JSON report
  verify-proofs  pass/fail table for the proof-internal inequalities
  catalog        list the built-in reference densities and classifications
  selftest       run the lemma oracles and closed-loop identities

Exit codes for analyze: 0 = some theorem applied, 2 = nothing certified
(not an error), 1 = runtime/input error.  MDET_GRID_END overrides the
default gamma-grid endpoint (useful to speed up CI runs).
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from .densities import catalog_density
from .errors import MdetError, ProofCheckError
from .expr import parse_density_expr, to_source
from .phi import FAMILIES
from .proofs import check_moment_identity, lemma1_sup, lemma2_bound_check
from .carleman import bound_implies_divergence
from .report import (AnalyzeConfig, analyze, catalog_listing, render,
                     run_proof_checks)


def _add_density_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dist", help="catalog density, e.g. lognormal:0,1")
    p.add_argument("--density-expr", dest="expr",
                   help='density kernel expression, e.g. "exp(-x^2/2)"')
    p.add_argument("--support", choices=["R", "R+"],
                   help="support of an expression density")
    p.add_argument("--x0", type=float, default=1.0,
                   help="tail threshold of an expression density")
    p.add_argument("--normalize", action="store_true",
                   help="normalize an expression kernel by quadrature "
                        "(enables moment/Carleman analysis)")


def _add_phi_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--phi", default="logpow", choices=list(FAMILIES),
                   help="tail-shift family")
    p.add_argument("--a", type=float, default=1.0, help="phi amplitude")
    p.add_argument("--alpha", type=float, default=1.0, help="phi exponent")


def _grid_end(args) -> float:
    if args.grid_end is not None:
        return args.grid_end
    env = os.environ.get("MDET_GRID_END")
    return float(env) if env else 1e8


def _config(args) -> AnalyzeConfig:
    return AnalyzeConfig(
        dist=args.dist, expr=args.expr, support=args.support, x0=args.x0,
        normalize=args.normalize, phi_family=args.phi, a=args.a,
        alpha=args.alpha, gamma=getattr(args, "gamma", "auto"),
        nmax=args.nmax, grid_end=_grid_end(args),
        windows=getattr(args, "windows", 5),
        margin=getattr(args, "margin", 0.05))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="mdet",
        description="moment-determinacy diagnostics via density tails")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="run the full diagnostic pipeline")
    _add_density_args(pa)
    _add_phi_args(pa)
    pa.add_argument("--gamma", default="auto",
                    choices=["g1", "g2", "g3", "auto"])
    pa.add_argument("--nmax", type=int, default=40)
    pa.add_argument("--grid-end", dest="grid_end", type=float, default=None)
    pa.add_argument("--windows", type=int, default=5)
    pa.add_argument("--margin", type=float, default=0.05)
    pa.add_argument("--report", default="text", choices=["text", "json"])

    pv = sub.add_parser("verify-proofs",
                        help="verify the proof-internal inequality chains")
    _add_density_args(pv)
    _add_phi_args(pv)
    pv.add_argument("--nmax", type=int, default=40)
    pv.add_argument("--grid-end", dest="grid_end", type=float, default=None)

    sub.add_parser("catalog", help="list built-in densities")
    sub.add_parser("selftest", help="run lemma oracles and identities")

    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            report = analyze(_config(args))
            sys.stdout.write(render(report, args.report))
            return 0 if report.any_theorem_applies else 2
        if args.command == "verify-proofs":
            rows, ok = run_proof_checks(_config(args))
            for r in rows:
                mark = "PASS" if r["ok"] else "FAIL"
                detail = f"  ({r['detail']})" if r["detail"] else ""
                print(f"[{mark}] {r['check']}{detail}")
            return 0 if ok else 1
        if args.command == "catalog":
            for row in catalog_listing():
                print(f"{row['label']:32s} {row['support']:10s} "
                      f"x0={row['x0']:<6g} {row['classification']:8s} "
                      f"[{row['source']}]")
            return 0
        return _selftest()
    except MdetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _selftest() -> int:
    ok = True

    def check(name: str, fn) -> None:
        nonlocal ok
        try:
            fn()
            print(f"[PASS] {name}")
        except (MdetError, AssertionError) as exc:
            ok = False
            print(f"[FAIL] {name}: {exc}")

    def lemma1_grid():
        for n in np.linspace(1, 100, 20).astype(int):
            for eps in np.geomspace(0.01, 2.0, 20):
                lemma1_sup(int(n), float(eps))

    def lemma2_grid():
        for c in (0.1, 1.0, 10.0):
            for b in (0.1, 1.0, 10.0):
                for a1 in (0.1, 1.0, 10.0):
                    if lemma2_bound_check(c, b, a1, 100) < 0.0:
                        raise ProofCheckError(
                            f"negative slack at c={c}, b={b}, a1={a1}")

    def series_growth():
        s13, s14 = bound_implies_divergence(1.0, 1.0, 10_000)
        assert s13[-1] > s13[99] + 10.0, "sqrt-series growth too slow"
        assert np.all(np.diff(s14) > 0.0), "partial sums must increase"

    def symmetrize_identity():
        err = check_moment_identity(catalog_density("exponential").density, 8)
        assert err <= 1e-6, f"moment identity error {err}"

    def parser_roundtrip():
        for src in ("exp(-x^2/2)", "1/x*exp(-(log(x))^2/2)", "2+3*4^2"):
            ast = parse_density_expr(src)
            assert parse_density_expr(to_source(ast)) == ast

    check("lemma 1 sup identity over the (n, eps) grid", lemma1_grid)
    check("lemma 2 extremal bound over {0.1,1,10}^3", lemma2_grid)
    check("lower-bound series growth", series_growth)
    check("symmetrization moment identity (exponential)", symmetrize_identity)
    check("expression parser round-trip", parser_roundtrip)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
