"""Command-line verification harness.

Subcommands:

  verify SUITE   run a verification suite, write a JSON report, exit 0/1
  eval WHAT      print operator coefficients / symbol values
  table IDENTITY dump an identity sweep as CSV

Exit codes: 0 all cases pass, 1 case failure, 2 config/parse error,
3 quadrature budget exhausted.  Complex literals are written a+bi with no
spaces (e.g. 1.5-0.25i); rationals p/q.  The default output directory is
$SBOLAB_OUT_DIR (falling back to the working directory).
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, sbops
from .harness import SUITES, run_suite
from .quadrature import QuadratureBudgetError
from .report import RunConfig, write_csv
from .specfun import gamma, gegenbauer, hyp2f1


class CliError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    """a+bi literals: '2', '1/2', '-1.5i', '0.7+0.3i', '1-2i'."""
    t = text.strip().replace(" ", "")
    if not t:
        raise CliError("empty complex literal")
    if "/" in t and "i" not in t:
        return complex(parse_rational(t))
    try:
        return complex(t.replace("i", "j"))
    except ValueError as exc:
        raise CliError(f"cannot parse complex literal {text!r}") from exc


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"cannot parse rational literal {text!r}") from exc


def parse_vector(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",") if v != ""])
    except ValueError as exc:
        raise CliError(f"cannot parse vector literal {text!r}") from exc


def _int_list(text: str):
    try:
        return tuple(int(v) for v in text.split(",") if v != "")
    except ValueError as exc:
        raise CliError(f"cannot parse integer list {text!r}") from exc


def _default_out(name: str) -> str:
    base = os.environ.get("SBOLAB_OUT_DIR", ".")
    return str(Path(base) / name)


def sig15(z) -> str:
    z = complex(z)
    if z.imag == 0.0:
        return f"{z.real:.15g}"
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real:.15g}{sign}{abs(z.imag):.15g}i"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sbolab", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"sbolab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--n", type=_int_list, default=None,
                   help="comma-separated sphere dimensions (e.g. 2,3,4)")
    v.add_argument("--l", type=_int_list, default=None,
                   help="comma-separated half-degrees (e.g. 0,1,2)")
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--grid-points", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=None)
    v.add_argument("--budget", type=int, default=10_000_000,
                   help="max quadrature evaluations before exit code 3")
    v.add_argument("--lambda", dest="lam", default=None, help="rational p/q (fmethod)")
    v.add_argument("--op", choices=["juhl", "aop", "riesz"], default="juhl")
    v.add_argument("--gen", default="all",
                   choices=["all", "translation", "dilation", "rotation",
                            "reflection", "inversion"])
    v.add_argument("--out", default=None, help="report JSON path")
    v.add_argument("--csv", dest="csv_out", default=None, help="optional CSV grid path")

    e = sub.add_parser("eval", help="print coefficients and symbol values")
    e.add_argument("what", choices=["juhl-coeffs", "a-symbol", "c-symbol",
                                    "ks-symbol", "residue-constant"])
    e.add_argument("--n", type=int, default=3)
    e.add_argument("--l", type=int, default=0)
    e.add_argument("--lambda", dest="lam", default="0")
    e.add_argument("--nu", default="0")
    e.add_argument("--zeta", default="1,0", help="comma-separated dual covector")
    e.add_argument("--zeta-n", type=float, default=0.0)

    t = sub.add_parser("table", help="dump an identity sweep as CSV")
    t.add_argument("identity", choices=["kummer", "gegenbauer-2f1", "fca-grid"])
    t.add_argument("--rows", type=int, default=100)
    t.add_argument("--l-max", type=int, default=6)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--budget", type=int, default=10_000_000)
    t.add_argument("--out", default=None)
    return p


def cmd_verify(args) -> int:
    kwargs = {"suite": args.suite, "seed": args.seed, "budget": args.budget,
              "op": args.op, "gen": args.gen, "tol": args.tol,
              "csv_out": args.csv_out, "lam": args.lam}
    if args.n is not None:
        kwargs["n_values"] = args.n
    if args.l is not None:
        kwargs["l_values"] = args.l
    if args.samples is not None:
        kwargs["samples"] = args.samples
    if args.grid_points is not None:
        kwargs["grid_points"] = args.grid_points
    kwargs["out"] = args.out or _default_out(f"report-{args.suite}.json")
    config = RunConfig(**kwargs)
    report = run_suite(config)
    for case in report.cases:
        status = "pass" if case.passed else "FAIL"
        print(f"[{status}] {case.case_id}: {case.check} "
              f"(error {case.error:.3e}, tol {case.tol:.1e})")
    print(f"{report.suite}: {sum(c.passed for c in report.cases)}/{len(report.cases)} "
          f"cases passed, max error {report.max_error:.3e}, "
          f"report -> {config.out}")
    return 0 if report.all_pass else 1


def cmd_eval(args) -> int:
    lam = parse_complex(args.lam)
    nu = parse_complex(args.nu)
    zeta = parse_vector(args.zeta)
    if args.what == "juhl-coeffs":
        lam_q, nu_q = parse_rational(args.lam), parse_rational(args.nu)
        op = sbops.juhl_build(sbops.ParamPair(lam=lam_q, nu=nu_q, n=args.n))
        print(f"l = {op.l}")
        for j, b in enumerate(op.coeffs):
            print(f"b_{j} (tangential-laplacian^{j} normal-d^{2 * op.l - 2 * j}): {b}")
        return 0
    if args.what == "a-symbol":
        params = sbops.ParamPair(lam=lam, nu=nu, n=args.n)
        print(sig15(sbops.asymbol_eval(params, zeta, args.zeta_n)))
        return 0
    if args.what == "c-symbol":
        params = sbops.ParamPair(lam=lam, nu=nu, n=args.n)
        print(sig15(sbops.csymbol_eval(params, zeta, args.zeta_n)))
        return 0
    if args.what == "ks-symbol":
        full = np.concatenate([zeta, [args.zeta_n]]) if len(zeta) == args.n - 1 else zeta
        print(sig15(sbops.ks_symbol_eval(lam, args.n, full)))
        return 0
    if args.what == "residue-constant":
        print(sig15(sbops.residue_constant(args.l, args.n, nu)))
        return 0
    raise CliError(f"unknown eval target {args.what!r}")


def cmd_table(args) -> int:
    out = args.out or _default_out(f"table-{args.identity}.csv")
    rng = np.random.default_rng(args.seed)
    if args.identity == "kummer":
        rows = []
        for _ in range(args.rows):
            a = complex(rng.uniform(-2, 2), rng.uniform(-0.8, 0.8))
            b = complex(rng.uniform(-2, 2), rng.uniform(-0.8, 0.8))
            c = complex(rng.uniform(0.6, 2.5), rng.uniform(-0.5, 0.5))
            z = float(rng.uniform(-0.9, 0.9))
            lhs = hyp2f1(a, b, c, z)
            rhs = (1 - z) ** (c - a - b) * hyp2f1(c - a, c - b, c, z)
            rows.append([a, b, c, z, lhs, rhs, abs(lhs - rhs) / max(abs(rhs), 1e-300)])
        write_csv(out, ["a", "b", "c", "z", "lhs", "rhs", "rel_error"], rows)
    elif args.identity == "gegenbauer-2f1":
        rows = []
        for l in range(0, args.l_max + 1):
            for _ in range(max(1, args.rows // (args.l_max + 1))):
                mu = complex(rng.uniform(0.3, 4.0), rng.uniform(-0.5, 0.5))
                x = float(rng.uniform(-0.95, 0.95))
                lhs = gegenbauer(2 * l, mu, x)
                rhs = (-1) ** l * gamma(l + mu) / (math.factorial(l) * gamma(mu)) \
                    * hyp2f1(-l, l + mu, 0.5, x * x)
                rows.append([l, mu, x, lhs, rhs, abs(lhs - rhs) / max(abs(rhs), 1e-300)])
        write_csv(out, ["l", "mu", "x", "lhs", "rhs", "rel_error"], rows)
    elif args.identity == "fca-grid":
        from .quadrature import Budget

        budget = Budget(args.budget)
        rows = []
        params = sbops.ParamPair(lam=3.5, nu=1.0, n=2)
        for xi1 in (1.0, 1.5, 2.0, 2.5):
            for xi2 in (-1.0, -0.3, 0.3, 0.6, 0.9):
                if abs(xi2) >= xi1:
                    continue
                num = sbops.fr_akernel_numeric(params, xi1, xi2, budget)
                ref = sbops.asymbol_fr(params, [xi1], xi2).real
                rows.append([3.5, 1.0, xi1, xi2, num, ref, abs(num - ref) / abs(ref)])
        write_csv(out, ["lam", "nu", "xi1", "xi2", "lhs", "rhs", "rel_error"], rows)
    else:
        raise CliError(f"unknown identity {args.identity!r}")
    print(f"wrote {out}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "table":
            return cmd_table(args)
        raise CliError(f"unknown command {args.command!r}")
    except QuadratureBudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
