"""Command-line surface.

Subcommands cover configuration construction and validation, coefficient
extraction, oscillatory-function sampling, splitting evaluation, the
transversality classifier, flow integration, asymptotic tables, and the
golden catalog.  All floating-point output uses 17 significant digits in
lowercase scientific notation so identical invocations are byte-identical.

Exit codes: 0 success, 1 usage or invalid input, 2 numerical failure,
3 golden-catalog mismatch.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import catalog as catalog_mod
from . import config as cfg
from .asymptotics import ik_asymptotic, m4_leading, m6_leading
from .dynamics import (
    FlowParams,
    IntegrationError,
    McGeheeState,
    PoincareReturnError,
    hd_value,
    integrate_mcgehee,
    splitting_measure,
)
from .harmonics import c_coeffs, d_coeffs, d_l, harmonic_table
from .melnikov import M4, M6, M_poly, classify, verdict_to_dict
from .quadrature import (
    QuadratureBudgetError,
    eval_Ik,
    eval_Jk,
    eval_oscillatory,
    f4_integrand,
    f61_integrand,
    f62_integrand,
    polygon_integrand,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_GOLDEN = 3


def _fmt(x: float) -> str:
    return format(float(x), ".16e")


def _emit_json(obj, out) -> None:
    """Serialize with every float rendered at 17 significant digits."""

    def render(o) -> str:
        if isinstance(o, bool):
            return "true" if o else "false"
        if isinstance(o, float):
            return _fmt(o)
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if o is None:
            return "null"
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, dict):
            inner = ", ".join(f"{json.dumps(str(k))}: {render(v)}" for k, v in o.items())
            return "{" + inner + "}"
        if isinstance(o, (list, tuple)):
            return "[" + ", ".join(render(v) for v in o) + "]"
        raise TypeError(f"cannot serialize {type(o)!r}")

    out.write(render(obj) + "\n")


def _write_csv(out, header: Sequence[str], rows) -> None:
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row) + "\n")


def _load_config_arg(path: str) -> cfg.CentralConfiguration:
    return cfg.load_configuration(path)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    p = _Parser(prog="melsplit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("config", help="build or validate configurations")
    csub = pc.add_subparsers(dest="config_command", required=True)
    pv = csub.add_parser("validate", help="validate a configuration JSON file")
    pv.add_argument("path")
    pb = csub.add_parser("build", help="build a named configuration")
    pb.add_argument(
        "builder",
        choices=["rp3bp", "equilateral", "rhomboid", "collinear-equal",
                 "collinear-equidistant", "polygon"],
    )
    pb.add_argument("--mu", type=float, default=0.5)
    pb.add_argument("--m1", type=float, default=1.0 / 3.0)
    pb.add_argument("--m2", type=float, default=1.0 / 3.0)
    pb.add_argument("--a", type=float, default=1.0)
    pb.add_argument("--b", type=float, default=1.0)
    pb.add_argument("--n", type=int, default=7)
    pb.add_argument("--normalize", action="store_true")
    pb.add_argument("-o", "--output", default=None)

    pf = sub.add_parser("coeffs", help="print perturbation coefficients as JSON")
    pf.add_argument("path")
    pf.add_argument("--lmax", type=int, default=4)
    pf.add_argument("--jmax", type=int, default=6)

    pp = sub.add_parser("fplot", help="sample an oscillatory F-function to CSV")
    pp.add_argument("function", help="F4 | F61 | F62 | poly:N")
    pp.add_argument("--range", nargs=2, type=float, default=(-2.0, 2.0), metavar=("LO", "HI"))
    pp.add_argument("--points", type=int, default=101)
    pp.add_argument("--tol", type=float, default=1e-10)

    pm = sub.add_parser("melnikov", help="sample a splitting function over s0 to CSV")
    pm.add_argument("--order", required=True, help="4 | 6 | poly:N")
    pm.add_argument("--theta0", type=float, required=True)
    pm.add_argument("--eps", type=float, required=True)
    pm.add_argument("--config", default=None)
    pm.add_argument("--points", type=int, default=64)
    pm.add_argument("--tol", type=float, default=1e-10)

    pcl = sub.add_parser("classify", help="run the transversality decision tree")
    pcl.add_argument("path")
    pcl.add_argument("--lmax", type=int, default=8)
    pcl.add_argument("--jmax", type=int, default=None)

    pi = sub.add_parser("integrate", help="integrate the near-infinity flow to CSV")
    pi.add_argument("--config", required=True)
    pi.add_argument("--eps", type=float, required=True)
    pi.add_argument("--state", nargs=4, type=float, required=True, metavar=("X", "Y", "S", "THETA"))
    pi.add_argument("--tspan", nargs=2, type=float, required=True, metavar=("T0", "T1"))
    pi.add_argument("--truncation", type=int, default=9, choices=[3, 7, 9])
    pi.add_argument("--tol", type=float, default=1e-10)
    pi.add_argument("--samples", type=int, default=200)

    ps = sub.add_parser("splitting", help="flow-side splitting over an s0 grid to CSV")
    ps.add_argument("--config", required=True)
    ps.add_argument("--eps", type=float, required=True)
    ps.add_argument("--theta0", type=float, required=True)
    ps.add_argument("--points", type=int, default=16)
    ps.add_argument("--T", type=float, default=15.0)
    ps.add_argument("--tol", type=float, default=1e-9)
    ps.add_argument("--compare", action="store_true",
                    help="add the closed-form order-4 plus order-6 value")

    pa = sub.add_parser("asymp", help="asymptotic tables to CSV")
    pa.add_argument("table", choices=["ik", "recurrence", "leading"])
    pa.add_argument("--k", type=int, default=2)
    pa.add_argument("--deltas", nargs="+", type=float, default=[10.0, 20.0, 30.0])
    pa.add_argument("--config", default=None)
    pa.add_argument("--theta0", type=float, default=1.0)
    pa.add_argument("--eps", type=float, default=0.3)
    pa.add_argument("--points", type=int, default=16)
    pa.add_argument("--tol", type=float, default=1e-11)

    pcat = sub.add_parser("catalog", help="golden-value report; exit 3 on any miss")
    pcat.add_argument("case", help="|".join(catalog_mod.CASE_NAMES) + " | all")
    pcat.add_argument("--mu", type=float, default=0.5)
    pcat.add_argument("--m1", type=float, default=1.0 / 3.0)
    pcat.add_argument("--m2", type=float, default=1.0 / 3.0)
    pcat.add_argument("--a", type=float, default=1.0)
    pcat.add_argument("--b", type=float, default=1.0)
    pcat.add_argument("--n", type=int, default=7)
    return p


def _cmd_config(args, out) -> int:
    if args.config_command == "validate":
        c = _load_config_arg(args.path)
        report = cfg.cc_residual(c, fit_lambda=True)
        _emit_json(
            {
                "label": c.label,
                "n_bodies": c.n_bodies,
                "valid": True,
                "max_norm": report.max_norm,
                "lambda": report.lam,
            },
            out,
        )
        return EXIT_OK
    builders = {
        "rp3bp": lambda: cfg.build_rp3bp(args.mu),
        "equilateral": lambda: cfg.build_equilateral(args.m1, args.m2),
        "rhomboid": lambda: cfg.build_rhomboid(args.a, args.b),
        "collinear-equal": lambda: cfg.solve_collinear_equal(args.n),
        "collinear-equidistant": lambda: cfg.solve_collinear_equidistant(args.n),
        "polygon": lambda: cfg.build_polygon(args.n, normalize=args.normalize),
    }
    c = builders[args.builder]()
    payload = cfg.configuration_to_dict(c)
    if args.output:
        with open(args.output, "w") as fh:
            _emit_json(payload, fh)
    else:
        _emit_json(payload, out)
    return EXIT_OK


def _cmd_coeffs(args, out) -> int:
    c = _load_config_arg(args.path)
    c1, c2, c3 = c_coeffs(c)
    d1, d2, d3, d4 = d_coeffs(c)
    tables = {}
    for j in range(2, max(2, args.jmax) + 1):
        t = harmonic_table(c, j)
        tables[str(j)] = [[m, a, b] for m, a, b in t.entries]
    payload = {
        "label": c.label,
        "c": [c1, c2, c3],
        "d": [d1, d2, d3, d4],
        "d_l": {str(l): list(d_l(c, l)) for l in range(1, max(1, args.lmax) + 1)},
        "harmonic_tables": tables,
    }
    _emit_json(payload, out)
    return EXIT_OK


def _fplot_builder(name: str):
    if name == "F4":
        return f4_integrand
    if name == "F61":
        return f61_integrand
    if name == "F62":
        return f62_integrand
    if name.startswith("poly:"):
        n_total = int(name.split(":", 1)[1])
        return lambda tt: polygon_integrand(n_total, tt)
    raise cfg.ConfigError(f"unknown F-function {name!r}")


def _cmd_fplot(args, out) -> int:
    builder = _fplot_builder(args.function)
    lo, hi = args.range
    rows = []
    for tt in np.linspace(lo, hi, args.points):
        res = eval_oscillatory(builder(float(tt)), args.tol)
        rows.append((float(tt), res.value, res.error_estimate))
    _write_csv(out, ["theta_tilde", "value", "error_estimate"], rows)
    return EXIT_OK


def _cmd_melnikov(args, out) -> int:
    rows = []
    if args.order in ("4", "6"):
        if args.config is None:
            raise cfg.ConfigError("orders 4 and 6 need --config")
        c = _load_config_arg(args.config)
        fn = M4 if args.order == "4" else M6
        for i in range(args.points):
            s0 = 2.0 * math.pi * i / args.points
            rows.append((s0, fn(s0, args.theta0, args.eps, c, tol=args.tol)))
    elif args.order.startswith("poly:"):
        n_total = int(args.order.split(":", 1)[1])
        for i in range(args.points):
            s0 = 2.0 * math.pi * i / args.points
            rows.append((s0, M_poly(n_total, s0, args.theta0, args.eps, tol=args.tol)))
    else:
        raise cfg.ConfigError(f"unsupported order {args.order!r}")
    _write_csv(out, ["s0", "value"], rows)
    return EXIT_OK


def _cmd_classify(args, out) -> int:
    c = _load_config_arg(args.path)
    verdict = classify(c, l_max=args.lmax, j_max=args.jmax)
    _emit_json(verdict_to_dict(verdict), out)
    return EXIT_OK


def _cmd_integrate(args, out) -> int:
    c = _load_config_arg(args.config)
    params = FlowParams(epsilon=args.eps, config=c, truncation_order=args.truncation)
    x, y, s, theta = args.state
    state0 = McGeheeState(x=x, y=y, s=s, theta=theta)
    traj = integrate_mcgehee(state0, params, tuple(args.tspan), tol=args.tol)
    ts = np.linspace(args.tspan[0], args.tspan[1], args.samples)
    rows = []
    for t in ts:
        xv, yv, sv, thv = (float(v) for v in traj.sol(float(t)))
        rows.append((float(t), xv, yv, sv % (2.0 * math.pi), thv, hd_value(xv, yv, thv)))
    _write_csv(out, ["t", "x", "y", "s", "theta", "H_D"], rows)
    return EXIT_OK


def _cmd_splitting(args, out) -> int:
    c = _load_config_arg(args.config)
    rows = []
    header = ["s0", "splitting"]
    if args.compare:
        header.append("closed_form")
    for i in range(args.points):
        s0 = 2.0 * math.pi * i / args.points
        val = splitting_measure(s0, args.theta0, args.eps, c, T=args.T, tol=args.tol)
        if args.compare:
            closed = args.eps**4 * M4(s0, args.theta0, args.eps, c) + args.eps**6 * M6(
                s0, args.theta0, args.eps, c
            )
            rows.append((s0, val, closed))
        else:
            rows.append((s0, val))
    _write_csv(out, header, rows)
    return EXIT_OK


def _cmd_asymp(args, out) -> int:
    if args.table == "ik":
        rows = []
        for d in args.deltas:
            exact = eval_Ik(args.k, d, args.tol)
            asym = ik_asymptotic(args.k, d)
            rows.append((d, exact, asym, exact / asym if asym != 0 else math.nan))
        _write_csv(out, ["delta", "ik_quadrature", "ik_asymptotic", "ratio"], rows)
        return EXIT_OK
    if args.table == "recurrence":
        rows = []
        for d in args.deltas:
            i_val = eval_Ik(args.k, d, args.tol)
            j_val = eval_Jk(args.k + 2, d, args.tol)
            identity = d / (2.0 * (args.k + 1)) * i_val
            rel = abs(j_val - identity) / abs(identity) if identity != 0 else math.nan
            rows.append((d, j_val, identity, rel))
        _write_csv(out, ["delta", "jk_quadrature", "identity_value", "rel_error"], rows)
        return EXIT_OK
    if args.config is None:
        raise cfg.ConfigError("the leading table needs --config")
    c = _load_config_arg(args.config)
    rows = []
    for i in range(args.points):
        s0 = 2.0 * math.pi * i / args.points
        rows.append(
            (
                s0,
                m4_leading(s0, args.theta0, args.eps, c),
                m6_leading(s0, args.theta0, args.eps, c),
            )
        )
    _write_csv(out, ["s0", "m4_leading", "m6_leading"], rows)
    return EXIT_OK


def _cmd_catalog(args, out) -> int:
    if args.case == "all":
        cases = [
            catalog_mod.build_case("rp3bp", mu=0.3),
            catalog_mod.build_case("rp3bp", mu=0.5),
            catalog_mod.build_case("equilateral"),
            catalog_mod.build_case("rhomboid"),
            catalog_mod.build_case("rhomboid-roots"),
            catalog_mod.build_case("collinear8"),
            catalog_mod.build_case("collinear11"),
            catalog_mod.build_case("polygon", n=7),
            catalog_mod.build_case("polygon", n=8),
        ]
    else:
        cases = [
            catalog_mod.build_case(
                args.case, mu=args.mu, m1=args.m1, m2=args.m2, a=args.a, b=args.b, n=args.n
            )
        ]
    all_ok = True
    for case in cases:
        report = catalog_mod.run_case(case)
        all_ok = all_ok and report.passed
        out.write(f"# case {report.name}: {'PASS' if report.passed else 'FAIL'} "
                  f"({report.elapsed:.2f}s)\n")
        _write_csv(
            out,
            ["key", "computed", "expected", "tolerance", "status"],
            [
                (key, got, want, tol, "ok" if ok else "MISS")
                for key, got, want, tol, ok in report.rows
            ],
        )
    return EXIT_OK if all_ok else EXIT_GOLDEN


_DISPATCH = {
    "config": _cmd_config,
    "coeffs": _cmd_coeffs,
    "fplot": _cmd_fplot,
    "melnikov": _cmd_melnikov,
    "classify": _cmd_classify,
    "integrate": _cmd_integrate,
    "splitting": _cmd_splitting,
    "asymp": _cmd_asymp,
    "catalog": _cmd_catalog,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    os.environ.setdefault("MELNIKOV_THREADS", "1")  # evaluation is serial; cap honored
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return _DISPATCH[args.command](args, sys.stdout)
    except (cfg.ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (
        QuadratureBudgetError,
        IntegrationError,
        PoincareReturnError,
        cfg.NewtonConvergenceError,
        FloatingPointError,
    ) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
