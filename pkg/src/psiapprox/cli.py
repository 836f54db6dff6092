"""Command line experiment runner.

Subcommands: kernel, estimate, extremal, verify, compare-fourier. Each reads
a JSON configuration (see psiapprox.config), runs one work item per n and
writes a CSV table (plus an SVG plot with --plot) into --out.

Exit status: 0 on success, 2 on a configuration error, 3 when any
numerical step failed (the remaining rows are still written).
"""

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import config as config_mod
from . import experiments
from .report import svg_plot, write_csv

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


def _run_items(func, items, jobs):
    """Apply ``func`` to every item; failures become exceptions in the result list."""
    def guarded(item):
        try:
            return func(*item)
        except Exception as exc:  # recorded in the report, the run continues
            return exc

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(guarded, items))
    return [guarded(item) for item in items]


def _error_row(n, exc, **extra):
    return dict(n=n, certificate=f"error: {type(exc).__name__}: {exc}", **extra)


def cmd_verify(cfg, args):
    spaces = ["C", "L1"] if cfg.space == "both" else [cfg.space]
    items = [(cfg, n, s) for s in spaces for n in cfg.n_list]
    results = _run_items(experiments.verify_row, items, args.jobs)
    rows, failed = [], False
    for (_, n, s), res in zip(items, results):
        if isinstance(res, Exception):
            failed = True
            rows.append(_error_row(n, res, space=s))
        else:
            rows.append(res)
    path = os.path.join(args.out, cfg.output.get("csv", "verify.csv"))
    write_csv(path, experiments.VERIFY_COLUMNS, rows)
    print(f"wrote {path}")
    if args.plot:
        series = []
        for s in spaces:
            sel = [r for r in rows if r.get("space") == s and "E_n" in r]
            ratio = [r["E_n"] / r["main_term"] if r["main_term"] else float("nan") for r in sel]
            series.append((f"E_n / main term ({s})", [r["n"] for r in sel], ratio))
        svg = os.path.join(args.out, cfg.output.get("svg", "verify.svg"))
        svg_plot(svg, series, "n", "ratio", "best approximation over main term")
        print(f"wrote {svg}")
    return EXIT_NUMERIC if failed else EXIT_OK


def cmd_compare(cfg, args):
    items = [(cfg, n) for n in cfg.n_list]
    results = _run_items(experiments.compare_row, items, args.jobs)
    rows, failed = [], False
    for (_, n), res in zip(items, results):
        if isinstance(res, Exception):
            failed = True
            print(f"n={n}: {type(res).__name__}: {res}", file=sys.stderr)
            rows.append({"n": n})
        else:
            rows.append(res)
    path = os.path.join(args.out, cfg.output.get("csv", "compare_fourier.csv"))
    write_csv(path, experiments.COMPARE_COLUMNS, rows)
    print(f"wrote {path}")
    if args.plot:
        ns = [r["n"] for r in rows]
        series = [("E_n / Fourier deviation", ns, [r.get("ratio") for r in rows]),
                  ("class ratio", ns, [r.get("class_ratio") for r in rows]),
                  ("limit", ns, [r.get("limit") for r in rows])]
        svg = os.path.join(args.out, cfg.output.get("svg", "compare_fourier.svg"))
        svg_plot(svg, series, "n", "ratio", "best approximation vs Fourier sums")
        print(f"wrote {svg}")
    return EXIT_NUMERIC if failed else EXIT_OK


def _long_table(cfg, args, func, columns, default_name, plot_cols=None):
    items = [(cfg, n) for n in cfg.n_list]
    results = _run_items(func, items, args.jobs)
    rows, failed = [], False
    for (_, n), res in zip(items, results):
        if isinstance(res, Exception):
            failed = True
            print(f"n={n}: {type(res).__name__}: {res}", file=sys.stderr)
        elif isinstance(res, list):
            rows.extend(res)
        else:
            rows.append(res)
    path = os.path.join(args.out, cfg.output.get("csv", default_name + ".csv"))
    write_csv(path, columns, rows)
    print(f"wrote {path}")
    if args.plot and plot_cols:
        xcol, ycols = plot_cols
        series = []
        for n in cfg.n_list:
            sel = [r for r in rows if r["n"] == n]
            for y in ycols:
                series.append((f"{y}, n={n}", [r[xcol] for r in sel], [r.get(y) for r in sel]))
        svg = os.path.join(args.out, cfg.output.get("svg", default_name + ".svg"))
        svg_plot(svg, series, xcol, ", ".join(ycols), default_name)
        print(f"wrote {svg}")
    return EXIT_NUMERIC if failed else EXIT_OK


def cmd_kernel(cfg, args):
    return _long_table(cfg, args, experiments.kernel_rows, ["n", "t", "Psi_beta", "Psi_n", "Psi_n_beta"],
                       "kernel", ("t", ["Psi_n"]))


def cmd_estimate(cfg, args):
    cols = ["n", "main_C", "theta_lo_C", "main_L1", "theta_lo_L1", "gamma_n", "remainder_scale", "corollary_gamma"]
    return _long_table(cfg, args, experiments.estimate_row, cols, "estimate")


def cmd_extremal(cfg, args):
    space = "L1" if cfg.space == "L1" else "C"

    def rows(c, n):
        return experiments.extremal_rows(c, n, space)

    return _long_table(cfg, args, rows, ["n", "x", "phi_star", "Phi_star"], "extremal",
                       ("x", ["Phi_star"]))


COMMANDS = {
    "kernel": (cmd_kernel, "evaluate the kernels Psi_beta, Psi_n and Psi_n,beta"),
    "estimate": (cmd_estimate, "tabulate main terms and remainder scales"),
    "extremal": (cmd_extremal, "dump the extremal phi* and its transform Phi*_n"),
    "verify": (cmd_verify, "compute E_n of the extremal functions and compare with the main term"),
    "compare-fourier": (cmd_compare, "compare E_n with the deviation of Fourier sums"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="psiapprox", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", metavar="PATH", help="JSON configuration (defaults: psi=exp(-t), omega=t)")
        p.add_argument("--out", metavar="DIR", default=".", help="output directory")
        p.add_argument("--plot", action="store_true", help="also write an SVG plot")
        p.add_argument("--jobs", type=int, default=1, metavar="N", help="work items run concurrently")
        p.add_argument("--tol-override", action="append", default=[], metavar="KEY=VAL",
                       help="override a tolerance or grid size; may repeat")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_mod.load(args.config) if args.config else config_mod.default_config()
        config_mod.apply_overrides(cfg, args.tol_override)
        if args.jobs < 1:
            raise config_mod.ConfigError("--jobs must be at least 1")
        os.makedirs(args.out, exist_ok=True)
    except config_mod.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    func = COMMANDS[args.command][0]
    try:
        return func(cfg, args)
    except (ArithmeticError, ValueError, RuntimeError) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
