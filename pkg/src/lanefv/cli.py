"""Command-line interface.

Subcommands: run, sweep, refine, diagnose, presets.  Results are CSV
files in the output directory given by --out, the LANEFV_OUT_DIR
environment variable, or ./lanefv_out, in that order.  Exit codes:
0 success, 1 configuration or validation problem, 2 runtime assertion
(a computed density left its box, or a diagnose check failed).
"""

import argparse
import math
import os
import sys
from pathlib import Path

from .csvio import (
    write_diagnostics_csv,
    write_l1_table_csv,
    write_refinement_csv,
    write_snapshot_csv,
    write_tv_table_csv,
)
from .diagnostics import tv_bound
from .driver import run
from .errors import BoundsViolationError, ConfigError, ModelAdmissibilityError
from .harness import eta_sweep, refinement_study
from .scenarios import PRESETS, scenario

DEFAULT_OUT = "lanefv_out"
OUT_ENV_VAR = "LANEFV_OUT_DIR"

# Slack on the variation bound check: the bound is a continuum
# statement and the discrete field carries an O(dx) perturbation.
TV_BOUND_SLACK = 1.01
LEDGER_LIMIT = 1e-9


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser():
    parser = _Parser(prog="lanefv", description="Two-lane nonlocal traffic runs")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p_run = sub.add_parser("run", help="run a config, write snapshots + diagnostics")
    p_run.add_argument("--config", required=True, help="YAML configuration file")
    p_run.add_argument("--out", help="output directory")

    p_sweep = sub.add_parser("sweep", help="look-ahead sweep against the local reference")
    p_sweep.add_argument("--preset", required=True, choices=PRESETS)
    p_sweep.add_argument("--etas", help="comma-separated look-ahead values")
    p_sweep.add_argument("--n-cells", type=int, default=None)
    p_sweep.add_argument("--out", help="output directory")

    p_refine = sub.add_parser("refine", help="grid refinement study")
    p_refine.add_argument("--preset", required=True, choices=PRESETS)
    p_refine.add_argument("--cells", required=True, help="comma-separated cell counts")
    p_refine.add_argument("--eta", type=float, default=None)
    p_refine.add_argument("--out", help="output directory")

    p_diag = sub.add_parser("diagnose", help="run a config and check its invariants")
    p_diag.add_argument("--config", required=True, help="YAML configuration file")

    sub.add_parser("presets", help="list scenario names")
    return parser


def _out_dir(arg):
    path = Path(arg or os.environ.get(OUT_ENV_VAR) or DEFAULT_OUT)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _load_config(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    from .config import parse_config

    return parse_config(text)


def _eta_tag(eta):
    return f"eta{eta:g}"


def _cmd_run(args):
    cfg = _load_config(args.config)
    out = _out_dir(args.out)
    scn = cfg.scenario
    for eta in cfg.eta_list:
        snapshots = run(scn, eta)
        model = scn.model(eta)
        for state, _ in snapshots:
            name = f"snapshot_{_eta_tag(eta)}_t{state.t:g}.csv"
            (out / name).write_text(write_snapshot_csv(state, scn.grid, model))
        diag = f"diagnostics_{_eta_tag(eta)}.csv"
        (out / diag).write_text(write_diagnostics_csv([rec for _, rec in snapshots]))
        print(f"{scn.name} {_eta_tag(eta)}: {len(snapshots)} snapshot(s) -> {out}")
    return 0


def _cmd_sweep(args):
    etas = None
    if args.etas:
        etas = [float(v) for v in args.etas.split(",") if v]
    kwargs = {}
    if args.n_cells is not None:
        kwargs["n_cells"] = args.n_cells
    result = eta_sweep(args.preset, eta_list=etas, **kwargs)
    out = _out_dir(args.out)
    (out / "l1_table.csv").write_text(write_l1_table_csv(result.l1_table))
    (out / "tv_table.csv").write_text(write_tv_table_csv(result.tv_table))
    print(f"{args.preset}: {len(result.l1_table)} L1 row(s), {len(result.tv_table)} TV row(s) -> {out}")
    return 0


def _cmd_refine(args):
    try:
        cells = [int(v) for v in args.cells.split(",") if v]
    except ValueError as exc:
        raise ConfigError(f"--cells: {exc}") from exc
    scn = scenario(args.preset)
    eta = args.eta if args.eta is not None else scn.eta_list[0]
    rows = refinement_study(args.preset, cells, eta)
    out = _out_dir(args.out)
    (out / "refinement.csv").write_text(write_refinement_csv(rows))
    for row in rows:
        order = "" if math.isnan(row.order) else f", order {row.order:.3f}"
        print(f"dx {row.dx:g}: L1 error {row.error:.6g}{order}")
    return 0


def _cmd_diagnose(args):
    cfg = _load_config(args.config)
    scn = cfg.scenario
    failures = 0
    for eta in cfg.eta_list:
        snapshots = run(scn, eta)
        for state, rec in snapshots:
            checks = [f"mass {rec.mass_total:.12g}", f"ledger {rec.mass_ledger_residual:.3g}"]
            ok = rec.mass_ledger_residual <= LEDGER_LIMIT
            if eta > 0:
                bound = tv_bound(scn.bound_inputs(state.t))
                checks.append(f"TV(W) {rec.tv_w_sum:.6g} vs bound {bound:.6g}")
                ok = ok and rec.tv_w_sum <= bound * TV_BOUND_SLACK
            status = "ok" if ok else "FAIL"
            failures += 0 if ok else 1
            print(f"{_eta_tag(eta)} t={state.t:g}: {status} ({'; '.join(checks)})")
    if failures:
        print(f"{failures} check(s) failed")
        return 2
    return 0


def cli_main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.command is None:
        parser.print_help()
        return 1
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "refine":
            return _cmd_refine(args)
        if args.command == "diagnose":
            return _cmd_diagnose(args)
        if args.command == "presets":
            for name in PRESETS:
                print(name)
            return 0
    except (ConfigError, ModelAdmissibilityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BoundsViolationError as exc:
        print(f"runtime assertion: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


def main():
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
