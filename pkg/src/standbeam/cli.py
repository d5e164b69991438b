"""Command-line front end.

Subcommands::

    standbeam solve     --config beam.ini [--set beam.length_m=35] [--modes 3]
    standbeam sweep     --config sweep.ini --out sweep.csv
    standbeam table     [--table table2|table3|all] [--out report.csv]
    standbeam modeshape --config beam.ini --mode-index 1 --grid-points 101 --out shape.csv

Exit codes: 0 success, 1 configuration error, 2 fewer roots than requested
below ``lambda_max``, 3 buckled.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import sys

from . import __version__
from .beam_model import nondimensionalize
from .config import ConfigError, load_config, parse_flag, physical_config, solver_settings, sweep_spec
from .eigen import CharacteristicContext, find_eigenvalues, mode_shape
from .exceptions import InsufficientRangeError
from .experiments import (ALL_CONFIGURATIONS, PUBLISHED_TABLES, TableConfiguration, reproduce_table,
                          run_sweep)

EXIT_OK, EXIT_CONFIG, EXIT_RANGE, EXIT_BUCKLED = 0, 1, 2, 3

log = logging.getLogger("standbeam")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="standbeam", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"standbeam {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="sectioned key-value config file")
    common.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                        help="override a config entry, e.g. beam.length_m=35 (repeatable)")
    common.add_argument("--modes", type=int, help="number of modes")
    common.add_argument("--out", help="output path (default: standard output)")
    common.add_argument("--sign-convention", choices=("printed", "derived"))
    common.add_argument("--tip-weight", choices=("on", "off"))
    common.add_argument("--lambda-max", type=float)
    common.add_argument("--scan-step", type=float)
    common.add_argument("--tol", type=float)
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress to standard error (-vv for per-point detail)")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="eigenvalues for one configuration")
    sub.add_parser("sweep", parents=[common], help="parameter sweep to CSV")
    table = sub.add_parser("table", parents=[common], help="reproduce a published table")
    table.add_argument("--table", choices=("table2", "table3", "all"), default="all")
    shape = sub.add_parser("modeshape", parents=[common], help="mode shape samples to CSV")
    shape.add_argument("--mode-index", type=int, default=1)
    shape.add_argument("--grid-points", type=int, default=101)
    return parser


def _values(args):
    overrides = list(args.overrides)
    # dedicated flags take precedence over --set, which beats the file
    flag_keys = (("modes", "solver.modes"), ("sign_convention", "solver.sign_convention"),
                 ("tip_weight", "load.include_tip_weight"), ("lambda_max", "solver.lambda_max"),
                 ("scan_step", "solver.scan_step"), ("tol", "solver.tol"))
    for attr, key in flag_keys:
        value = getattr(args, attr)
        if value is not None:
            overrides.append(f"{key}={value!r}" if isinstance(value, float) else f"{key}={value}")
    return load_config(args.config, overrides)


def _header(settings, config, stream):
    stream.write(f"# standbeam {__version__}\n")
    for key, value in settings.metadata().items():
        stream.write(f"# {key}: {value}\n")
    stream.write(f"# include_tip_weight: {'on' if config.include_tip_weight_in_axial_load else 'off'}\n")


def cmd_solve(args, out):
    if args.out is None:
        return _solve(args, out)
    buf = io.StringIO()
    code = _solve(args, buf)
    out.write(buf.getvalue())
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(buf.getvalue())
    return code


def _solve(args, out):
    values = _values(args)
    config = physical_config(values)
    settings = solver_settings(values)
    n_modes = int(values["solver"]["modes"])
    params = nondimensionalize(config)
    ctx = CharacteristicContext(params, settings.policy, settings.sign_convention)
    result = find_eigenvalues(ctx, n_modes, settings.scan)
    _header(settings, config, out)
    out.write(f"# M = {params.end_mass!r}, J = {params.end_inertia!r}, e = {params.eccentricity!r}, "
              f"p0 = {params.p0!r}, gamma = {params.gamma!r}, time_scale_s = {params.time_scale!r}\n")
    if result.buckled:
        out.write(f"buckled: lowest eigenvalue Lambda = {result.buckling_eigenvalue!r} is not positive; "
                  f"no vibration frequencies reported\n")
        return EXIT_BUCKLED
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["mode", "Lambda [-]", "lambda [-]", "omega [rad/s]", "residual [-]"])
    for i in range(len(result)):
        writer.writerow([i + 1, repr(float(result.eigenvalues[i])), repr(float(result.frequency_parameters[i])),
                         repr(float(result.dimensional_frequencies[i])), repr(float(result.residuals[i]))])
    for warning in result.warnings:
        sys.stderr.write(f"warning: {warning}\n")
    return EXIT_OK


def cmd_sweep(args, out):
    values = _values(args)
    spec = sweep_spec(values, args.out)
    log.info("sweeping %s over %d points", spec.swept_parameter.value, len(spec.values))
    result = run_sweep(spec)
    for row in result.rows:
        log.debug("%s = %r: lambda = %s", spec.swept_parameter.value, row.value, list(row.frequency_parameters))
    if args.out is None:
        result.to_csv(out)
    failed = [row for row in result.rows if row.error]
    for row in failed:
        sys.stderr.write(f"warning: {row.value!r}: {row.error}\n")
    return EXIT_OK


def cmd_table(args, out):
    values = _values(args)
    settings = solver_settings(values)
    ids = sorted(PUBLISHED_TABLES) if args.table == "all" else [args.table]
    configurations = ALL_CONFIGURATIONS
    if args.sign_convention is not None or args.tip_weight is not None:
        sign = settings.sign_convention
        tip = parse_flag(values["load"]["include_tip_weight"])
        configurations = (TableConfiguration(sign, tip),)
    comparisons = []
    for table_id in ids:
        log.info("reproducing %s under %d configuration(s)", table_id, len(configurations))
        comparisons.append(reproduce_table(table_id, configurations, settings.scan, settings.policy))
    for comparison in comparisons:
        out.write(comparison.report_text() + "\n")
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            for comparison in comparisons:
                comparison.to_csv(fh)
    return EXIT_OK


def cmd_modeshape(args, out):
    if args.mode_index < 1:
        raise ConfigError("--mode-index must be at least 1")
    if args.grid_points < 2:
        raise ConfigError("--grid-points must be at least 2")
    values = _values(args)
    config = physical_config(values)
    settings = solver_settings(values)
    ctx = CharacteristicContext(nondimensionalize(config), settings.policy, settings.sign_convention)
    result = find_eigenvalues(ctx, args.mode_index, settings.scan)
    if result.buckled:
        sys.stderr.write("buckled: the lowest eigenvalue is not positive\n")
        return EXIT_BUCKLED
    lam = float(result.eigenvalues[args.mode_index - 1])
    shape = mode_shape(lam, ctx, args.grid_points)
    target = open(args.out, "w", encoding="utf-8", newline="") if args.out else out
    try:
        _header(settings, config, target)
        target.write(f"# mode: {args.mode_index}\n# Lambda: {lam!r}\n# normalization: {shape.normalization}\n")
        writer = csv.writer(target, lineterminator="\n")
        writer.writerow(["z [-]", "eta [-]"])
        for z, eta in shape.samples:
            writer.writerow([repr(z), repr(eta)])
    finally:
        if target is not out:
            target.close()
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "sweep": cmd_sweep, "table": cmd_table, "modeshape": cmd_modeshape}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args, out)
    except InsufficientRangeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_RANGE
    except (ConfigError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
