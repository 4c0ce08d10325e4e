"""Command-line front end.

Subcommands::

    mmrelay analyze  <cfg>                      queue solution + throughput
    mmrelay simulate <cfg> [--slots --seed --mode]   Monte Carlo statistics
    mmrelay sweep    <cfg> -o out.csv [--jobs]       grid evaluation to CSV
    mmrelay compare  <cfg> [--slots --seed --mode]   analytic-vs-sim z table

Exit codes: 0 ok, 1 usage error, 2 model/configuration error,
3 comparison failure (some |z| > 3).
"""

from __future__ import annotations

import argparse
import math
import sys

from . import simulator
from .sweeps import ConfigError, load_config, sweep_to_csv
from .success import SuccessTable
from .throughput import aggregate_throughput

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MODEL = 2
EXIT_COMPARISON = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fmt(x: float) -> str:
    return format(x, ".9g")


def _add_sim_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--slots", type=int, default=None,
                   help="number of simulated slots (overrides the file)")
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed (overrides the file)")
    p.add_argument("--mode", choices=simulator.MODES, default=None,
                   help="LOS sampling mode (overrides the file)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mmrelay",
                     description="Relay-assisted mm-wave random access: "
                                 "analytical model and simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="print queue solution and throughput")
    p.add_argument("config")

    p = sub.add_parser("simulate", help="run the slot-level simulator")
    p.add_argument("config")
    _add_sim_flags(p)

    p = sub.add_parser("sweep", help="evaluate a sweep grid and write CSV")
    p.add_argument("config")
    p.add_argument("-o", "--output", required=True, help="CSV output path")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel worker processes")

    p = sub.add_parser("compare", help="analytic vs simulation z-score table")
    p.add_argument("config")
    _add_sim_flags(p)
    return parser


def _sim_args(spec, args) -> tuple[int, int, str]:
    slots = args.slots if args.slots is not None else spec.n_slots
    seed = args.seed if args.seed is not None else spec.seed
    mode = args.mode if args.mode is not None else spec.mode
    return slots, seed, mode


def cmd_analyze(args) -> int:
    spec = load_config(args.config)
    report = aggregate_throughput(spec.base, SuccessTable(spec.base))
    q = report.queue
    print(f"regime      : {report.regime}")
    print(f"q_r_min     : {_fmt(q.q_r_min)}")
    print(f"lambda0     : {_fmt(q.lambda0)}")
    print(f"lambda1     : {_fmt(q.lambda1)}")
    print(f"a_r         : {_fmt(q.a_r)}")
    print(f"b_r         : {_fmt(q.b_r)}")
    print(f"mu_r        : {_fmt(q.mu_r)}")
    print(f"p_empty     : {_fmt(q.p_empty_prob)}")
    print(f"t_ud0       : {_fmt(report.t_ud0)}")
    print(f"t_ud1       : {_fmt(report.t_ud1)}")
    print(f"t_ur0       : {_fmt(report.t_ur0)}")
    print(f"t_ur1       : {_fmt(report.t_ur1)}")
    print(f"t_ud        : {_fmt(report.t_ud)}")
    print(f"t_ur        : {_fmt(report.t_ur)}")
    print(f"t_total     : {_fmt(report.t_aggregate)}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    spec = load_config(args.config)
    slots, seed, mode = _sim_args(spec, args)
    stats = simulator.run(spec.base, slots, seed, mode)
    print(f"slots            : {stats.slots}")
    print(f"warmup_slots     : {stats.warmup_slots}")
    print(f"measured_slots   : {stats.measured_slots}")
    print(f"n_batches        : {stats.n_batches}")
    print(f"delivered_direct : {stats.delivered_direct}")
    print(f"delivered_relay  : {stats.delivered_relay}")
    print(f"t_sim            : {_fmt(stats.t_sim)} +/- {_fmt(stats.t_sim_se)}")
    print(f"lambda_sim       : {_fmt(stats.lambda_sim)} +/- {_fmt(stats.lambda_sim_se)}")
    print(f"mu_sim           : {_fmt(stats.mu_sim)} +/- {_fmt(stats.mu_sim_se)}")
    print(f"p_empty_sim      : {_fmt(stats.p_empty_sim)} +/- {_fmt(stats.p_empty_se)}")
    print(f"mean_queue       : {_fmt(stats.mean_queue)}")
    print(f"max_queue        : {stats.max_queue}")
    print(f"queue_final      : {stats.queue_final}")
    print(f"drift_sim        : {_fmt(stats.drift_sim)}")
    print(f"seed             : {stats.seed}")
    print(f"mode             : {stats.mode}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = load_config(args.config)
    rows = sweep_to_csv(spec, args.output, jobs=max(args.jobs, 1))
    n_err = sum(1 for r in rows if r.get("error"))
    print(f"wrote {len(rows)} rows to {args.output}"
          + (f" ({n_err} with errors)" if n_err else ""))
    return EXIT_OK


def cmd_compare(args) -> int:
    spec = load_config(args.config)
    slots, seed, mode = _sim_args(spec, args)
    report = aggregate_throughput(spec.base, SuccessTable(spec.base))
    stats = simulator.run(spec.base, slots, seed, mode)
    result = simulator.compare(report, stats)
    print(f"{'metric':<10} {'analytic':>14} {'empirical':>14} "
          f"{'se':>12} {'z':>9}  status")
    for row in result.rows:
        if row.passed is None:
            status = "n/a"
        else:
            status = "pass" if row.passed else "FAIL"
        z = "-" if math.isnan(row.z) else f"{row.z:9.3f}"
        print(f"{row.name:<10} {row.analytic:>14.9g} {row.empirical:>14.9g} "
              f"{row.se:>12.4g} {z:>9}  {status}"
              + (f"  ({row.note})" if row.note else ""))
    if result.regime_note:
        print(f"note: {result.regime_note}")
    return EXIT_OK if result.all_passed else EXIT_COMPARISON


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handlers = {
        "analyze": cmd_analyze,
        "simulate": cmd_simulate,
        "sweep": cmd_sweep,
        "compare": cmd_compare,
    }
    try:
        return handlers[args.command](args)
    except FileNotFoundError as exc:
        print(f"mmrelay: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, ValueError) as exc:
        print(f"mmrelay: {exc}", file=sys.stderr)
        return EXIT_MODEL


if __name__ == "__main__":
    sys.exit(main())
