"""Command-line entry point: ``luckgrid run | sweep | table``."""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

from luckgrid.config import SweepSpec, load_config, parse_combo
from luckgrid.engine import run
from luckgrid.errors import ConfigError, InvalidInputError
from luckgrid.export import export_run
from luckgrid.model import MovementRule, NetworkRule, SimParams
from luckgrid.sweep import SweepError, read_summary_csv, render_table, run_sweep

PROG = "luckgrid"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description="Talent-vs-luck simulator with social networks.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{run,sweep,table}")

    p_run = sub.add_parser("run", help="simulate one run and export its CSV files")
    p_run.add_argument("--config", type=Path, help="key = value config file")
    p_run.add_argument("--network", choices=[r.value for r in NetworkRule])
    p_run.add_argument("--movement", choices=[r.value for r in MovementRule])
    p_run.add_argument("--seed", type=int)
    p_run.add_argument("--out", type=Path, default=Path("out"))

    p_sweep = sub.add_parser("sweep", help="run all strategy combos over replicate seeds")
    p_sweep.add_argument("--config", type=Path)
    p_sweep.add_argument("--replicates", type=int)
    p_sweep.add_argument("--seed", type=int, help="base seed")
    p_sweep.add_argument("--out", type=Path)
    p_sweep.add_argument("--combos", help="comma-separated Network-Movement list (default: all 12)")
    p_sweep.add_argument("--jobs", type=int, help="worker processes (default: $LUCKGRID_JOBS or 1)")

    p_table = sub.add_parser("table", help="render a summary.csv as an aligned table")
    p_table.add_argument("summary", type=Path)
    return parser


def _base_config(path: Path | None) -> SimParams | SweepSpec:
    return SimParams() if path is None else load_config(path)


def _cmd_run(args) -> int:
    cfg = _base_config(args.config)
    params = cfg.base if isinstance(cfg, SweepSpec) else cfg
    changes = {}
    if args.network:
        changes["network_rule"] = NetworkRule(args.network)
    if args.movement:
        changes["movement_rule"] = MovementRule(args.movement)
    if args.seed is not None:
        changes["seed"] = args.seed
    params = params.replace(**changes)
    result = run(params)
    export_run(result, args.out)
    s = result.summary
    print(f"{params.network_rule.value}-{params.movement_rule.value} seed {params.seed}: "
          f"mean {s.mean_wealth:.4f}  std {s.std_wealth:.4f}  gini {s.gini:.4f} -> {args.out}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = _base_config(args.config)
    spec = cfg if isinstance(cfg, SweepSpec) else SweepSpec(base=cfg)
    changes = {}
    if args.replicates is not None:
        changes["replicates"] = args.replicates
    if args.seed is not None:
        changes["base_seed"] = args.seed
    if args.out is not None:
        changes["output_dir"] = args.out
    if args.combos:
        changes["combos"] = tuple(parse_combo(c) for c in args.combos.split(",") if c.strip())
    spec = dataclasses.replace(spec, **changes)
    rows = run_sweep(spec, jobs=args.jobs)
    print(render_table(rows))
    print(f"wrote {spec.output_dir / 'summary.csv'}")
    return 0


def _cmd_table(args) -> int:
    print(render_table(read_summary_csv(args.summary)))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {"run": _cmd_run, "sweep": _cmd_sweep, "table": _cmd_table}
    try:
        return handlers[args.command](args)
    except (ConfigError, InvalidInputError, SweepError, OSError, ValueError, KeyError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
