"""Command-line front end: run/sweep configs, presets, oracle validation."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import warnings
from pathlib import Path

from .analytics import FirstOrderValidityWarning

from .experiments import (
    ConfigError,
    load_config,
    oracle_validate,
    run_sweep,
)
from .presets import PRESETS, preset_dict


def _apply_overrides(config, args):
    updates = {}
    if args.seed is not None:
        updates["base_seed"] = args.seed
    if args.n_sims is not None:
        updates["n_sims"] = args.n_sims
    if args.out is not None:
        updates["output_path"] = args.out
    return dataclasses.replace(config, **updates) if updates else config


def _cmd_run(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    points = config.grid()
    if len(points) != 1:
        raise ConfigError(
            f"'run' needs a single-point config, this grid has {len(points)}")
    rows = run_sweep(config, workers=1, json_mirror=args.json)
    row = rows[0]
    print(f"fidelity {row['mean_fidelity']:.6f} "
          f"+/- {row['stderr_fidelity']:.6f}  "
          f"query_time {row['mean_query_time']:.6e} s "
          f"+/- {row['stderr_query_time']:.6e} s")
    print(f"wrote {config.output_path}")
    return 0


def _cmd_sweep(args) -> int:
    config = _apply_overrides(load_config(args.config), args)
    rows = run_sweep(config, workers=args.workers, json_mirror=args.json)
    print(f"wrote {len(rows)} rows to {config.output_path}")
    return 0


def _cmd_oracle_validate(args) -> int:
    report = oracle_validate()
    text = json.dumps(report, indent=1, sort_keys=True)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0


def _cmd_preset(args) -> int:
    try:
        cfg = preset_dict(args.name)
    except KeyError as exc:
        raise ConfigError(str(exc)) from exc
    out = Path(args.out) if args.out else Path(f"{args.name}.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(cfg, indent=1, sort_keys=True) + "\n")
    print(f"wrote {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qramsim",
        description="Noisy GHZ-distribution sweeps for network QRAM")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None,
                       help="override the base seed")
        p.add_argument("--n-sims", type=int, default=None,
                       help="override the per-point simulation count")
        p.add_argument("--out", type=str, default=None,
                       help="override the output path")
        p.add_argument("--json", action="store_true",
                       help="also write a JSON mirror of the output")

    p_run = sub.add_parser("run", help="evaluate a single-point config")
    p_run.add_argument("config")
    common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="evaluate a whole config grid")
    p_sweep.add_argument("config")
    common(p_sweep)
    p_sweep.add_argument("--workers", type=int, default=1,
                         help="worker processes for grid points")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_val = sub.add_parser("oracle-validate",
                           help="dense-oracle vs analytics validation report")
    p_val.add_argument("--out", type=str, default=None)
    p_val.set_defaults(func=_cmd_oracle_validate)

    p_preset = sub.add_parser("preset", help="write a shipped preset config")
    p_preset.add_argument("name", help=f"one of: {', '.join(sorted(PRESETS))}")
    p_preset.add_argument("--out", type=str, default=None)
    p_preset.set_defaults(func=_cmd_preset)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    warnings.filterwarnings("once", category=FirstOrderValidityWarning)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
