"""Command-line entry point: ``outage-corr sweep`` and ``outage-corr preset``."""

from __future__ import annotations

import argparse
import sys

from .mc_oracle import McConfig
from .specfun import NumericalError
from .sweep import ConfigError, PRESETS, load_config, preset, write_outputs

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="outage-corr",
        description="Outage correlation between two receivers: analytic and Monte Carlo sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a sweep described by a key=value config file")
    source = sweep.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help="flat key=value config file")
    source.add_argument("--preset", choices=sorted(PRESETS), help="run a figure preset instead")
    sweep.add_argument("--theta-grid", help="degrees, e.g. 0,45,90 or 0:180:5")
    sweep.add_argument("--process", choices=["bpp", "ppp", "tcp"])
    sweep.add_argument("--seed", type=int)
    sweep.add_argument("--engines", help="comma list of analytic, mc")
    sweep.add_argument("--out", help="CSV output path")
    sweep.add_argument(
        "--set", action="append", default=[], metavar="KEY=VALUE",
        help="override any config key (repeatable)",
    )

    pre = sub.add_parser("preset", help="reproduce a figure's parameter sets")
    pre.add_argument("name", choices=sorted(PRESETS))
    pre.add_argument("--out", required=True, help="CSV output path")
    pre.add_argument("--engines", default="analytic,mc")
    pre.add_argument("--seed", type=int, default=0)
    pre.add_argument("--n-topologies", type=int, default=100_000)
    pre.add_argument("--workers", type=int, default=1)
    for p in (sweep, pre):
        p.add_argument(
            "--no-runtime", action="store_true",
            help="leave runtime_ms empty so reruns are byte-identical",
        )
    return parser


def _sweep(args) -> None:
    if args.preset:
        if args.set or args.theta_grid or args.process:
            raise ConfigError("--preset", "presets accept only --seed, --engines, --out")
        configs = preset(
            args.preset,
            engines=_engines(args.engines or "analytic"),
            mc=_mc(100_000, args.seed or 0),
            record_runtime=not args.no_runtime,
        )
        write_outputs(configs, args.out or f"{args.preset}.csv", preset_name=args.preset)
        return
    overrides = {
        "theta_grid": args.theta_grid,
        "process": args.process,
        "seed": None if args.seed is None else str(args.seed),
        "engines": args.engines,
        "out": args.out,
    }
    for item in args.set:
        if "=" not in item:
            raise ConfigError("--set", f"expected KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        overrides[key.strip().lower()] = value.strip()
    if args.no_runtime:
        overrides["record_runtime"] = "false"
    cfg = load_config(args.config, overrides)
    write_outputs([cfg], cfg.output_path)


def _engines(text: str) -> tuple[str, ...]:
    return tuple(e.strip() for e in text.split(",") if e.strip())


def _mc(n_topologies: int, seed: int, workers: int = 1) -> McConfig:
    try:
        return McConfig(n_topologies=n_topologies, seed=seed, workers=workers)
    except ValueError as exc:
        raise ConfigError("mc", str(exc)) from None


def _preset(args) -> None:
    if args.workers < 1:
        raise ConfigError("--workers", "must be >= 1")
    configs = preset(
        args.name, engines=_engines(args.engines), mc=_mc(args.n_topologies, args.seed, args.workers),
        output_path=args.out,
        record_runtime=not args.no_runtime, workers=args.workers,
    )
    write_outputs(configs, args.out, preset_name=args.name)


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "sweep":
            _sweep(args)
        else:
            _preset(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
