"""Command-line entry point.

Exit codes: 0 success, 1 configuration/usage error, 2 computation error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from deltaxai import kernels
from deltaxai import report as _report
from deltaxai.curves import curves_csv, export_curves, render_curves_svg
from deltaxai.delta_global import delta_global
from deltaxai.errors import ConfigError
from deltaxai.scenarios import builtin, load_config, run_scenario, scenario_names
from deltaxai.shapley import shapley_exact

log = logging.getLogger("deltaxai")

OUT_ENV = "DELTAXAI_OUT"
DEFAULT_OUT = "deltaxai-out"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message, "arguments")


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, help="master seed (population and bootstrap)")
    p.add_argument("--train-n", type=int, help="number of sampled training rows")
    p.add_argument("--bootstrap", "-L", type=int, help="bootstrap iterations")
    p.add_argument("--out", type=Path, help=f"output directory (default ${OUT_ENV} or ./{DEFAULT_OUT})")
    p.add_argument("--format", choices=("json", "csv"), help="report format; overrides the config")
    p.add_argument("--workers", type=int, default=1, help="threads for bootstrap replicates")
    p.add_argument("--quiet", "-q", action="store_true")
    return p


def _source(p):
    p.add_argument("config", nargs="?", type=Path, help="JSON scenario config")
    p.add_argument("--scenario", help="built-in scenario name instead of a config file")


def build_parser():
    common = _common()
    parser = _Parser(prog="deltaxai", description="Local delta-XAI explanations and baselines.")
    parser.add_argument("--version", action="version", version="deltaxai 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("explain", parents=[common], help="run a scenario from a JSON config")
    p.add_argument("config", type=Path)

    p = sub.add_parser("scenario", parents=[common], help="run a built-in scenario")
    p.add_argument("name", nargs="?", choices=scenario_names(), metavar="NAME")
    p.add_argument("--list", action="store_true", help="list built-in scenarios")

    p = sub.add_parser("shapley", parents=[common], help="exact Shapley values")
    _source(p)

    p = sub.add_parser("global", parents=[common], help="global delta index per feature")
    _source(p)
    p.add_argument("--feature", action="append", help="feature name or 0-based index (repeatable)")
    p.add_argument("--partitions", "-K", type=int, default=15)

    p = sub.add_parser("curves", parents=[common], help="export density curves (CSV + SVG)")
    _source(p)
    p.add_argument("--grid-points", "-G", type=int, default=256)
    return parser


def _out_dir(args):
    if args.out is not None:
        return args.out
    return Path(os.environ.get(OUT_ENV) or DEFAULT_OUT)


def _config(args):
    if getattr(args, "scenario", None):
        if getattr(args, "config", None):
            raise ConfigError("give either a config file or --scenario, not both", "arguments")
        cfg = builtin(args.scenario)
    elif getattr(args, "config", None):
        cfg = load_config(args.config)
    else:
        raise ConfigError("a config file or --scenario is required", "arguments")
    return cfg.with_overrides(seed=args.seed, train_n=args.train_n, bootstrap=args.bootstrap)


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    log.info("wrote %s", path)


def _cmd_run(args, cfg):
    outputs = None
    if args.format:
        outputs = {"report_json": args.format == "json", "report_csv": args.format == "csv"}
    res = run_scenario(cfg, _out_dir(args), workers=args.workers, outputs=outputs)
    for path in res.files.values():
        log.info("wrote %s", path)
    if args.format == "csv":
        sys.stdout.write(_report.report_csv(res.report))
    else:
        sys.stdout.write(_report.report_json(res.report))


def _resolve_features(names, requested):
    if not requested:
        return list(range(len(names)))
    idx = []
    for r in requested:
        if r in names:
            idx.append(names.index(r))
        elif r.isdigit() and int(r) < len(names):
            idx.append(int(r))
        else:
            raise ConfigError(f"unknown feature {r!r}", "--feature")
    return idx


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as exc:
        print(f"deltaxai: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    log.debug("kernel backend: %s", kernels.backend())
    try:
        if args.command == "scenario":
            if args.list or not args.name:
                print("\n".join(scenario_names()))
                return 0
            cfg = builtin(args.name).with_overrides(args.seed, args.train_n, args.bootstrap)
            _cmd_run(args, cfg)
        elif args.command == "explain":
            _cmd_run(args, _config(args))
        elif args.command == "shapley":
            cfg = _config(args)
            data = cfg.sample()
            res = shapley_exact(cfg.model, data, cfg.instance)
            text = _report.dumps(_report.shapley_to_dict(res, data.feature_names))
            _write(_out_dir(args) / f"{cfg.name}_shapley.json", text)
            sys.stdout.write(text)
        elif args.command == "global":
            cfg = _config(args)
            data = cfg.sample()
            rows = []
            for i in _resolve_features(list(data.feature_names), args.feature):
                est = delta_global(cfg.model, data, i, args.partitions)
                rows.append(_report.global_to_dict(data.feature_names[i], est))
            text = _report.dumps(rows)
            _write(_out_dir(args) / f"{cfg.name}_global.json", text)
            sys.stdout.write(text)
        elif args.command == "curves":
            cfg = _config(args)
            data = cfg.sample()
            table = export_curves(cfg.model, data, cfg.instance, args.grid_points)
            out = _out_dir(args)
            _write(out / f"{cfg.name}_curves.csv", curves_csv(table))
            _write(out / f"{cfg.name}_curves.svg", render_curves_svg(table, title=cfg.name))
    except ConfigError as exc:
        print(f"deltaxai: config error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, IndexError, OSError) as exc:
        print(f"deltaxai: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
