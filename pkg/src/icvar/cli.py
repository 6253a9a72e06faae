"""Command line: ``icvar estimate | optimize | jb-test``.

Exit codes: 0 success (infeasible gamma rows included), 2 configuration error,
3 data error, 4 solver numerical breakdown.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from typing import Sequence

from .config import RunConfig, load_config, parse_assets, parse_dates, parse_floats, parse_intervals
from .errors import ConfigError, DataError, NumericalBreakdown
from .portfolio import estimate_panel, gamma_sweep, report_rows
from .report import (
    allocation_header,
    allocation_rows,
    bounds_title,
    caps_from_report,
    estimate_report,
    fmt_float,
    to_csv,
    to_pretty,
)
from .returns import AssetPanel, load_panel
from .risk import jarque_bera, jarque_bera_pvalue

log = logging.getLogger("icvar")

EXIT_OK, EXIT_CONFIG, EXIT_DATA, EXIT_NUMERICAL = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value config file")
    common.add_argument("--asset", action="append", metavar="TICKER:PATH",
                        help="price CSV for one asset (repeatable; replaces config assets)")
    common.add_argument("--k", type=int, dest="k_periods", help="number of periods")
    common.add_argument("--strategy", choices=("equal_count", "by_date_boundaries"), dest="period_strategy")
    common.add_argument("--boundaries", help="comma-separated ISO cut dates")
    common.add_argument("--alpha", type=float, help="tail probability; confidence is 1 - alpha")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "pretty"), dest="fmt")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="icvar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("estimate", parents=[common], help="IVaR/ICVaR report per asset and period")
    opt = sub.add_parser("optimize", parents=[common], help="solve Model 1 or 2 over a gamma sweep")
    opt.add_argument("--model", type=int, choices=(1, 2))
    opt.add_argument("--gamma", help="comma-separated gamma values")
    opt.add_argument("--cap", action="append", metavar="LO,HI",
                     help="Model 1 ICVaR cap; once for all periods or once per period")
    opt.add_argument("--floor", action="append", metavar="LO,HI",
                     help="Model 2 return floor; write --floor=-0.02,0.02 for negative values")
    opt.add_argument("--caps-from", metavar="REPORT", help="take Model 1 caps from an estimate report")
    opt.add_argument("--caps-asset", metavar="TICKER", help="asset whose ICVaR rows become the caps")
    sub.add_parser("jb-test", parents=[common], help="Jarque-Bera normality test of point returns")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    changes = {}
    if args.asset:
        changes["assets"] = parse_assets(",".join(args.asset))
    for name in ("k_periods", "period_strategy", "alpha", "fmt", "out"):
        value = getattr(args, name, None)
        if value is not None:
            changes[name] = value
    if args.boundaries:
        changes["period_boundaries"] = parse_dates(args.boundaries)
    if getattr(args, "model", None) is not None:
        changes["model"] = args.model
    if getattr(args, "gamma", None):
        changes["gammas"] = parse_floats(args.gamma)
    if getattr(args, "cap", None):
        changes["caps"] = parse_intervals(";".join(args.cap))
    if getattr(args, "floor", None):
        changes["floors"] = parse_intervals(";".join(args.floor))
    if getattr(args, "caps_from", None):
        if not args.caps_asset:
            raise ConfigError("--caps-from needs --caps-asset")
        try:
            with open(args.caps_from, encoding="utf-8") as fh:
                changes["caps"] = tuple(caps_from_report(fh.read(), args.caps_asset))
        except (OSError, ValueError, KeyError) as exc:
            raise ConfigError(f"cannot take caps from {args.caps_from}: {exc}") from exc
    return replace(cfg, **changes)


def _panel(cfg: RunConfig) -> AssetPanel:
    return load_panel(cfg.assets, cfg.k_periods, cfg.strategy(), cfg.schema)


def cmd_estimate(cfg: RunConfig) -> str:
    cfg.validate()
    panel = _panel(cfg)
    return estimate_report(report_rows(panel, estimate_panel(panel, cfg.alpha)))


def cmd_optimize(cfg: RunConfig) -> str:
    cfg.validate(need_bounds=True)
    panel = _panel(cfg)
    est = estimate_panel(panel, cfg.alpha)
    solutions = gamma_sweep(cfg.model, est, cfg.bounds, cfg.gammas)
    for s in solutions:
        if not s.optimal:
            log.info("gamma=%g: %s", s.gamma, s.status.value)
    header = allocation_header(panel.tickers)
    rows = allocation_rows(panel.tickers, solutions)
    if cfg.fmt == "csv":
        return to_csv(header, rows)
    bounds = cfg.bounds * panel.k if len(cfg.bounds) == 1 else cfg.bounds
    return to_pretty(header, rows, bounds_title(cfg.model, bounds, panel.k))


def cmd_jb_test(cfg: RunConfig) -> str:
    cfg.validate()
    panel = _panel(cfg)
    header = ["asset", "n", "jb_statistic", "skewness", "kurtosis", "p_value"]
    rows = []
    for t in panel.tickers:
        pts = panel.points(t)
        jb, skew, kurt = jarque_bera(pts)
        p = jarque_bera_pvalue(jb)
        if cfg.fmt == "csv":
            rows.append([t, str(len(pts)), fmt_float(jb), fmt_float(skew), fmt_float(kurt), fmt_float(p)])
        else:
            rows.append([t, str(len(pts)), f"{jb:.2f}", f"{skew:.4f}", f"{kurt:.4f}", f"{p:.3g}"])
    if cfg.fmt == "csv":
        return to_csv(header, rows)
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    lines.append("df = 2")
    return "\n".join(lines) + "\n"


COMMANDS = {"estimate": cmd_estimate, "optimize": cmd_optimize, "jb-test": cmd_jb_test}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        cfg = config_from_args(args)
        text = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"icvar: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"icvar: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalBreakdown as exc:
        print(f"icvar: solver breakdown: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
