import argparse
import logging
import os
from typing import List, Optional

from funutil import getLogger

from funghost.core import ConfigError, FunGhostError, SingularSystem

from .commands import (
    COMMANDS,
    build_grid,
    cmd_error_curve,
    cmd_price,
    cmd_profile,
    cmd_stability,
    cmd_table1,
)
from .config import RunConfig, load_config
from .output import Report, write_report
from .plot import plot_report

logger = getLogger("funghost")

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="funghost",
        description="Finite-difference one-touch pricing with ghost-point barrier handling.",
    )
    parser.add_argument("--config", help="INI config file", dest="config", type=str)
    parser.add_argument("--output", help="output file, stdout when omitted", dest="output", type=str)
    parser.add_argument("--format", help="output format", dest="format", choices=["csv", "json"])
    parser.add_argument("--svg", help="also write an svg plot", action="store_true")
    parser.add_argument("--quiet", help="no progress bars, warnings only", action="store_true")
    parser.add_argument("--scheme", help="explicit | crank-nicolson | implicit | tr-bdf2", type=str)
    parser.add_argument("--steps", help="time steps N", type=int)
    parser.add_argument("--grid", help="uniform | on-node", dest="grid_kind", type=str)
    parser.add_argument("--smax", help="upper end of the grid", type=float)
    parser.add_argument("--space-steps", help="space steps M", dest="space_steps", type=int)

    subparsers = parser.add_subparsers(help="sub-command help", dest="command")
    subparsers.required = True
    subparsers.add_parser("price", help="FD price at S(0) against the analytic reference")
    subparsers.add_parser("table1", help="theoretical and empirical step thresholds over S_max")
    subparsers.add_parser("error-curve", help="explicit-scheme error over a sweep of N")
    subparsers.add_parser("profile", help="early time slices next to the barrier")
    subparsers.add_parser("stability", help="stability report and eps/dS scan")
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    overrides = {
        "scheme": {"kind": args.scheme, "steps": args.steps},
        "grid": {"kind": args.grid_kind, "smax": args.smax, "space_steps": args.space_steps},
        "output": {"path": args.output, "format": args.format},
    }
    if args.svg:
        overrides["output"]["svg"] = "true"
    if args.quiet:
        overrides["output"]["quiet"] = "true"
    return overrides


def _svg_path(config: RunConfig, command: str) -> str:
    if config.output.path:
        return os.path.splitext(config.output.path)[0] + ".svg"
    return f"{command}.svg"


def run(command: str, config: RunConfig) -> Report:
    report = COMMANDS[command](config)
    write_report(report, config.output.path, config.output.format)
    if config.output.svg:
        plot_report(report, _svg_path(config, command))
    return report


def main(argv: Optional[List[str]] = None) -> int:
    """
    命令行入口
    :return: 0 运行完成(发散也算)，1 数值失败，2 用法或配置错误
    """
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, _overrides(args))
    except ConfigError as e:
        logger.error(f"{e}")
        return EXIT_USAGE
    if config.output.quiet:
        logging.getLogger("funghost").setLevel(logging.WARNING)

    try:
        run(args.command, config)
    except SingularSystem as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_NUMERICAL
    except (FunGhostError, ValueError, OSError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_USAGE
    return EXIT_OK


__all__ = [
    "EXIT_NUMERICAL",
    "EXIT_OK",
    "EXIT_USAGE",
    "Report",
    "RunConfig",
    "build_grid",
    "build_parser",
    "cmd_error_curve",
    "cmd_price",
    "cmd_profile",
    "cmd_stability",
    "cmd_table1",
    "load_config",
    "main",
    "plot_report",
    "run",
    "write_report",
]
