"""
运行配置

声明:
INI 文件，优先级从低到高: 内置默认值 < 配置文件 < 环境变量 FUNGHOST_<SECTION>_<KEY> < 命令行参数。
期限结构写作 `rate = 0.01, 0.03` 加 `rate_breakpoints = 0.5`，单个数即常数。
"""

import configparser
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Mapping, Optional, Tuple

from funutil import getLogger

from funghost.core import (
    ConfigError,
    ContractSpec,
    MarketParams,
    SchemeConfig,
    TermStructure,
)

logger = getLogger("funghost")

ENV_PREFIX = "FUNGHOST_"

TABLE1_SMAX = "13662.0, 13702.0, 13760.0, 13772.0, 13778.0, 13782.0, 13784.0"
EPS_RATIOS = "0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5"

DEFAULTS: Dict[str, Dict[str, str]] = {
    "market": {
        "spot": "6317.80",
        "rate": "0.0",
        "rate_breakpoints": "",
        "dividend": "0.0",
        "dividend_breakpoints": "",
        "vol": "0.2",
        "vol_breakpoints": "",
    },
    "contract": {"barrier": "7581.36", "maturity": "1.0", "rebate": "1.0"},
    "grid": {"kind": "uniform", "smax": "", "space_steps": "100"},
    "scheme": {
        "kind": "explicit",
        "steps": "3600",
        "divergence_bound": "10.0",
        "alpha": "",
    },
    "output": {"path": "", "format": "csv", "svg": "false", "quiet": "false"},
    "table1": {"smax": TABLE1_SMAX, "empirical": "true"},
    "error_curve": {
        "n_min": "100",
        "n_max": "6000",
        "points": "24",
        "band_min": "3250",
        "band_max": "3600",
        "band_points": "15",
    },
    "profile": {"snapshot_steps": "5, 9, 17", "width": "6"},
    "stability": {"eps_ratios": EPS_RATIOS, "iterations": "500"},
}


class GridKind(str, Enum):
    UNIFORM = "uniform"
    ON_NODE = "on-node"

    @classmethod
    def parse(cls, value) -> "GridKind":
        key = str(value).strip().lower().replace("_", "-")
        aliases = {"uniform-ghost": cls.UNIFORM, "ghost": cls.UNIFORM, "barrier-on-node": cls.ON_NODE}
        return aliases.get(key) or cls(key)


@dataclass(frozen=True)
class GridConfig:
    kind: GridKind = GridKind.UNIFORM
    smax: Optional[float] = None
    space_steps: int = 100


@dataclass(frozen=True)
class OutputConfig:
    path: Optional[str] = None
    format: str = "csv"
    svg: bool = False
    quiet: bool = False


@dataclass(frozen=True)
class Table1Config:
    smax_values: Tuple[float, ...] = ()
    empirical: bool = True


@dataclass(frozen=True)
class ErrorCurveConfig:
    n_min: int = 100
    n_max: int = 6000
    points: int = 24
    band_min: int = 3250
    band_max: int = 3600
    band_points: int = 15


@dataclass(frozen=True)
class ProfileConfig:
    snapshot_steps: Tuple[int, ...] = (5, 9, 17)
    width: int = 6


@dataclass(frozen=True)
class StabilityConfig:
    eps_ratios: Tuple[float, ...] = ()
    iterations: int = 500


@dataclass(frozen=True)
class RunConfig:
    """一次调用的完整配置"""

    market: MarketParams
    contract: ContractSpec
    grid: GridConfig
    scheme: SchemeConfig
    output: OutputConfig = field(default_factory=OutputConfig)
    table1: Table1Config = field(default_factory=Table1Config)
    error_curve: ErrorCurveConfig = field(default_factory=ErrorCurveConfig)
    profile: ProfileConfig = field(default_factory=ProfileConfig)
    stability: StabilityConfig = field(default_factory=StabilityConfig)
    source: Optional[str] = None


def _floats(text: str) -> Tuple[float, ...]:
    return tuple(float(x) for x in text.replace(";", ",").split(",") if x.strip())


def _ints(text: str) -> Tuple[int, ...]:
    return tuple(int(x) for x in text.replace(";", ",").split(",") if x.strip())


def _curve(section: configparser.SectionProxy, name: str) -> TermStructure:
    values = _floats(section.get(name, ""))
    breakpoints = _floats(section.get(f"{name}_breakpoints", ""))
    if not values:
        raise ConfigError(f"[market] {name} is empty")
    return TermStructure(breakpoints=breakpoints, values=values)


def _env_overrides(environ: Mapping[str, str]) -> Dict[str, Dict[str, str]]:
    """FUNGHOST_ERROR_CURVE_N_MAX -> {"error_curve": {"n_max": ...}}"""
    overrides: Dict[str, Dict[str, str]] = {}
    sections = sorted(DEFAULTS, key=len, reverse=True)
    for name, value in environ.items():
        if not name.startswith(ENV_PREFIX):
            continue
        rest = name[len(ENV_PREFIX):].lower()
        for section in sections:
            if rest.startswith(section + "_"):
                overrides.setdefault(section, {})[rest[len(section) + 1:]] = value
                break
        else:
            logger.warning(f"ignoring environment variable {name}: unknown section")
    return overrides


def _read(path: Optional[str]) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(interpolation=None)
    parser.read_dict(DEFAULTS)
    if not path:
        return parser
    if not os.path.isfile(path):
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            parser.read_file(f, source=path)
    except configparser.Error as e:
        raise ConfigError(f"cannot parse {path}: {e}") from e
    unknown = set(parser.sections()) - set(DEFAULTS)
    if unknown:
        raise ConfigError(f"unknown sections in {path}: {sorted(unknown)}")
    return parser


def _build(parser: configparser.ConfigParser, source: Optional[str]) -> RunConfig:
    market = parser["market"]
    contract = parser["contract"]
    grid = parser["grid"]
    scheme = parser["scheme"]
    output = parser["output"]
    table1 = parser["table1"]
    curve = parser["error_curve"]
    profile = parser["profile"]
    stability = parser["stability"]

    scheme_kwargs = {
        "kind": scheme.get("kind"),
        "steps": scheme.getint("steps"),
        "divergence_bound": scheme.getfloat("divergence_bound"),
    }
    if scheme.get("alpha", "").strip():
        scheme_kwargs["alpha"] = scheme.getfloat("alpha")
    smax = grid.get("smax", "").strip()
    fmt = output.get("format").strip().lower()
    if fmt not in ("csv", "json"):
        raise ConfigError(f"[output] format must be csv or json, got {fmt!r}")

    return RunConfig(
        market=MarketParams(
            spot=market.getfloat("spot"),
            rate=_curve(market, "rate"),
            dividend=_curve(market, "dividend"),
            vol=_curve(market, "vol"),
        ),
        contract=ContractSpec(
            barrier=contract.getfloat("barrier"),
            maturity=contract.getfloat("maturity"),
            rebate=contract.getfloat("rebate"),
        ),
        grid=GridConfig(
            kind=GridKind.parse(grid.get("kind")),
            smax=float(smax) if smax else None,
            space_steps=grid.getint("space_steps"),
        ),
        scheme=SchemeConfig(**scheme_kwargs),
        output=OutputConfig(
            path=output.get("path").strip() or None,
            format=fmt,
            svg=output.getboolean("svg"),
            quiet=output.getboolean("quiet"),
        ),
        table1=Table1Config(
            smax_values=_floats(table1.get("smax")),
            empirical=table1.getboolean("empirical"),
        ),
        error_curve=ErrorCurveConfig(
            n_min=curve.getint("n_min"),
            n_max=curve.getint("n_max"),
            points=curve.getint("points"),
            band_min=curve.getint("band_min"),
            band_max=curve.getint("band_max"),
            band_points=curve.getint("band_points"),
        ),
        profile=ProfileConfig(
            snapshot_steps=_ints(profile.get("snapshot_steps")),
            width=profile.getint("width"),
        ),
        stability=StabilityConfig(
            eps_ratios=_floats(stability.get("eps_ratios")),
            iterations=stability.getint("iterations"),
        ),
        source=source,
    )


def load_config(
    path: Optional[str] = None,
    overrides: Optional[Mapping[str, Mapping[str, str]]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> RunConfig:
    """
    读取配置
    :param path: INI 文件路径，None 表示只用默认值
    :param overrides: 命令行参数给出的覆盖值 {section: {key: value}}
    :param environ: 环境变量，默认 os.environ
    :raises ConfigError: 文件不存在、无法解析或取值不合法
    """
    parser = _read(path)
    layers = [_env_overrides(os.environ if environ is None else environ), overrides or {}]
    for layer in layers:
        for section, values in layer.items():
            if section not in DEFAULTS:
                raise ConfigError(f"unknown config section {section!r}")
            for key, value in values.items():
                if value is not None:
                    parser.set(section, key, str(value))
    try:
        return _build(parser, path)
    except ConfigError:
        raise
    except (ValueError, configparser.Error) as e:
        raise ConfigError(f"invalid configuration{f' in {path}' if path else ''}: {e}") from e
