"""Run configuration: flat ``key = value`` files, overridable from the CLI.

Recognised keys::

    assets          = ST01:path/ST01.csv, ST02:path/ST02.csv
    k_periods       = 5
    period_strategy = equal_count | by_date_boundaries
    period_boundaries = 2017-01-03, 2018-01-02, ...
    alpha           = 0.05
    model           = 1 | 2
    gamma           = 0.15, 0.05, 0.01
    caps            = [0.008,0.08]            (one interval, or one per period, ';'-separated)
    floors          = [-0.025,0.025]
    format          = csv | pretty
    out             = path
    column.date / column.close / column.high / column.low = header names

Relative asset paths are resolved against the config file's directory.
"""

from __future__ import annotations

import datetime as dt
import os
from dataclasses import dataclass, field, replace

from .errors import AlphaOutOfRange, ConfigError
from .interval import Interval, parse_interval
from .portfolio import TABLE_GAMMAS
from .returns import ByDateBoundaries, ColumnSchema, EqualCount, PeriodStrategy

STRATEGIES = ("equal_count", "by_date_boundaries")


@dataclass(frozen=True)
class RunConfig:
    assets: dict[str, str] = field(default_factory=dict)
    k_periods: int = 5
    period_strategy: str = "equal_count"
    period_boundaries: tuple[dt.date, ...] = ()
    alpha: float = 0.05
    model: int = 1
    gammas: tuple[float, ...] = TABLE_GAMMAS
    caps: tuple[Interval, ...] = ()
    floors: tuple[Interval, ...] = ()
    fmt: str = "pretty"
    out: str | None = None
    schema: ColumnSchema = ColumnSchema()

    def strategy(self) -> PeriodStrategy:
        if self.period_strategy == "by_date_boundaries":
            return ByDateBoundaries(self.period_boundaries)
        return EqualCount()

    @property
    def bounds(self) -> tuple[Interval, ...]:
        return self.caps if self.model == 1 else self.floors

    def validate(self, need_bounds: bool = False) -> RunConfig:
        """Check everything that can be checked without touching data files."""
        if not self.assets:
            raise ConfigError("no assets configured")
        if not (isinstance(self.alpha, float) and 0 < self.alpha < 1):
            raise AlphaOutOfRange(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if self.k_periods < 1:
            raise ConfigError(f"k_periods must be >= 1, got {self.k_periods}")
        if self.period_strategy not in STRATEGIES:
            raise ConfigError(f"period_strategy must be one of {STRATEGIES}, got {self.period_strategy!r}")
        if self.period_strategy == "by_date_boundaries" and len(self.period_boundaries) != self.k_periods - 1:
            raise ConfigError(f"{self.k_periods} periods need {self.k_periods - 1} boundary dates")
        if self.model not in (1, 2):
            raise ConfigError(f"model must be 1 or 2, got {self.model}")
        if not self.gammas or any(not 0 <= g <= 1 for g in self.gammas):
            raise ConfigError(f"gamma values must lie in [0, 1], got {self.gammas}")
        if self.fmt not in ("csv", "pretty"):
            raise ConfigError(f"format must be csv or pretty, got {self.fmt!r}")
        if need_bounds:
            bounds = self.bounds
            what = "caps" if self.model == 1 else "floors"
            if not bounds:
                raise ConfigError(f"model {self.model} needs {what}")
            if len(bounds) not in (1, self.k_periods):
                raise ConfigError(f"need 1 or {self.k_periods} {what}, got {len(bounds)}")
        return self


def _split(value: str, sep: str = ",") -> list[str]:
    return [v.strip() for v in value.split(sep) if v.strip()]


def parse_intervals(value: str) -> tuple[Interval, ...]:
    try:
        return tuple(parse_interval(part) for part in _split(value, ";"))
    except ValueError as exc:
        raise ConfigError(f"bad interval list {value!r}: {exc}") from exc


def parse_floats(value: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in _split(value))
    except ValueError as exc:
        raise ConfigError(f"bad number list {value!r}") from exc


def parse_dates(value: str) -> tuple[dt.date, ...]:
    try:
        return tuple(dt.date.fromisoformat(v) for v in _split(value))
    except ValueError as exc:
        raise ConfigError(f"bad date list {value!r}") from exc


def parse_assets(value: str, base_dir: str = "") -> dict[str, str]:
    assets = {}
    for item in _split(value):
        ticker, sep, path = item.partition(":")
        if not sep or not ticker.strip() or not path.strip():
            raise ConfigError(f"asset entries look like TICKER:path, got {item!r}")
        path = path.strip()
        if base_dir and not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        if ticker.strip() in assets:
            raise ConfigError(f"asset {ticker.strip()!r} listed twice")
        assets[ticker.strip()] = path
    return assets


def _number(value: str, kind, key: str):
    try:
        return kind(value)
    except ValueError as exc:
        raise ConfigError(f"{key}: cannot parse {value!r}") from exc


def apply_settings(cfg: RunConfig, settings: dict[str, str], base_dir: str = "") -> RunConfig:
    changes: dict = {}
    schema = {}
    for key, value in settings.items():
        if key == "assets":
            changes["assets"] = parse_assets(value, base_dir)
        elif key == "k_periods":
            changes["k_periods"] = _number(value, int, key)
        elif key == "period_strategy":
            changes["period_strategy"] = value
        elif key == "period_boundaries":
            changes["period_boundaries"] = parse_dates(value)
        elif key == "alpha":
            changes["alpha"] = _number(value, float, key)
        elif key == "model":
            changes["model"] = _number(value, int, key)
        elif key == "gamma":
            changes["gammas"] = parse_floats(value)
        elif key == "caps":
            changes["caps"] = parse_intervals(value)
        elif key == "floors":
            changes["floors"] = parse_intervals(value)
        elif key == "format":
            changes["fmt"] = value
        elif key == "out":
            changes["out"] = value
        elif key.startswith("column."):
            field_name = key.split(".", 1)[1]
            if field_name not in ("date", "close", "high", "low"):
                raise ConfigError(f"unknown column key {key!r}")
            schema[field_name] = value
        else:
            raise ConfigError(f"unknown config key {key!r}")
    if schema:
        changes["schema"] = replace(cfg.schema, **schema)
    return replace(cfg, **changes)


def read_config_text(text: str) -> dict[str, str]:
    settings = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        settings[key.strip()] = value.strip()
    return settings


def load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return apply_settings(RunConfig(), read_config_text(text), os.path.dirname(os.path.abspath(path)))
