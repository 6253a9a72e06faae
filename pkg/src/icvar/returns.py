"""OHLC ingestion, interval log-returns and period partitioning."""

from __future__ import annotations

import csv
import datetime as dt
import io
import math
from dataclasses import dataclass, field
from typing import IO, Mapping, Sequence, Union

from .errors import (
    BoundariesOutOfRange,
    ConfigError,
    DataError,
    DuplicateDate,
    EmptyPeriod,
    InsufficientData,
    MalformedRow,
    NonPositivePrice,
    OrderViolation,
)
from .interval import Interval


@dataclass(frozen=True)
class PriceBar:
    date: dt.date
    close: float
    high: float
    low: float


@dataclass(frozen=True)
class ReturnObservation:
    date: dt.date
    point: float
    interval: Interval


@dataclass(frozen=True)
class ColumnSchema:
    date: str = "date"
    close: str = "close"
    high: str = "high"
    low: str = "low"


def parse_prices(source: Union[IO[str], IO[bytes], str, bytes],
                 schema: ColumnSchema = ColumnSchema()) -> list[PriceBar]:
    """Read one asset's daily bars from CSV text with a header row.

    Rows may come in any order; the result is sorted by date. Line numbers in
    errors count the header as line 1.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8-sig")
    if isinstance(source, str):
        source = io.StringIO(source)
    else:
        probe = source.read()
        if isinstance(probe, bytes):
            probe = probe.decode("utf-8-sig")
        source = io.StringIO(probe)

    reader = csv.reader(source)
    header = next(reader, None)
    if header is None:
        return []
    names = [h.strip().lstrip("\ufeff") for h in header]
    try:
        cols = {key: names.index(getattr(schema, key)) for key in ("date", "close", "high", "low")}
    except ValueError as exc:
        raise MalformedRow(1, f"header {names} lacks a column required by {schema}") from exc

    bars: dict[dt.date, PriceBar] = {}
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        try:
            date = dt.date.fromisoformat(row[cols["date"]].strip())
            close, high, low = (float(row[cols[k]]) for k in ("close", "high", "low"))
        except (IndexError, ValueError) as exc:
            raise MalformedRow(line, f"cannot parse {row!r}: {exc}") from exc
        if not all(math.isfinite(p) and p > 0 for p in (close, high, low)):
            raise NonPositivePrice(line, f"prices must be positive and finite, got {row!r}")
        if low > high or not (low <= close <= high):
            raise OrderViolation(line, f"need low <= close <= high, got low={low} close={close} high={high}")
        if date in bars:
            raise DuplicateDate(line, f"date {date} appears twice")
        bars[date] = PriceBar(date, close, high, low)
    return [bars[d] for d in sorted(bars)]


def log_returns(bars: Sequence[PriceBar]) -> list[ReturnObservation]:
    """Point and interval log-returns, each relative to the previous close.

    The first bar has no previous close and yields nothing.
    """
    if len(bars) < 2:
        raise InsufficientData(f"need at least 2 price bars, got {len(bars)}")
    out = []
    for prev, bar in zip(bars, bars[1:]):
        base = math.log(prev.close)
        point = math.log(bar.close) - base
        lo = math.log(bar.low) - base
        hi = math.log(bar.high) - base
        # low <= close <= high holds on prices; keep it on the logged values too
        lo, hi = min(lo, point), max(hi, point)
        out.append(ReturnObservation(bar.date, point, Interval(lo, hi)))
    return out


@dataclass(frozen=True)
class EqualCount:
    """k contiguous blocks whose sizes differ by at most one, earlier blocks larger."""


@dataclass(frozen=True)
class ByDateBoundaries:
    """Each cut date opens a new period: observations on or after it go to the next block."""

    cuts: tuple[dt.date, ...]


PeriodStrategy = Union[EqualCount, ByDateBoundaries]


@dataclass
class AssetPanel:
    tickers: list[str]
    dates: list[dt.date]
    observations: dict[str, list[ReturnObservation]]
    periods: list[range] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.periods)

    def intervals(self, ticker: str, period: int | None = None) -> list[Interval]:
        """Interval returns of one asset, for period ``period`` (0-based) or pooled."""
        obs = self.observations[ticker]
        idx = range(len(obs)) if period is None else self.periods[period]
        return [obs[t].interval for t in idx]

    def points(self, ticker: str, period: int | None = None) -> list[float]:
        obs = self.observations[ticker]
        idx = range(len(obs)) if period is None else self.periods[period]
        return [obs[t].point for t in idx]


def align(series: Mapping[str, Sequence[ReturnObservation]]) -> tuple[list[str], list[dt.date], dict[str, list[ReturnObservation]]]:
    """Inner-join return series on date; ticker order follows the mapping."""
    if not series:
        raise ConfigError("no assets given")
    tickers = list(series)
    common = set.intersection(*(set(o.date for o in series[t]) for t in tickers))
    dates = sorted(common)
    aligned = {t: [o for o in series[t] if o.date in common] for t in tickers}
    return tickers, dates, aligned


def partition_periods(series: Mapping[str, Sequence[ReturnObservation]], k: int,
                      strategy: PeriodStrategy = EqualCount()) -> AssetPanel:
    """Align assets on common dates and split them into ``k`` contiguous periods."""
    if k < 1:
        raise ConfigError(f"k must be at least 1, got {k}")
    tickers, dates, aligned = align(series)
    n = len(dates)

    if isinstance(strategy, EqualCount):
        if n < k:
            raise EmptyPeriod(f"{n} common dates cannot fill {k} periods")
        base, extra = divmod(n, k)
        sizes = [base + (1 if j < extra else 0) for j in range(k)]
    elif isinstance(strategy, ByDateBoundaries):
        cuts = list(strategy.cuts)
        if len(cuts) != k - 1:
            raise ConfigError(f"{k} periods need {k - 1} cut dates, got {len(cuts)}")
        if not n:
            raise EmptyPeriod("no common dates")
        if cuts != sorted(set(cuts)):
            raise BoundariesOutOfRange("cut dates must be strictly increasing")
        for c in cuts:
            if c <= dates[0] or c > dates[-1]:
                raise BoundariesOutOfRange(f"cut date {c} outside ({dates[0]}, {dates[-1]}]")
        edges = [0] + [next(i for i, d in enumerate(dates) if d >= c) for c in cuts] + [n]
        sizes = [b - a for a, b in zip(edges, edges[1:])]
    else:
        raise ConfigError(f"unknown period strategy {strategy!r}")

    periods, start = [], 0
    for j, size in enumerate(sizes):
        if size == 0:
            raise EmptyPeriod(f"period {j + 1} has no observations")
        periods.append(range(start, start + size))
        start += size
    return AssetPanel(tickers, dates, aligned, periods)


def load_panel(files: Mapping[str, str], k: int, strategy: PeriodStrategy = EqualCount(),
               schema: ColumnSchema = ColumnSchema()) -> AssetPanel:
    series = {}
    for ticker, path in files.items():
        try:
            with open(path, "rb") as fh:
                bars = parse_prices(fh, schema)
            series[ticker] = log_returns(bars)
        except OSError as exc:
            raise DataError(f"{ticker} ({path}): {exc}") from exc
        except DataError as exc:
            exc.args = (f"{ticker} ({path}): {exc.args[0]}",) + exc.args[1:]
            raise
    return partition_periods(series, k, strategy)
