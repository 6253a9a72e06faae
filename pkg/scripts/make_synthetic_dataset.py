#!/usr/bin/env python3
"""Generate the bundled synthetic OHLC dataset (10 assets, daily bars 2016-01 .. 2020-09).

Closes follow a GBM with Student-t(5) shocks split between an overnight gap
and the intraday move; the high/low range is drawn around the open/close.  Prices are written with two decimals, the way
quotes arrive, so the CSVs themselves are the fixture and regeneration is only
needed if the generator changes.

    python scripts/make_synthetic_dataset.py [--out data/synthetic] [--seed 20160104]
"""

import argparse
import csv
import datetime as dt
import os

import numpy as np

# (annual drift, annual vol, starting price)
ASSETS = {
    "ST01": (0.02, 0.22, 5.10),
    "ST02": (0.05, 0.30, 12.40),
    "ST03": (0.00, 0.35, 8.70),
    "ST04": (0.06, 0.40, 24.00),
    "ST05": (0.04, 0.15, 6.30),
    "ST06": (0.20, 0.32, 33.50),
    "ST07": (0.08, 0.38, 17.20),
    "ST08": (0.06, 0.20, 14.80),
    "ST09": (0.28, 0.36, 58.00),
    "ST10": (0.10, 0.45, 9.90),
}

GAP_SHARE = 0.8
RANGE_SHARE = 0.35


def business_days(start: dt.date, end: dt.date) -> list[dt.date]:
    days, d = [], start
    while d <= end:
        if d.weekday() < 5:
            days.append(d)
        d += dt.timedelta(days=1)
    return days


def simulate(rng: np.random.Generator, days: int, drift: float, vol: float, s0: float):
    daily_mu, daily_sigma = drift / 252, vol / np.sqrt(252)
    # overnight gaps carry most of the variance, so bad days tend to open low
    gap_sigma, move_sigma = GAP_SHARE * daily_sigma, np.sqrt(1 - GAP_SHARE ** 2) * daily_sigma
    # t(5) scaled to unit variance
    gaps = gap_sigma * rng.standard_t(5, size=days) / np.sqrt(5.0 / 3.0)
    moves = move_sigma * rng.standard_t(5, size=days) / np.sqrt(5.0 / 3.0)
    bars = []
    prev = s0
    for t in range(days):
        open_ = prev * np.exp(gaps[t])
        close = open_ * np.exp(daily_mu - 0.5 * daily_sigma ** 2 + moves[t])
        up, down = np.abs(rng.normal(0.0, RANGE_SHARE * daily_sigma, size=2))
        high = max(open_, close) * np.exp(up)
        low = min(open_, close) * np.exp(-down)
        c, h, lo = round(close, 2), round(high, 2), round(low, 2)
        c = max(c, 0.01)
        h, lo = max(h, c), max(min(lo, c), 0.01)
        bars.append((c, h, lo))
        prev = c
    return bars


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "synthetic"))
    ap.add_argument("--seed", type=int, default=20160104)
    args = ap.parse_args()

    os.makedirs(args.out, exist_ok=True)
    dates = business_days(dt.date(2016, 1, 4), dt.date(2020, 9, 30))
    rng = np.random.default_rng(args.seed)
    for ticker, (drift, vol, s0) in ASSETS.items():
        bars = simulate(rng, len(dates), drift, vol, s0)
        with open(os.path.join(args.out, f"{ticker}.csv"), "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["date", "close", "high", "low"])
            for d, (c, h, lo) in zip(dates, bars):
                w.writerow([d.isoformat(), f"{c:.2f}", f"{h:.2f}", f"{lo:.2f}"])
    print(f"wrote {len(ASSETS)} assets x {len(dates)} bars to {os.path.abspath(args.out)}")


if __name__ == "__main__":
    main()
