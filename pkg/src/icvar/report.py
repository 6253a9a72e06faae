"""Table and CSV rendering. Output is plain ASCII with ``\\n`` line endings."""

from __future__ import annotations

import csv
import io
import math
from typing import Sequence

import numpy as np

from .interval import Interval
from .portfolio import PortfolioSolution, ReportRow

ESTIMATE_COLUMNS = ("asset", "period", "alpha", "ivar_lo", "ivar_hi", "icvar_lo", "icvar_hi",
                    "tail_size", "jb_statistic")


def round_weights(weights: Sequence[float], decimals: int = 4) -> list[int]:
    """Weights in units of ``10**-decimals`` that sum to exactly one unit total.

    Renormalises first, then hands leftover units to the largest remainders
    (lower index wins ties).
    """
    x = np.clip(np.asarray(weights, dtype=float), 0.0, None)
    unit = 10 ** decimals
    total = math.fsum(x.tolist())
    if total <= 0:
        raise ValueError("weights sum to zero")
    scaled = [v / total * unit for v in x.tolist()]
    floors = [math.floor(s) for s in scaled]
    short = unit - sum(floors)
    order = sorted(range(len(scaled)), key=lambda i: (-(scaled[i] - floors[i]), i))
    for i in order[:short]:
        floors[i] += 1
    return floors


def fmt_units(units: int, decimals: int = 4) -> str:
    unit = 10 ** decimals
    return f"{units // unit}.{units % unit:0{decimals}d}"


def fmt_float(value: float) -> str:
    # shortest round-trip repr is identical on every platform; + 0.0 drops the sign of -0.0
    return repr(float(value) + 0.0)


def fmt_gamma(g: float) -> str:
    return f"{g:g}"


def allocation_header(tickers: Sequence[str]) -> list[str]:
    return ["row", *tickers, "ST_OP", "ST_OP_width", "gamma", "status"]


def allocation_rows(tickers: Sequence[str], solutions: Sequence[PortfolioSolution]) -> list[list[str]]:
    rows = []
    for r, sol in enumerate(solutions, start=1):
        label = f"[{r}]"
        if sol.optimal:
            w = [fmt_units(u) for u in round_weights(sol.weights)]
            rows.append([label, *w, f"{sol.objective:.4f}", f"{sol.objective_interval.width:.4f}",
                         fmt_gamma(sol.gamma), sol.status.value])
        else:
            rows.append([label, *([""] * len(tickers)), "", "", fmt_gamma(sol.gamma), sol.status.value])
    return rows


def to_csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def to_pretty(header: Sequence[str], rows: Sequence[Sequence[str]], title: str = "") -> str:
    shown = [[("0" if c == "0.0000" else ("-" if c == "" else c)) for c in row] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in shown)) if shown else len(h) for i, h in enumerate(header)]
    head = [""] + list(header[1:])
    rule = "-" * (sum(widths) + 2 * (len(widths) - 1))
    lines = []
    if title:
        lines.append(title)
    lines.append(rule)
    lines.append("  ".join(h.rjust(w) for h, w in zip(head, widths)).rstrip())
    lines.append(rule)
    for row in shown:
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip())
    lines.append(rule)
    return "\n".join(lines) + "\n"


def bounds_title(model: int, bounds: Sequence[Interval], k: int) -> str:
    name = "ICVaR_0j" if model == 1 else "R_0j"
    if len(set(bounds)) == 1:
        return f"Model {model}, {name} = {bounds[0].format(4)}, j=1,...,{k}"
    parts = ", ".join(f"{name[:-1]}{j + 1} = {b.format(4)}" for j, b in enumerate(bounds))
    return f"Model {model}, {parts}"


def estimate_report(rows: Sequence[ReportRow]) -> str:
    out = []
    for r in rows:
        e = r.estimate
        out.append([r.asset, r.period, fmt_float(e.alpha), fmt_float(e.ivar.lo), fmt_float(e.ivar.hi),
                    fmt_float(e.icvar.lo), fmt_float(e.icvar.hi), str(e.tail_size),
                    "" if r.jb_statistic is None else fmt_float(r.jb_statistic)])
    return to_csv(ESTIMATE_COLUMNS, out)


def read_estimate_report(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def caps_from_report(text: str, asset: str) -> list[Interval]:
    """Per-period ICVaR of ``asset`` from an estimate report, in period order."""
    rows = [r for r in read_estimate_report(text) if r["asset"] == asset and r["period"] != "pooled"]
    if not rows:
        raise ValueError(f"asset {asset!r} not found in estimate report")
    rows.sort(key=lambda r: int(r["period"]))
    return [Interval(float(r["icvar_lo"]), float(r["icvar_hi"])) for r in rows]
