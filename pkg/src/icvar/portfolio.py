"""Glue between a return panel, the risk estimators and the two models."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .crisp import ModelOneSpec, ModelTwoSpec, build_model1, build_model2, combine
from .errors import DegenerateSample, DimensionMismatch
from .interval import Interval
from .returns import AssetPanel
from .risk import RiskEstimate, expected_interval, icvar, jarque_bera
from .simplex import Status, solve

TABLE_GAMMAS = (0.15, 0.05, 0.04, 0.03, 0.025, 0.02, 0.01)


@dataclass(frozen=True)
class ReportRow:
    asset: str
    period: str  # "1".."k" or "pooled"
    estimate: RiskEstimate
    jb_statistic: float | None


@dataclass(frozen=True)
class PanelEstimates:
    tickers: tuple[str, ...]
    by_period: tuple[tuple[RiskEstimate, ...], ...]  # [asset][period]
    pooled: tuple[RiskEstimate, ...]
    period_means: tuple[tuple[Interval, ...], ...]  # E(R_ij)
    pooled_means: tuple[Interval, ...]  # E(R_i)


def estimate_panel(panel: AssetPanel, alpha: float) -> PanelEstimates:
    by_period, pooled, period_means, pooled_means = [], [], [], []
    for t in panel.tickers:
        by_period.append(tuple(icvar(panel.intervals(t, j), alpha) for j in range(panel.k)))
        pooled.append(icvar(panel.intervals(t), alpha))
        period_means.append(tuple(expected_interval(panel.intervals(t, j)) for j in range(panel.k)))
        pooled_means.append(expected_interval(panel.intervals(t)))
    return PanelEstimates(tuple(panel.tickers), tuple(by_period), tuple(pooled),
                          tuple(period_means), tuple(pooled_means))


def _jb_or_none(series: Sequence[float]) -> float | None:
    try:
        return jarque_bera(series)[0]
    except DegenerateSample:
        return None


def report_rows(panel: AssetPanel, est: PanelEstimates) -> list[ReportRow]:
    rows = []
    for i, t in enumerate(est.tickers):
        for j in range(panel.k):
            rows.append(ReportRow(t, str(j + 1), est.by_period[i][j], _jb_or_none(panel.points(t, j))))
        rows.append(ReportRow(t, "pooled", est.pooled[i], _jb_or_none(panel.points(t))))
    return rows


def broadcast(bounds: Sequence[Interval], k: int, what: str) -> tuple[Interval, ...]:
    if len(bounds) == 1:
        return tuple(bounds) * k
    if len(bounds) != k:
        raise DimensionMismatch(f"need 1 or {k} {what}, got {len(bounds)}")
    return tuple(bounds)


def model_one_spec(est: PanelEstimates, caps: Sequence[Interval], gamma: float) -> ModelOneSpec:
    k = len(est.by_period[0])
    return ModelOneSpec(
        gamma=gamma,
        risk_caps=broadcast(caps, k, "risk caps"),
        estimates=tuple(tuple(e.icvar for e in row) for row in est.by_period),
        expected_returns=est.pooled_means,
    )


def model_two_spec(est: PanelEstimates, floors: Sequence[Interval], gamma: float) -> ModelTwoSpec:
    k = len(est.period_means[0])
    return ModelTwoSpec(
        gamma=gamma,
        return_floors=broadcast(floors, k, "return floors"),
        expected_period_returns=est.period_means,
        total_icvar=tuple(e.icvar for e in est.pooled),
    )


@dataclass(frozen=True)
class PortfolioSolution:
    gamma: float
    status: Status
    weights: np.ndarray
    objective: float  # midpoint, what the LP optimises
    objective_interval: Interval | None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def solve_model(model: int, est: PanelEstimates, bounds: Sequence[Interval], gamma: float) -> PortfolioSolution:
    if model == 1:
        spec = model_one_spec(est, bounds, gamma)
        problem, coeffs = build_model1(spec), spec.expected_returns
    elif model == 2:
        spec = model_two_spec(est, bounds, gamma)
        problem, coeffs = build_model2(spec), spec.total_icvar
    else:
        raise ValueError(f"model must be 1 or 2, got {model}")
    sol = solve(problem)
    if not sol.optimal:
        return PortfolioSolution(gamma, sol.status, sol.weights, sol.objective, None)
    return PortfolioSolution(gamma, sol.status, sol.weights, sol.objective, combine(coeffs, sol.weights))


def gamma_sweep(model: int, est: PanelEstimates, bounds: Sequence[Interval],
                gammas: Sequence[float] = TABLE_GAMMAS) -> list[PortfolioSolution]:
    return [solve_model(model, est, bounds, g) for g in gammas]
