"""Interval-valued VaR / CVaR estimation and interval portfolio selection."""

from .crisp import (
    LpProblem,
    ModelOneSpec,
    ModelTwoSpec,
    Sense,
    build_model1,
    build_model2,
    crisp_geq_row,
    crisp_leq_row,
    gamma_index,
)
from .interval import Interval, Ordering, add, compare, mean, negate, scale, width
from .returns import (
    AssetPanel,
    ByDateBoundaries,
    ColumnSchema,
    EqualCount,
    PriceBar,
    ReturnObservation,
    log_returns,
    parse_prices,
    partition_periods,
)
from .risk import EmpiricalIntervalSample, RiskEstimate, expected_interval, icvar, ivar, jarque_bera
from .simplex import LpSolution, Status, grid_oracle, solve

__version__ = "0.1.0"
