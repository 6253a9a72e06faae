"""Acceptability index and the real LPs behind the two interval portfolio models.

Model 1 maximises the midpoint of expected return subject to per-period
interval risk caps; Model 2 minimises the midpoint of risk subject to
per-period interval return floors.  Every interval inequality becomes two real
rows: an endpoint row and a gamma-threshold row.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError, DimensionMismatch, ZeroWidthPair
from .interval import Interval, interval_sum, scale


class Sense(enum.Enum):
    MAXIMIZE = "max"
    MINIMIZE = "min"


def check_gamma(gamma: float) -> float:
    if not 0.0 <= gamma <= 1.0:
        raise ConfigError(f"gamma must lie in [0, 1], got {gamma!r}")
    return float(gamma)


def gamma_index(a: Interval, b: Interval) -> float:
    """Grade of acceptability of "a is less than b".

    <= 0 rejects the premise, >= 1 accepts it fully (``a.hi <= b.lo``).
    """
    denom = a.width + b.width
    if denom == 0.0:
        raise ZeroWidthPair(f"both {a} and {b} are degenerate")
    return (b.mean - a.mean) / denom


def grade(a: Interval, b: Interval) -> str:
    """Classify ``a < b`` as 'rejected', 'partial' or 'accepted' from endpoints alone."""
    if b.mean <= a.mean:
        return "rejected"
    if a.hi > b.lo:
        return "partial"
    return "accepted"


@dataclass(frozen=True)
class Row:
    """``coeffs . x  <sense>  rhs`` with sense '<=' or '>='."""

    coeffs: tuple[float, ...]
    sense: str
    rhs: float

    def satisfied(self, x: Sequence[float], tol: float = 0.0) -> bool:
        lhs = float(np.dot(self.coeffs, x))
        if self.sense == "<=":
            return lhs <= self.rhs + tol
        return lhs >= self.rhs - tol

    def as_leq(self) -> tuple[tuple[float, ...], float]:
        if self.sense == "<=":
            return self.coeffs, self.rhs
        return tuple(-c for c in self.coeffs), -self.rhs


def crisp_leq_row(coeffs: Sequence[Interval], cap: Interval, gamma: float) -> tuple[Row, Row]:
    """Crisp equivalent of ``sum coeffs[i] x_i <= cap`` for x >= 0."""
    check_gamma(gamma)
    endpoint = Row(tuple(c.hi for c in coeffs), "<=", cap.hi)
    threshold = Row(tuple(c.mean - gamma * c.width for c in coeffs), "<=",
                    cap.mean + gamma * cap.width)
    return endpoint, threshold


def crisp_geq_row(coeffs: Sequence[Interval], floor: Interval, gamma: float) -> tuple[Row, Row]:
    """Crisp equivalent of ``sum coeffs[i] x_i >= floor`` for x >= 0."""
    check_gamma(gamma)
    endpoint = Row(tuple(c.lo for c in coeffs), ">=", floor.lo)
    threshold = Row(tuple(c.mean + gamma * c.width for c in coeffs), ">=",
                    floor.mean - gamma * floor.width)
    return endpoint, threshold


def combine(coeffs: Sequence[Interval], x: Sequence[float]) -> Interval:
    """``sum x_i * coeffs[i]`` as an interval; x must be nonnegative."""
    return interval_sum(scale(float(xi), c) for c, xi in zip(coeffs, x))


@dataclass
class LpProblem:
    """Real LP: optimise ``objective . x`` s.t. ``ineq_lhs x <= ineq_rhs``,
    ``eq_lhs x = eq_rhs``, ``x >= lower_bounds``."""

    sense: Sense
    objective: np.ndarray
    ineq_lhs: np.ndarray
    ineq_rhs: np.ndarray
    eq_lhs: np.ndarray
    eq_rhs: np.ndarray
    lower_bounds: np.ndarray
    row_labels: tuple[str, ...] = ()

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float)
        n = self.objective.size
        self.ineq_lhs = np.asarray(self.ineq_lhs, dtype=float).reshape(-1, n)
        self.ineq_rhs = np.asarray(self.ineq_rhs, dtype=float).reshape(-1)
        self.eq_lhs = np.asarray(self.eq_lhs, dtype=float).reshape(-1, n)
        self.eq_rhs = np.asarray(self.eq_rhs, dtype=float).reshape(-1)
        self.lower_bounds = np.asarray(self.lower_bounds, dtype=float).reshape(-1)
        if (self.ineq_lhs.shape[0] != self.ineq_rhs.size or self.eq_lhs.shape[0] != self.eq_rhs.size
                or self.lower_bounds.size != n):
            raise DimensionMismatch("LP matrix, rhs and bound sizes disagree")
        for arr in (self.objective, self.ineq_lhs, self.ineq_rhs, self.eq_lhs, self.eq_rhs, self.lower_bounds):
            if not np.all(np.isfinite(arr)):
                raise ConfigError("LP coefficients must be finite")

    @property
    def n(self) -> int:
        return self.objective.size

    def has_budget_row(self) -> bool:
        return any(np.all(row == 1.0) and rhs == 1.0 for row, rhs in zip(self.eq_lhs, self.eq_rhs))

    def dump(self) -> str:
        """Plain-text listing of the LP for inspection."""
        fmt = lambda v: f"{v:+.10g}"  # noqa: E731
        lines = [f"{self.sense.name.lower()} " + " ".join(f"{fmt(c)}*x{i + 1}" for i, c in enumerate(self.objective))]
        lines.append("subject to")
        labels = list(self.row_labels) + [""] * (self.ineq_rhs.size + self.eq_rhs.size)
        k = 0
        for row, rhs in zip(self.ineq_lhs, self.ineq_rhs):
            tag = f"  # {labels[k]}" if labels[k] else ""
            lines.append("  " + " ".join(f"{fmt(c)}*x{i + 1}" for i, c in enumerate(row)) + f" <= {rhs:.10g}{tag}")
            k += 1
        for row, rhs in zip(self.eq_lhs, self.eq_rhs):
            tag = f"  # {labels[k]}" if labels[k] else ""
            lines.append("  " + " ".join(f"{fmt(c)}*x{i + 1}" for i, c in enumerate(row)) + f" == {rhs:.10g}{tag}")
            k += 1
        lines.append("  " + ", ".join(f"x{i + 1} >= {lb:g}" for i, lb in enumerate(self.lower_bounds)))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ModelOneSpec:
    """Max-return model. ``estimates[i][j]`` is asset i's ICVaR in period j."""

    gamma: float
    risk_caps: tuple[Interval, ...]
    estimates: tuple[tuple[Interval, ...], ...]
    expected_returns: tuple[Interval, ...]

    def __post_init__(self):
        check_gamma(self.gamma)
        n, k = len(self.expected_returns), len(self.risk_caps)
        if n == 0 or k == 0:
            raise DimensionMismatch("model needs at least one asset and one period")
        if len(self.estimates) != n or any(len(row) != k for row in self.estimates):
            raise DimensionMismatch(f"ICVaR matrix must be {n}x{k}")


@dataclass(frozen=True)
class ModelTwoSpec:
    """Min-risk model. ``expected_period_returns[i][j]`` is E(R_ij)."""

    gamma: float
    return_floors: tuple[Interval, ...]
    expected_period_returns: tuple[tuple[Interval, ...], ...]
    total_icvar: tuple[Interval, ...]

    def __post_init__(self):
        check_gamma(self.gamma)
        n, k = len(self.total_icvar), len(self.return_floors)
        if n == 0 or k == 0:
            raise DimensionMismatch("model needs at least one asset and one period")
        if len(self.expected_period_returns) != n or any(len(r) != k for r in self.expected_period_returns):
            raise DimensionMismatch(f"expected-return matrix must be {n}x{k}")


def _assemble(sense: Sense, objective: Sequence[float], rows: list[tuple[str, Row]]) -> LpProblem:
    n = len(objective)
    lhs, rhs = [], []
    for _, r in rows:
        c, b = r.as_leq()
        lhs.append(c)
        rhs.append(b)
    labels = tuple(lbl for lbl, _ in rows) + ("budget",)
    return LpProblem(sense=sense, objective=np.array(objective, dtype=float),
                     ineq_lhs=np.array(lhs, dtype=float).reshape(-1, n), ineq_rhs=np.array(rhs, dtype=float),
                     eq_lhs=np.ones((1, n)), eq_rhs=np.ones(1), lower_bounds=np.zeros(n),
                     row_labels=labels)


def build_model1(spec: ModelOneSpec) -> LpProblem:
    rows = []
    for j, cap in enumerate(spec.risk_caps):
        column = [spec.estimates[i][j] for i in range(len(spec.estimates))]
        endpoint, threshold = crisp_leq_row(column, cap, spec.gamma)
        rows += [(f"period {j + 1} upper", endpoint), (f"period {j + 1} gamma", threshold)]
    return _assemble(Sense.MAXIMIZE, [e.mean for e in spec.expected_returns], rows)


def build_model2(spec: ModelTwoSpec) -> LpProblem:
    rows = []
    for j, floor in enumerate(spec.return_floors):
        column = [spec.expected_period_returns[i][j] for i in range(len(spec.expected_period_returns))]
        endpoint, threshold = crisp_geq_row(column, floor, spec.gamma)
        rows += [(f"period {j + 1} lower", endpoint), (f"period {j + 1} gamma", threshold)]
    return _assemble(Sense.MINIMIZE, [r.mean for r in spec.total_icvar], rows)
