"""Dense two-phase simplex (Bland's rule) and a brute-force lattice oracle.

The LPs built by :mod:`icvar.crisp` have roughly ten variables and a dozen
rows, so a dense tableau is plenty.  Row operations are elementwise numpy
updates with a fixed pivot rule, which keeps results bit-for-bit reproducible.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .crisp import LpProblem, Sense
from .errors import ConfigError, NumericalBreakdown, TooManyAssets

FEAS_TOL = 1e-9
OPT_TOL = 1e-7
PIVOT_TOL = 1e-11
REDUCED_COST_TOL = 1e-12


class Status(enum.Enum):
    OPTIMAL = "OPTIMAL"
    INFEASIBLE = "INFEASIBLE"
    UNBOUNDED = "UNBOUNDED"


@dataclass
class LpSolution:
    status: Status
    weights: np.ndarray
    objective: float
    slack_report: dict[str, np.ndarray] = field(default_factory=dict)
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def residuals(problem: LpProblem, x: np.ndarray) -> dict[str, np.ndarray]:
    """``ineq``: rhs - lhs.x (>= 0 when satisfied); ``eq``: lhs.x - rhs; ``bounds``: x - lb."""
    ineq = np.array([problem.ineq_rhs[i] - math.fsum(problem.ineq_lhs[i] * x)
                     for i in range(problem.ineq_rhs.size)])
    eq = np.array([math.fsum(problem.eq_lhs[i] * x) - problem.eq_rhs[i]
                   for i in range(problem.eq_rhs.size)])
    return {"ineq": ineq, "eq": eq, "bounds": x - problem.lower_bounds}


def is_feasible(problem: LpProblem, x: np.ndarray, tol: float = FEAS_TOL) -> bool:
    r = residuals(problem, x)
    return bool(np.all(r["ineq"] >= -tol) and np.all(np.abs(r["eq"]) <= tol) and np.all(r["bounds"] >= -tol))


def _nan_solution(problem: LpProblem, status: Status, iterations: int) -> LpSolution:
    return LpSolution(status, np.full(problem.n, np.nan), math.nan, {}, iterations)


class _Tableau:
    def __init__(self, rows: np.ndarray, basis: list[int], max_iter: int):
        self.T = rows
        self.basis = basis
        self.max_iter = max_iter
        self.iterations = 0

    def pivot(self, r: int, col: int) -> None:
        T = self.T
        T[r] = T[r] / T[r, col]
        for i in range(T.shape[0]):
            if i != r and T[i, col] != 0.0:
                T[i] = T[i] - T[i, col] * T[r]
        # last row is the cost row and has no basic variable
        if r < len(self.basis):
            self.basis[r] = col

    def set_costs(self, costs: np.ndarray) -> None:
        z = np.zeros(self.T.shape[1])
        z[:costs.size] = costs
        self.T[-1] = z
        for r, b in enumerate(self.basis):
            if self.T[-1, b] != 0.0:
                self.T[-1] = self.T[-1] - self.T[-1, b] * self.T[r]

    def run(self, allowed: int) -> Status:
        """Minimise the cost row over the first ``allowed`` columns."""
        T = self.T
        m = len(self.basis)
        while True:
            if self.iterations >= self.max_iter:
                raise NumericalBreakdown(f"simplex exceeded {self.max_iter} pivots")
            reduced = T[-1, :allowed]
            candidates = np.flatnonzero(reduced < -REDUCED_COST_TOL)
            if candidates.size == 0:
                return Status.OPTIMAL
            col = int(candidates[0])
            column = T[:m, col]
            positive = np.flatnonzero(column > PIVOT_TOL)
            if positive.size == 0:
                if np.any(column > 0.0):
                    raise NumericalBreakdown(f"only sub-tolerance pivots in column {col}")
                return Status.UNBOUNDED
            ratios = T[positive, -1] / column[positive]
            best = ratios.min()
            ties = positive[ratios <= best + 1e-12 * (1.0 + abs(best))]
            r = int(min(ties, key=lambda i: self.basis[i]))
            self.pivot(r, col)
            self.iterations += 1


def solve(problem: LpProblem) -> LpSolution:
    """Solve ``problem`` exactly enough for the weight tables: vertex optimum under Bland's rule."""
    n = problem.n
    lb = problem.lower_bounds
    A_ub, A_eq = problem.ineq_lhs, problem.eq_lhs
    # shift x = lb + y so that y >= 0
    b_ub = problem.ineq_rhs - A_ub @ lb if lb.any() else problem.ineq_rhs.copy()
    b_eq = problem.eq_rhs - A_eq @ lb if lb.any() else problem.eq_rhs.copy()
    m_ub, m_eq = b_ub.size, b_eq.size
    m = m_ub + m_eq

    sign_ub = np.where(b_ub < 0, -1.0, 1.0)
    sign_eq = np.where(b_eq < 0, -1.0, 1.0)
    needs_art = [i for i in range(m_ub) if sign_ub[i] < 0] + [m_ub + i for i in range(m_eq)]
    n_art = len(needs_art)
    width = n + m_ub + n_art + 1

    T = np.zeros((m + 1, width))
    T[:m_ub, :n] = A_ub * sign_ub[:, None]
    T[:m_ub, n:n + m_ub] = np.diag(sign_ub)
    T[:m_ub, -1] = b_ub * sign_ub
    T[m_ub:m, :n] = A_eq * sign_eq[:, None]
    T[m_ub:m, -1] = b_eq * sign_eq

    basis = [n + i for i in range(m_ub)] + [-1] * m_eq
    for a, row in enumerate(needs_art):
        T[row, n + m_ub + a] = 1.0
        basis[row] = n + m_ub + a

    tab = _Tableau(T, basis, max_iter=50 * (m + width))
    art_start = n + m_ub

    if n_art:
        phase1 = np.zeros(width - 1)
        phase1[art_start:] = 1.0
        tab.set_costs(phase1)
        tab.run(width - 1)
        infeas = -tab.T[-1, -1]
        if infeas > FEAS_TOL:
            return _nan_solution(problem, Status.INFEASIBLE, tab.iterations)
        # drive zero-level artificials out of the basis; drop redundant rows
        r = 0
        while r < len(tab.basis):
            if tab.basis[r] >= art_start:
                row = tab.T[r, :art_start]
                nz = np.flatnonzero(np.abs(row) > PIVOT_TOL)
                if nz.size:
                    tab.pivot(r, int(nz[0]))
                else:
                    tab.T = np.delete(tab.T, r, axis=0)
                    del tab.basis[r]
                    continue
            r += 1
        tab.T = np.delete(tab.T, np.s_[art_start:width - 1], axis=1)

    costs = np.zeros(art_start)
    costs[:n] = -problem.objective if problem.sense is Sense.MAXIMIZE else problem.objective
    tab.set_costs(costs)
    status = tab.run(art_start)
    if status is Status.UNBOUNDED:
        return _nan_solution(problem, status, tab.iterations)

    y = np.zeros(art_start)
    for r, b in enumerate(tab.basis):
        y[b] = tab.T[r, -1]
    x = y[:n] + lb
    x[(x < lb) & (x > lb - 1e-12)] = lb[(x < lb) & (x > lb - 1e-12)]
    if not is_feasible(problem, x):
        raise NumericalBreakdown("simplex vertex violates constraints beyond tolerance")
    objective = math.fsum(problem.objective * x)
    return LpSolution(Status.OPTIMAL, x, objective, residuals(problem, x), tab.iterations)


@functools.lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> np.ndarray:
    """All nonnegative integer vectors of length ``parts`` summing to ``total``, lexicographic.

    Cached; the returned array is read-only.
    """
    if parts == 1:
        out = np.array([[total]], dtype=np.int64)
    else:
        blocks = []
        for first in range(total + 1):
            rest = _compositions(total - first, parts - 1)
            blocks.append(np.column_stack([np.full(rest.shape[0], first, dtype=np.int64), rest]))
        out = np.vstack(blocks)
    out.flags.writeable = False
    return out


def grid_oracle(problem: LpProblem, step: float) -> LpSolution:
    """Best feasible point on the simplex lattice with spacing ``step``.

    Exhaustive, so only for verification on tiny problems.
    """
    if problem.n > 4:
        raise TooManyAssets(f"grid oracle supports at most 4 assets, got {problem.n}")
    if not problem.has_budget_row():
        raise ConfigError("grid oracle needs the budget row sum(x) == 1")
    total = round(1.0 / step)
    if total < 1 or abs(total * step - 1.0) > 1e-9:
        raise ConfigError(f"step {step} does not divide 1 evenly")

    X = _compositions(total, problem.n) / total
    ok = np.all(X >= problem.lower_bounds - FEAS_TOL, axis=1)
    if problem.ineq_rhs.size:
        ok &= np.all(X @ problem.ineq_lhs.T <= problem.ineq_rhs + FEAS_TOL, axis=1)
    if problem.eq_rhs.size:
        ok &= np.all(np.abs(X @ problem.eq_lhs.T - problem.eq_rhs) <= FEAS_TOL, axis=1)
    if not ok.any():
        return _nan_solution(problem, Status.INFEASIBLE, 0)
    values = X @ problem.objective
    feasible = np.flatnonzero(ok)
    pick = values[feasible].argmax() if problem.sense is Sense.MAXIMIZE else values[feasible].argmin()
    x = X[feasible[pick]]
    return LpSolution(Status.OPTIMAL, x, float(values[feasible[pick]]), residuals(problem, x), int(ok.sum()))
