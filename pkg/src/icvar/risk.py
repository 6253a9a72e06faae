"""Historical-simulation IVaR / ICVaR on interval-valued returns."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import AlphaOutOfRange, DegenerateSample, EmptySample
from .interval import Interval, negate

DEFAULT_ALPHA = 0.05


@dataclass(frozen=True)
class EmpiricalIntervalSample:
    """Observed intervals plus the permutation that sorts them ascending.

    Sorting uses the same key as :func:`icvar.interval.compare`.
    """

    los: np.ndarray
    his: np.ndarray
    sorted_index: np.ndarray = field(repr=False)

    @classmethod
    def from_intervals(cls, observations: Sequence[Interval]) -> EmpiricalIntervalSample:
        if len(observations) == 0:
            raise EmptySample("empirical sample needs at least one observation")
        los = np.array([o.lo for o in observations], dtype=float)
        his = np.array([o.hi for o in observations], dtype=float)
        return cls.from_arrays(los, his)

    @classmethod
    def from_arrays(cls, los, his) -> EmpiricalIntervalSample:
        los = np.asarray(los, dtype=float)
        his = np.asarray(his, dtype=float)
        if los.size == 0:
            raise EmptySample("empirical sample needs at least one observation")
        if los.shape != his.shape or los.ndim != 1:
            raise ValueError("lower and upper endpoint arrays must be 1-d and the same length")
        if not (np.all(np.isfinite(los)) and np.all(np.isfinite(his))) or np.any(los > his):
            raise ValueError("every observation must be a finite interval with lo <= hi")
        mids = (los + his) / 2
        # lexsort: last key is primary
        order = np.lexsort((his, los, mids))
        return cls(los, his, order)

    def __len__(self) -> int:
        return int(self.los.size)

    @property
    def observations(self) -> list[Interval]:
        return [Interval(float(a), float(b)) for a, b in zip(self.los, self.his)]

    def order_statistic(self, q: int) -> Interval:
        """The ``q``-th smallest observation, 1-based."""
        t = self.sorted_index[q - 1]
        return Interval(float(self.los[t]), float(self.his[t]))


@dataclass(frozen=True)
class RiskEstimate:
    alpha: float
    ivar: Interval
    icvar: Interval
    tail_size: int


SampleLike = Union[EmpiricalIntervalSample, Sequence[Interval]]


def _as_sample(sample: SampleLike) -> EmpiricalIntervalSample:
    if isinstance(sample, EmpiricalIntervalSample):
        return sample
    return EmpiricalIntervalSample.from_intervals(list(sample))


def tail_size(alpha: float, n: int) -> int:
    """ceil(alpha * n), read through alpha's decimal form so 0.07 * 100 gives 7, not 8."""
    check_alpha(alpha)
    if n < 1:
        raise EmptySample("sample is empty")
    q = math.ceil(Fraction(str(float(alpha))) * n)
    return min(max(q, 1), n)


def check_alpha(alpha: float) -> float:
    if not (isinstance(alpha, (int, float)) and 0 < alpha < 1):
        raise AlphaOutOfRange(f"alpha must lie in (0, 1), got {alpha!r}")
    return float(alpha)


def expected_interval(sample: Sequence[Interval]) -> Interval:
    if len(sample) == 0:
        raise EmptySample("cannot take the expectation of an empty sample")
    n = len(sample)
    return Interval(math.fsum(o.lo for o in sample) / n, math.fsum(o.hi for o in sample) / n)


def ivar(sample: SampleLike, alpha: float = DEFAULT_ALPHA) -> Interval:
    """Negated alpha-quantile of the sample under the interval order.

    The quantile is the ``ceil(alpha*N)``-th smallest observation; no
    interpolation.
    """
    s = _as_sample(sample)
    q = tail_size(alpha, len(s))
    return negate(s.order_statistic(q))


def icvar(sample: SampleLike, alpha: float = DEFAULT_ALPHA) -> RiskEstimate:
    """Expected shortfall of the ``ceil(alpha*N)`` worst observations, negated.

    The tail is inclusive of the quantile observation, so it is never empty.
    """
    s = _as_sample(sample)
    q = tail_size(alpha, len(s))
    tail = s.sorted_index[:q]
    lo = -math.fsum(s.his[tail].tolist()) / q
    hi = -math.fsum(s.los[tail].tolist()) / q
    return RiskEstimate(alpha=float(alpha), ivar=negate(s.order_statistic(q)),
                        icvar=Interval(lo, hi), tail_size=q)


def jarque_bera(series: Sequence[float]) -> tuple[float, float, float]:
    """Return ``(JB, skewness, kurtosis)`` with biased moment estimators.

    ``kurtosis`` is the plain fourth standardized moment (3 for a normal law).
    Under normality JB is asymptotically chi-square with 2 degrees of freedom.
    """
    x = [float(v) for v in series]
    n = len(x)
    if n < 4:
        raise DegenerateSample(f"need at least 4 observations, got {n}")
    mu = math.fsum(x) / n
    d = [v - mu for v in x]
    m2 = math.fsum(e * e for e in d) / n
    if m2 <= 0.0:
        raise DegenerateSample("series has zero variance")
    m3 = math.fsum(e ** 3 for e in d) / n
    m4 = math.fsum(e ** 4 for e in d) / n
    skew = m3 / m2 ** 1.5
    kurt = m4 / (m2 * m2)
    jb = n / 6 * (skew * skew + (kurt - 3) ** 2 / 4)
    return jb, skew, kurt


def jarque_bera_pvalue(statistic: float) -> float:
    # chi-square(2) survival function has closed form exp(-x/2)
    return math.exp(-statistic / 2)
