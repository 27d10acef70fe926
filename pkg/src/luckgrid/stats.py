"""Inequality and distribution metrics on wealth magnitudes and hit counts."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from luckgrid.errors import InsufficientDataError, InvalidInputError, UndefinedMetricError


@dataclass(frozen=True)
class SummaryMetrics:
    mean_wealth: float
    std_wealth: float
    gini: float  # NaN when undefined (mean <= 0)


@dataclass(frozen=True)
class ExpFit:
    """Least-squares line through ``ln(count)`` versus bin index."""

    slope: float
    intercept: float
    r_squared: float
    n_points: int

    @property
    def decaying(self) -> bool:
        return self.slope < 0


def _as_vector(values) -> np.ndarray:
    x = np.asarray(values, dtype=float).reshape(-1)
    if x.size == 0:
        raise InvalidInputError("need at least one value")
    return x


def mean_std(values) -> tuple[float, float]:
    """Arithmetic mean and population (ddof=0) standard deviation."""
    x = _as_vector(values)
    return float(x.mean()), float(x.std())


def gini(values) -> float:
    """Gini coefficient via the sorted-rank formula.

    Raises:
        UndefinedMetricError: if the mean is not positive.
    """
    x = np.sort(_as_vector(values))
    n = x.size
    total = x.sum()
    if not total > 0:
        raise UndefinedMetricError(f"Gini undefined for mean {total / n!r} <= 0")
    ranks = 2.0 * np.arange(1, n + 1) - n - 1
    return float(ranks @ x / (n * total))


def lorenz(values) -> np.ndarray:
    """Lorenz curve as an (n + 1, 2) array of (population share, wealth share)."""
    x = np.sort(_as_vector(values))
    if np.any(x < 0):
        raise InvalidInputError("Lorenz curve requires non-negative values")
    total = x.sum()
    if not total > 0:
        raise InvalidInputError("Lorenz curve requires a positive total")
    n = x.size
    pts = np.empty((n + 1, 2))
    pts[:, 0] = np.arange(n + 1) / n
    pts[0, 1] = 0.0
    pts[1:, 1] = np.cumsum(x) / total
    pts[-1, 1] = 1.0
    return pts


def gini_from_lorenz(curve: np.ndarray) -> float:
    """``1 - 2 * area`` under a Lorenz curve, by the trapezoid rule."""
    curve = np.asarray(curve, dtype=float)
    dx = np.diff(curve[:, 0])
    area = float(np.sum(dx * (curve[1:, 1] + curve[:-1, 1]) / 2.0))
    return 1.0 - 2.0 * area


def summarize(wealth) -> SummaryMetrics:
    mean, std = mean_std(wealth)
    try:
        g = gini(wealth)
    except UndefinedMetricError:
        g = math.nan
    return SummaryMetrics(mean, std, g)


def event_histogram(hits) -> np.ndarray:
    """``out[b]`` is the number of agents with exactly ``b`` hits, b = 0..max."""
    h = np.asarray(hits).reshape(-1)
    if h.size and (h.min() < 0 or not np.issubdtype(h.dtype, np.integer)):
        raise InvalidInputError("hit counts must be non-negative integers")
    return np.bincount(h.astype(np.int64), minlength=1)


def fit_exponential(histogram) -> ExpFit:
    """Fit ``count ~ A * exp(slope * b)`` by OLS on log counts.

    Empty bins are skipped. A perfectly constant series has no residual
    variance to explain; it is reported with ``r_squared = 1`` and slope 0,
    which :attr:`ExpFit.decaying` flags as non-decaying.
    """
    counts = np.asarray(histogram, dtype=float).reshape(-1)
    bins = np.arange(counts.size, dtype=float)
    keep = counts > 0
    if keep.sum() < 2:
        raise InsufficientDataError(f"need >= 2 non-empty bins, got {int(keep.sum())}")
    x, y = bins[keep], np.log(counts[keep])
    xc = x - x.mean()
    slope = float(xc @ (y - y.mean()) / (xc @ xc))
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (intercept + slope * x)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(resid @ resid)
    if ss_tot == 0.0:
        r2 = 1.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return ExpFit(slope, intercept, r2, int(keep.sum()))


def wealth_histogram(wealth, width: float, origin: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Contiguous bins of ``width`` aligned to ``origin``, from the min to the max value.

    Returns ``(bin_lower, counts)``. Wealth changes in steps of exactly
    ``width`` from ``origin``, so each reachable level gets its own bin.
    """
    w = _as_vector(wealth)
    if not width > 0:
        raise InvalidInputError("bin width must be positive")
    # Round before flooring so values sitting exactly on an edge are not
    # pushed into the bin below by representation error.
    idx = np.floor(np.round((w - origin) / width, 9)).astype(np.int64)
    lo = idx.min()
    counts = np.bincount(idx - lo)
    lower = origin + width * np.arange(lo, lo + counts.size)
    return lower, counts
