"""
Arithmetic on the periodic square world.

Coordinates are continuous reals in ``[0, L)`` on both axes; opposite edges
are identified. Scalar functions operate on :class:`TorusPoint` and are the
reference semantics. The ``*_array`` variants are vectorized equivalents used
by the engine; they evaluate the same floating-point expressions so that
threshold comparisons agree bit-for-bit with the scalar path.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from luckgrid.errors import InvalidInputError


class TorusPoint(NamedTuple):
    x: float
    y: float


# ---------------------------------------------------------------------------
# Wrapping and distances
# ---------------------------------------------------------------------------

def _mod(c: float, L: float) -> float:
    r = c % L
    # A tiny negative c gives r == L after rounding.
    return 0.0 if r >= L else r


def wrap(p: Sequence[float], L: float) -> TorusPoint:
    """Reduce a raw 2D point onto the torus of side ``L``."""
    if not L > 0:
        raise InvalidInputError(f"side length must be positive, got {L!r}")
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidInputError(f"non-finite coordinate in {p!r}")
    return TorusPoint(_mod(x, L), _mod(y, L))


def _axis_gap(a: float, b: float, L: float) -> float:
    d = abs(a - b)
    return min(d, L - d)


def _norm(dx: float, dy: float) -> float:
    d = math.sqrt(dx * dx + dy * dy)
    # Squares of subnormal gaps underflow to zero.
    return max(abs(dx), abs(dy)) if d == 0.0 else d


def torus_distance(a: Sequence[float], b: Sequence[float], L: float) -> float:
    return _norm(_axis_gap(a[0], b[0], L), _axis_gap(a[1], b[1], L))


def _signed_delta(src: float, dst: float, L: float) -> float:
    """Shortest signed displacement from ``src`` to ``dst`` along one axis (both in [0, L))."""
    d = dst - src
    if d > L / 2:
        d -= L
    elif d < -L / 2:
        d += L
    return d


def step_toward(src: Sequence[float], target: Sequence[float], step: float, L: float) -> TorusPoint:
    """Move ``step`` along the shortest torus path from ``src`` toward ``target``.

    Returns ``target`` itself once it is within reach, which also covers the
    degenerate ``src == target`` case.
    """
    if step < 0:
        raise InvalidInputError(f"step must be non-negative, got {step!r}")
    if torus_distance(src, target, L) <= step:
        return TorusPoint(float(target[0]), float(target[1]))
    dx = _signed_delta(src[0], target[0], L)
    dy = _signed_delta(src[1], target[1], L)
    scale = step / _norm(dx, dy)
    return wrap((src[0] + dx * scale, src[1] + dy * scale), L)


# ---------------------------------------------------------------------------
# Weighted mean on the circle
# ---------------------------------------------------------------------------
#
# Per axis, the mean is the point c minimizing sum_i w_i * d(c, x_i)^2 with d
# the circular distance. Sort the points; the optimum lies in one of n
# "unwrappings" where the first k sorted points are shifted up by L. Each
# unwrapping has a closed-form weighted mean and variance, and the smallest
# variance identifies the global optimum. Prefix sums make all n candidates
# O(n) after the sort.

_TIE_RTOL = 1e-12


def _circle_mean_rows(coords: np.ndarray, weights: np.ndarray, L: float):
    """Weighted circular mean of one coordinate array under many weight rows.

    ``coords`` has shape (n,), ``weights`` shape (m, n), every row with a
    positive total. Returns ``(means, tied)`` where ``tied`` flags rows whose
    optimum is not unique (two distinct minimizers within tolerance).
    """
    order = np.argsort(coords, kind="stable")
    xs = coords[order]
    w = weights[:, order]
    total = w.sum(axis=1, keepdims=True)
    sx = w @ xs
    sxx = w @ (xs * xs)
    # Prefix sums over the first k points, k = 0..n-1.
    pw = np.cumsum(w, axis=1) - w
    pwx = np.cumsum(w * xs, axis=1) - w * xs
    sum_y = sx[:, None] + L * pw
    sum_yy = sxx[:, None] + 2.0 * L * pwx + L * L * pw
    var = sum_yy - sum_y * sum_y / total
    best = np.argmin(var, axis=1)
    rows = np.arange(w.shape[0])
    cand = sum_y / total
    mean = np.mod(cand[rows, best], L)
    mean[mean >= L] = 0.0

    vmin = var[rows, best][:, None]
    near = var <= vmin + _TIE_RTOL * total * L * L
    sep = np.abs(np.mod(cand, L) - mean[:, None])
    sep = np.minimum(sep, L - sep)
    tied = np.any(near & (sep > 1e-9 * L), axis=1)
    return mean, tied


def _fallback_axis(coords: np.ndarray, L: float) -> float:
    return _mod(float(np.mean(coords)), L)


def circular_weighted_mean(points: Sequence[Sequence[float]], weights: Sequence[float], L: float) -> TorusPoint:
    """Weighted mean position on the torus.

    Per axis this is the point minimizing the weighted sum of squared
    circular distances. When that minimizer is not unique (mass split
    symmetrically, e.g. two equal weights exactly half a world apart), the
    axis falls back to the unweighted arithmetic mean of the raw
    coordinates of the positively weighted points, wrapped.

    Raises:
        InvalidInputError: on empty input, mismatched lengths, negative
            weights or zero total weight.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    w = np.asarray(weights, dtype=float).reshape(-1)
    if pts.shape[0] == 0:
        raise InvalidInputError("need at least one point")
    if w.shape[0] != pts.shape[0]:
        raise InvalidInputError(f"{pts.shape[0]} points but {w.shape[0]} weights")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise InvalidInputError("weights must be finite and non-negative")
    if not w.sum() > 0:
        raise InvalidInputError("total weight must be positive")
    coords = wrap_array(pts, L)
    out = []
    for axis in (0, 1):
        c = coords[:, axis]
        mean, tied = _circle_mean_rows(c, w[None, :], L)
        out.append(_fallback_axis(pts[w > 0, axis], L) if tied[0] else float(mean[0]))
    return TorusPoint(out[0], out[1])


# ---------------------------------------------------------------------------
# Vectorized forms
# ---------------------------------------------------------------------------

def wrap_array(p: np.ndarray, L: float) -> np.ndarray:
    out = np.mod(p, L)
    out[out >= L] = 0.0
    return out


def pairwise_distance(a: np.ndarray, b: np.ndarray, L: float) -> np.ndarray:
    """Torus distances between every row of ``a`` (m, 2) and of ``b`` (n, 2)."""
    d = np.abs(a[:, None, :] - b[None, :, :])
    d = np.minimum(d, L - d)
    dist = np.sqrt(d[..., 0] * d[..., 0] + d[..., 1] * d[..., 1])
    return np.where(dist == 0.0, np.maximum(d[..., 0], d[..., 1]), dist)


def step_toward_array(src: np.ndarray, target: np.ndarray, step: float, L: float) -> np.ndarray:
    gap = np.abs(src - target)
    gap = np.minimum(gap, L - gap)
    dist = np.sqrt(gap[:, 0] * gap[:, 0] + gap[:, 1] * gap[:, 1])
    dist = np.where(dist == 0.0, np.maximum(gap[:, 0], gap[:, 1]), dist)
    delta = target - src
    delta = np.where(delta > L / 2, delta - L, np.where(delta < -L / 2, delta + L, delta))
    norm = np.sqrt(delta[:, 0] * delta[:, 0] + delta[:, 1] * delta[:, 1])
    norm = np.where(norm == 0.0, np.abs(delta).max(axis=1), norm)
    reach = dist <= step
    scale = np.divide(step, norm, out=np.zeros_like(norm), where=~reach)
    moved = wrap_array(src + delta * scale[:, None], L)
    return np.where(reach[:, None], target, moved)


def circular_weighted_mean_rows(points: np.ndarray, weights: np.ndarray, L: float) -> np.ndarray:
    """Row-wise :func:`circular_weighted_mean` over a shared point set.

    ``points`` is (n, 2) in ``[0, L)``; ``weights`` is (m, n) with positive
    row totals. Returns (m, 2).
    """
    from luckgrid._kernels import circle_mean_rows

    weights = np.ascontiguousarray(weights, dtype=float)
    out = np.empty((weights.shape[0], 2))
    for axis in (0, 1):
        coords = np.ascontiguousarray(points[:, axis])
        order = np.argsort(coords, kind="stable")
        mean, tied = circle_mean_rows(coords, order, weights, float(L), _TIE_RTOL, 1e-9 * L)
        for row in np.flatnonzero(tied):
            mean[row] = _fallback_axis(coords[weights[row] > 0], L)
        out[:, axis] = mean
    return out
