"""
Compiled inner loops for the engine's O(N^2) phases.

Each kernel evaluates the same per-pair floating-point expression as the
reference functions in :mod:`luckgrid.geometry` (``abs``, ``min(d, L - d)``,
``sqrt(dx*dx + dy*dy)`` with the same underflow guard), so inclusive threshold tests give identical
answers. The coarse per-axis prefilter only skips pairs that are certainly
out of range.
"""

from __future__ import annotations

import math

import numba
import numpy as np

_PREFILTER_SLACK = 1e-9


@numba.njit(cache=True)
def _gap(a, b, L):
    d = abs(a - b)
    return min(d, L - d)


@numba.njit(cache=True)
def _dist(dx, dy):
    d = math.sqrt(dx * dx + dy * dy)
    return max(dx, dy) if d == 0.0 else d


@numba.njit(cache=True)
def contact_matrix(event_pos, pos, L, radius):
    """``out[e, i]`` is True when event ``e`` covers agent ``i`` (distance <= radius)."""
    n_ev = event_pos.shape[0]
    n = pos.shape[0]
    out = np.zeros((n_ev, n), dtype=np.bool_)
    cut = radius + _PREFILTER_SLACK * (radius + 1.0)
    for e in range(n_ev):
        ex = event_pos[e, 0]
        ey = event_pos[e, 1]
        for i in range(n):
            dx = _gap(ex, pos[i, 0], L)
            if dx > cut:
                continue
            dy = _gap(ey, pos[i, 1], L)
            if dy > cut:
                continue
            if _dist(dx, dy) <= radius:
                out[e, i] = True
    return out


@numba.njit(cache=True)
def location_adjacency(pos, L, radius):
    n = pos.shape[0]
    adj = np.zeros((n, n), dtype=np.bool_)
    cut = radius + _PREFILTER_SLACK * (radius + 1.0)
    for i in range(n):
        xi = pos[i, 0]
        yi = pos[i, 1]
        for j in range(i + 1, n):
            dx = _gap(xi, pos[j, 0], L)
            if dx > cut:
                continue
            dy = _gap(yi, pos[j, 1], L)
            if dy > cut:
                continue
            if _dist(dx, dy) <= radius:
                adj[i, j] = True
                adj[j, i] = True
    return adj


@numba.njit(cache=True)
def circle_mean_rows(coords, order, weights, L, tie_rtol, sep_tol):
    """Row-wise weighted circular mean of one axis.

    Same algorithm as ``geometry._circle_mean_rows``: scan the unwrappings
    of the sorted coordinates with running prefix sums and keep the one with
    the smallest weighted variance. ``order`` sorts ``coords`` ascending.
    Zero-weight points only duplicate candidates, so each row is first
    compacted to its weighted points. Returns ``(means, tied)``.
    """
    m, n = weights.shape
    means = np.empty(m)
    tied = np.zeros(m, dtype=np.bool_)
    xs = np.empty(n)
    ws = np.empty(n)
    for r in range(m):
        k = 0
        total = 0.0
        sx = 0.0
        sxx = 0.0
        for t in range(n):
            j = order[t]
            w = weights[r, j]
            if w != 0.0:
                x = coords[j]
                xs[k] = x
                ws[k] = w
                k += 1
                total += w
                sx += w * x
                sxx += w * x * x

        best_var = np.inf
        best_mean = 0.0
        pw = 0.0
        pwx = 0.0
        for t in range(k):
            sum_y = sx + L * pw
            var = sxx + 2.0 * L * pwx + L * L * pw - sum_y * sum_y / total
            if var < best_var:
                best_var = var
                best_mean = sum_y / total
            pw += ws[t]
            pwx += ws[t] * xs[t]
        mean = best_mean % L
        if mean >= L:
            mean = 0.0
        means[r] = mean

        # Second scan: any other near-optimal unwrapping at a distinct point?
        limit = best_var + tie_rtol * total * L * L
        pw = 0.0
        pwx = 0.0
        for t in range(k):
            sum_y = sx + L * pw
            var = sxx + 2.0 * L * pwx + L * L * pw - sum_y * sum_y / total
            if var <= limit:
                c = (sum_y / total) % L
                d = abs(c - mean)
                if min(d, L - d) > sep_tol:
                    tied[r] = True
                    break
            pw += ws[t]
            pwx += ws[t] * xs[t]
    return means, tied
