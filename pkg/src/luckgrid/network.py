"""
Social-network construction.

Every builder returns a dense symmetric boolean adjacency matrix with an
empty diagonal. Thresholds are inclusive. The network is rebuilt from
scratch each step, so builders are stateless.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from luckgrid._kernels import location_adjacency
from luckgrid.model import NetworkRule, WorldState


@lru_cache(maxsize=8)
def _upper_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    # Row-major over i < j, i.e. lexicographic (i, j) order.
    return np.triu_indices(n, k=1)


def build_random(n_agents: int, p_rand: float, rng: np.random.Generator) -> np.ndarray:
    """Erdos-Renyi graph: each pair linked independently with probability ``p_rand``.

    Consumes exactly n(n-1)/2 uniforms, one per pair in lexicographic order.
    """
    adj = np.zeros((n_agents, n_agents), dtype=bool)
    if n_agents < 2:
        return adj
    iu, ju = _upper_pairs(n_agents)
    linked = rng.random(iu.shape[0]) < p_rand
    adj[iu[linked], ju[linked]] = True
    adj |= adj.T
    return adj


def _within(dist: np.ndarray, bound: float) -> np.ndarray:
    adj = dist <= bound
    np.fill_diagonal(adj, False)
    return adj


def build_location(pos: np.ndarray, radius: float, L: float) -> np.ndarray:
    """Link agents whose torus distance is at most ``radius``."""
    return location_adjacency(np.ascontiguousarray(pos, dtype=float), float(L), float(radius))


def build_wealth(wealth: np.ndarray, n_c: float, d_c: float) -> np.ndarray:
    """Link agents whose wealth magnitudes differ by at most ``n_c * d_c``."""
    return _within(np.abs(wealth[:, None] - wealth[None, :]), n_c * d_c)


def build_talent(talent: np.ndarray, n_t: float, sigma_t: float) -> np.ndarray:
    """Link agents whose talents differ by at most ``n_t * sigma_t``.

    ``sigma_t`` is the configured talent spread, not the sample std.
    """
    return _within(np.abs(talent[:, None] - talent[None, :]), n_t * sigma_t)


def build_network(world: WorldState) -> np.ndarray:
    p = world.params
    rule = p.network_rule
    if rule is NetworkRule.RANDOM:
        return build_random(world.n_agents, p.link_prob, world.rng)
    if rule is NetworkRule.LOCATION:
        return build_location(world.pos, p.location_radius, p.world_side)
    if rule is NetworkRule.WEALTH:
        return build_wealth(world.wealth, p.wealth_radius_mult, p.delta_wealth)
    return build_talent(world.talent, p.talent_radius_mult, p.talent_std)
