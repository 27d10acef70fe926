"""
Mobile strategies.

The per-agent functions (``move_random``, ``move_highest``, ``move_average``)
define the semantics. :func:`propose_moves` computes the same thing for
every agent at once from a step-start snapshot; the engine uses it.

RNG is consumed only on the random path: one uniform per randomly moving
agent, in ascending agent id.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from luckgrid.geometry import (
    TorusPoint,
    circular_weighted_mean,
    circular_weighted_mean_rows,
    step_toward,
    step_toward_array,
    wrap,
    wrap_array,
)
from luckgrid.model import Agent, MovementRule

TWO_PI = 2.0 * math.pi


def move_random(agent: Agent, speed: float, rng: np.random.Generator, L: float) -> TorusPoint:
    theta = TWO_PI * rng.random()
    return wrap((agent.pos[0] + speed * math.cos(theta), agent.pos[1] + speed * math.sin(theta)), L)


def highest_neighbor(neighbors: Sequence[Agent]) -> Agent:
    """Richest neighbor; ties go to the lowest id."""
    return min(neighbors, key=lambda a: (-a.wealth, a.id))


def move_highest(agent: Agent, neighbors: Sequence[Agent], speed: float,
                 rng: np.random.Generator, L: float) -> TorusPoint:
    if not neighbors:
        return move_random(agent, speed, rng, L)
    return step_toward(agent.pos, highest_neighbor(neighbors).pos, speed, L)


def average_weights(wealth: np.ndarray) -> np.ndarray:
    # Negative wealth would repel; clamp to zero, uniform if nothing is left.
    w = np.maximum(np.asarray(wealth, dtype=float), 0.0)
    if not w.sum() > 0:
        w = np.ones_like(w)
    return w


def move_average(agent: Agent, neighbors: Sequence[Agent], speed: float,
                 rng: np.random.Generator, L: float) -> TorusPoint:
    if not neighbors:
        return move_random(agent, speed, rng, L)
    weights = average_weights([n.wealth for n in neighbors])
    target = circular_weighted_mean([n.pos for n in neighbors], weights, L)
    return step_toward(agent.pos, target, speed, L)


# ---------------------------------------------------------------------------
# Batched proposal
# ---------------------------------------------------------------------------

def _random_steps(pos: np.ndarray, speed: float, rng: np.random.Generator, L: float) -> np.ndarray:
    theta = TWO_PI * rng.random(pos.shape[0])
    return wrap_array(pos + speed * np.column_stack((np.cos(theta), np.sin(theta))), L)


def propose_moves(pos: np.ndarray, wealth: np.ndarray, adjacency: np.ndarray, rule: MovementRule,
                  speed: float, rng: np.random.Generator, L: float) -> np.ndarray:
    """New positions for all agents, computed from one snapshot."""
    if rule is MovementRule.RANDOM:
        return _random_steps(pos, speed, rng, L)

    has_nbr = adjacency.any(axis=1)
    new = np.empty_like(pos)
    lonely = ~has_nbr
    if lonely.any():
        new[lonely] = _random_steps(pos[lonely], speed, rng, L)
    if not has_nbr.any():
        return new

    adj = adjacency[has_nbr]
    if rule is MovementRule.HIGHEST:
        masked = np.where(adj, wealth[None, :], -np.inf)
        target = pos[np.argmax(masked, axis=1)]
    else:
        w = adj * np.maximum(wealth, 0.0)[None, :]
        empty = ~(w.sum(axis=1) > 0)
        if empty.any():
            w[empty] = adj[empty]
        target = circular_weighted_mean_rows(pos, w, L)
    new[has_nbr] = step_toward_array(pos[has_nbr], target, speed, L)
    return new
