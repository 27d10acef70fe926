"""
Per-step state machine and full-run driver.

Each step runs these phases in order:

1. rebuild the social network from the current state;
2. move every agent (simultaneously, from the phase-1 snapshot);
3. move every event circle by ``event_speed`` in a uniform random direction;
4. find (event, agent) pairs that went from disjoint to intersecting;
5. apply the fired events in ascending (event_id, agent_id) order;
6. store the new contact set and advance the step counter.

RNG draw order within a step: random-network pair decisions, random-move
angles (ascending agent id), event angles (ascending event id), one talent
draw per fired lucky event (firing order). A single seed therefore fixes the
whole trajectory.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from luckgrid._kernels import contact_matrix
from luckgrid.errors import FinishedRunError
from luckgrid.geometry import wrap_array
from luckgrid.model import Agent, EventKind, SimParams, WorldState, init_world
from luckgrid.movement import TWO_PI, propose_moves
from luckgrid.network import build_network
from luckgrid.stats import SummaryMetrics, summarize


def apply_event(agent: Agent, kind: EventKind, d_c: float, rng: np.random.Generator) -> Agent:
    """Capital update for one fired event.

    A lucky hit always counts as a hit but only pays ``d_c`` when a uniform
    draw falls below the agent's talent. An unlucky hit always costs ``d_c``.
    """
    if EventKind(kind) is EventKind.LUCKY:
        if rng.random() < agent.talent:
            return dataclasses.replace(
                agent, wealth=agent.wealth + d_c,
                lucky_hits=agent.lucky_hits + 1, lucky_gains=agent.lucky_gains + 1,
            )
        return dataclasses.replace(agent, lucky_hits=agent.lucky_hits + 1)
    return dataclasses.replace(agent, wealth=agent.wealth - d_c, unlucky_hits=agent.unlucky_hits + 1)


def _advance(world: WorldState) -> None:
    p = world.params
    L = p.world_side
    rng = world.rng
    n = world.n_agents

    world.adjacency = build_network(world)
    world.pos = propose_moves(world.pos, world.wealth, world.adjacency, p.movement_rule,
                              p.agent_speed, rng, L)

    n_ev = world.event_pos.shape[0]
    theta = TWO_PI * rng.random(n_ev)
    world.event_pos = wrap_array(
        world.event_pos + p.event_speed * np.column_stack((np.cos(theta), np.sin(theta))), L
    )

    now = contact_matrix(world.event_pos, world.pos, float(L), float(p.event_radius))
    ev, ag = np.nonzero(now & ~world.contacts)
    lucky = world.event_lucky[ev]
    lucky_agents = ag[lucky]
    won = rng.random(lucky_agents.size) < world.talent[lucky_agents]

    world.lucky_hits += np.bincount(lucky_agents, minlength=n)
    world.lucky_gains += np.bincount(lucky_agents[won], minlength=n)
    world.unlucky_hits += np.bincount(ag[~lucky], minlength=n)
    # Derived from the counters rather than accumulated, so the wealth
    # identity holds exactly for any delta_wealth.
    world.wealth = p.initial_wealth + p.delta_wealth * (world.lucky_gains - world.unlucky_hits)

    world.contacts = now
    world.last_fired = np.column_stack((ev, ag)).astype(np.int64)
    world.step_index += 1


def step(world: WorldState) -> WorldState:
    """Return the world after one step; ``world`` itself is left untouched.

    Raises:
        FinishedRunError: if the world already completed ``params.steps`` steps.
    """
    if world.finished:
        raise FinishedRunError(f"run already finished at step {world.step_index}")
    nxt = world.copy()
    _advance(nxt)
    return nxt


@dataclass(eq=False)
class RunResult:
    params: SimParams
    seed: int
    series: np.ndarray  # (steps + 1, 3): mean, std, gini per step, row 0 is the initial state
    final: WorldState

    @property
    def summary(self) -> SummaryMetrics:
        mean, std, g = self.series[-1]
        return SummaryMetrics(float(mean), float(std), float(g))


def run(params: SimParams, seed: int | None = None) -> RunResult:
    seed = params.seed if seed is None else seed
    world = init_world(params, seed)
    series = np.empty((params.steps + 1, 3))
    series[0] = dataclasses.astuple(summarize(world.wealth))
    while not world.finished:
        _advance(world)
        series[world.step_index] = dataclasses.astuple(summarize(world.wealth))
    return RunResult(params=world.params, seed=seed, series=series, final=world)
