"""
Domain types and seeded world initialization.

The world is stored as parallel numpy arrays (one row per agent or event)
rather than a list of objects; :class:`Agent` and :class:`EventCircle` are
lightweight record views produced on demand and consumed by the scalar
reference operations.
"""

from __future__ import annotations

import copy
import dataclasses
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from luckgrid.errors import ParamError
from luckgrid.geometry import TorusPoint, pairwise_distance, wrap_array

TALENT_EPS = 1e-6


class NetworkRule(str, Enum):
    RANDOM = "Random"
    LOCATION = "Location"
    WEALTH = "Wealth"
    TALENT = "Talent"


class MovementRule(str, Enum):
    RANDOM = "Random"
    HIGHEST = "Highest"
    AVERAGE = "Average"


class EventKind(str, Enum):
    LUCKY = "Lucky"
    UNLUCKY = "Unlucky"


@dataclass(frozen=True)
class SimParams:
    """Full parameterization of one run.

    ``n_events`` defaults to half the population and ``random_link_prob`` to
    the link density of the Location rule (pi R^2 / L^2) when left as None.
    """

    n_agents: int = 1000
    world_side: float = 200.0
    n_events: int | None = None
    p_lucky: float = 50.0
    talent_mean: float = 0.6
    talent_std: float = 0.1
    event_radius: float = 1.0
    event_speed: float = 1.0
    agent_speed: float = 1.0
    initial_wealth: float = 5.0
    delta_wealth: float = 0.5
    location_radius: float = 5.0
    wealth_radius_mult: float = 3.0
    talent_radius_mult: float = 1.0
    random_link_prob: float | None = None
    steps: int = 100
    network_rule: NetworkRule = NetworkRule.RANDOM
    movement_rule: MovementRule = MovementRule.RANDOM
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "network_rule", NetworkRule(self.network_rule))
        object.__setattr__(self, "movement_rule", MovementRule(self.movement_rule))
        self.validate()

    def validate(self) -> None:
        def need(ok: bool, key: str, msg: str):
            if not ok:
                raise ParamError(key, msg)

        for key in ("n_agents", "steps", "seed"):
            v = getattr(self, key)
            need(isinstance(v, (int, np.integer)) and not isinstance(v, bool), key, f"must be an integer, got {v!r}")
        if self.n_events is not None:
            need(isinstance(self.n_events, (int, np.integer)), "n_events", f"must be an integer, got {self.n_events!r}")
            need(self.n_events >= 0, "n_events", "must be >= 0")
        for key in (
            "world_side", "p_lucky", "talent_mean", "talent_std", "event_radius", "event_speed",
            "agent_speed", "initial_wealth", "delta_wealth", "location_radius",
            "wealth_radius_mult", "talent_radius_mult",
        ):
            v = getattr(self, key)
            need(isinstance(v, (int, float)) and math.isfinite(v), key, f"must be a finite number, got {v!r}")

        need(self.n_agents >= 1, "n_agents", "must be >= 1")
        need(self.world_side > 0, "world_side", "must be > 0")
        need(0 <= self.p_lucky <= 100, "p_lucky", f"must be in [0, 100], got {self.p_lucky}")
        need(self.talent_std >= 0, "talent_std", "must be >= 0")
        need(self.event_radius > 0, "event_radius", "must be > 0")
        for key in ("event_speed", "agent_speed", "delta_wealth", "location_radius",
                    "wealth_radius_mult", "talent_radius_mult"):
            need(getattr(self, key) >= 0, key, "must be >= 0")
        need(self.steps >= 0, "steps", "must be >= 0")
        need(0 <= self.seed < 2**64, "seed", "must be in [0, 2**64)")
        if self.random_link_prob is not None:
            p = self.random_link_prob
            need(isinstance(p, (int, float)) and 0 <= p <= 1, "random_link_prob", f"must be in [0, 1], got {p!r}")

    @property
    def event_count(self) -> int:
        return self.n_agents // 2 if self.n_events is None else int(self.n_events)

    @property
    def lucky_count(self) -> int:
        # Round half up; Python's round() is banker's rounding.
        return int(math.floor(self.event_count * self.p_lucky / 100.0 + 0.5))

    @property
    def link_prob(self) -> float:
        if self.random_link_prob is not None:
            return float(self.random_link_prob)
        return min(1.0, math.pi * self.location_radius**2 / self.world_side**2)

    def replace(self, **changes) -> SimParams:
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class Agent:
    id: int
    pos: TorusPoint
    talent: float
    wealth: float
    lucky_hits: int = 0
    unlucky_hits: int = 0
    # Lucky hits whose talent draw succeeded; needed for the wealth identity.
    lucky_gains: int = 0


@dataclass(frozen=True)
class EventCircle:
    id: int
    pos: TorusPoint
    kind: EventKind
    radius: float


@dataclass(eq=False)
class WorldState:
    """Evolving state of one run.

    ``adjacency`` is a symmetric boolean (N, N) matrix with an empty diagonal.
    ``contacts`` is a boolean (N_E, N) matrix: ``contacts[e, i]`` is set when
    event ``e`` covered agent ``i`` at the last evaluation.
    """

    params: SimParams
    pos: np.ndarray
    talent: np.ndarray
    wealth: np.ndarray
    lucky_hits: np.ndarray
    unlucky_hits: np.ndarray
    lucky_gains: np.ndarray
    event_pos: np.ndarray
    event_lucky: np.ndarray
    adjacency: np.ndarray
    contacts: np.ndarray
    rng: np.random.Generator
    step_index: int = 0
    # Fired (event_id, agent_id) pairs of the most recent step, in firing order.
    last_fired: np.ndarray = field(default_factory=lambda: np.empty((0, 2), dtype=np.int64))

    @property
    def n_agents(self) -> int:
        return self.pos.shape[0]

    @property
    def finished(self) -> bool:
        return self.step_index >= self.params.steps

    def agent(self, i: int) -> Agent:
        return Agent(
            id=int(i),
            pos=TorusPoint(float(self.pos[i, 0]), float(self.pos[i, 1])),
            talent=float(self.talent[i]),
            wealth=float(self.wealth[i]),
            lucky_hits=int(self.lucky_hits[i]),
            unlucky_hits=int(self.unlucky_hits[i]),
            lucky_gains=int(self.lucky_gains[i]),
        )

    def agents(self) -> list[Agent]:
        return [self.agent(i) for i in range(self.n_agents)]

    def events(self) -> list[EventCircle]:
        r = self.params.event_radius
        return [
            EventCircle(
                id=e,
                pos=TorusPoint(float(p[0]), float(p[1])),
                kind=EventKind.LUCKY if lucky else EventKind.UNLUCKY,
                radius=r,
            )
            for e, (p, lucky) in enumerate(zip(self.event_pos, self.event_lucky))
        ]

    def contact_pairs(self) -> set[tuple[int, int]]:
        return {(int(e), int(i)) for e, i in zip(*np.nonzero(self.contacts))}

    def neighbor_sets(self) -> list[set[int]]:
        return [set(np.flatnonzero(row).tolist()) for row in self.adjacency]

    def copy(self) -> WorldState:
        return copy.deepcopy(self)

    def identical(self, other: WorldState) -> bool:
        """Bit-level equality, including the RNG state."""
        arrays = ("pos", "talent", "wealth", "lucky_hits", "unlucky_hits", "lucky_gains",
                  "event_pos", "event_lucky", "adjacency", "contacts", "last_fired")
        return (
            self.params == other.params
            and self.step_index == other.step_index
            and all(np.array_equal(getattr(self, a), getattr(other, a)) for a in arrays)
            and self.rng.bit_generator.state == other.rng.bit_generator.state
        )


def init_world(params: SimParams, seed: int | None = None) -> WorldState:
    """Build the initial world for ``params``.

    All randomness comes from a single generator seeded with ``seed`` (or
    ``params.seed``, which is then recorded on the world's params), drawn in this order: agent positions, talents, event
    positions. The first ``params.lucky_count`` events are lucky. Circles that
    already cover an agent are recorded as contacts without firing.
    """
    if seed is not None and seed != params.seed:
        params = params.replace(seed=seed)
    rng = np.random.default_rng(params.seed)
    n, L = params.n_agents, params.world_side
    pos = wrap_array(rng.random((n, 2)) * L, L)
    talent = rng.normal(params.talent_mean, params.talent_std, n)
    np.clip(talent, TALENT_EPS, 1.0 - TALENT_EPS, out=talent)
    n_ev = params.event_count
    event_pos = wrap_array(rng.random((n_ev, 2)) * L, L)
    event_lucky = np.zeros(n_ev, dtype=bool)
    event_lucky[: params.lucky_count] = True
    contacts = pairwise_distance(event_pos, pos, L) <= params.event_radius
    zeros = lambda: np.zeros(n, dtype=np.int64)  # noqa: E731
    return WorldState(
        params=params,
        pos=pos,
        talent=talent,
        wealth=np.full(n, float(params.initial_wealth)),
        lucky_hits=zeros(),
        unlucky_hits=zeros(),
        lucky_gains=zeros(),
        event_pos=event_pos,
        event_lucky=event_lucky,
        adjacency=np.zeros((n, n), dtype=bool),
        contacts=contacts,
        rng=rng,
    )
