"""
Flat ``key = value`` configuration files.

One pair per line; ``#`` starts a comment; blank lines are ignored. Keys are
the :class:`~luckgrid.model.SimParams` field names, plus the sweep keys
``replicates``, ``base_seed``, ``output_dir`` and ``combos``. A file that sets
any sweep key parses to a :class:`SweepSpec`, otherwise to ``SimParams``.
Missing keys take their defaults.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

from luckgrid.errors import ConfigError, ParamError
from luckgrid.model import MovementRule, NetworkRule, SimParams

Combo = tuple[NetworkRule, MovementRule]

ALL_COMBOS: tuple[Combo, ...] = tuple((n, m) for n in NetworkRule for m in MovementRule)

SEED_STRIDE = 10**6

_INT_KEYS = {"n_agents", "n_events", "steps", "seed"}
_ENUM_KEYS = {"network_rule": NetworkRule, "movement_rule": MovementRule}
_PARAM_KEYS = [f.name for f in dataclasses.fields(SimParams)]
_SWEEP_KEYS = ("replicates", "base_seed", "output_dir", "combos")


@dataclass(frozen=True)
class SweepSpec:
    base: SimParams = field(default_factory=SimParams)
    combos: tuple[Combo, ...] = ALL_COMBOS
    replicates: int = 10
    base_seed: int = 0
    output_dir: Path = Path("out")

    def __post_init__(self):
        object.__setattr__(self, "combos", tuple(parse_combo(c) for c in self.combos))
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        if not self.combos:
            raise ParamError("combos", "need at least one combo")
        if self.replicates < 1:
            raise ParamError("replicates", "must be >= 1")
        if self.replicates >= SEED_STRIDE:
            raise ParamError("replicates", f"must be < {SEED_STRIDE} for collision-free seeds")
        if not 0 <= self.base_seed:
            raise ParamError("base_seed", "must be >= 0")

    def run_seed(self, combo_index: int, replicate: int) -> int:
        return self.base_seed + combo_index * SEED_STRIDE + replicate


def combo_name(combo: Combo) -> str:
    return f"{combo[0].value}-{combo[1].value}"


def parse_combo(value) -> Combo:
    if isinstance(value, str):
        try:
            net, mov = (s.strip() for s in value.split("-"))
        except ValueError:
            raise ValueError(f"combo {value!r} is not of the form Network-Movement") from None
        value = (net, mov)
    net, mov = value
    return _enum(NetworkRule, net), _enum(MovementRule, mov)


def _enum(cls, raw):
    if isinstance(raw, cls):
        return raw
    for member in cls:
        if member.value.lower() == str(raw).strip().lower():
            return member
    choices = ", ".join(m.value for m in cls)
    raise ValueError(f"{raw!r} is not one of {choices}")


def _convert(key: str, raw: str):
    if key in _ENUM_KEYS:
        return _enum(_ENUM_KEYS[key], raw)
    if key in _INT_KEYS or key in ("replicates", "base_seed"):
        return int(raw, 0)
    if key == "output_dir":
        return Path(raw)
    if key == "combos":
        if raw.strip().lower() == "all":
            return ALL_COMBOS
        return tuple(parse_combo(c) for c in raw.split(",") if c.strip())
    return float(raw)


def parse_config(text: str) -> SimParams | SweepSpec:
    values: dict[str, object] = {}
    lines: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, raw = body.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not key:
            raise ConfigError(f"expected 'key = value', got {line.strip()!r}", line=lineno)
        if key not in _PARAM_KEYS and key not in _SWEEP_KEYS:
            raise ConfigError(f"unknown key {key!r}", line=lineno, key=key)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", line=lineno, key=key)
        if not raw:
            raise ConfigError(f"missing value for {key!r}", line=lineno, key=key)
        try:
            values[key] = _convert(key, raw)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {exc}", line=lineno, key=key) from None
        lines[key] = lineno

    sweep = {k: values.pop(k) for k in _SWEEP_KEYS if k in values}
    try:
        params = SimParams(**values)
        return SweepSpec(base=params, **sweep) if sweep else params
    except ParamError as exc:
        raise ConfigError(f"out-of-range value for {exc.key!r}: {exc}", line=lines.get(exc.key),
                          key=exc.key) from None


def load_config(path: str | Path) -> SimParams | SweepSpec:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def _format(value) -> str:
    if isinstance(value, (NetworkRule, MovementRule)):
        return value.value
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize_params(params: SimParams) -> str:
    """Render ``params`` as config text; :func:`parse_config` reads it back equal."""
    out = []
    for name in _PARAM_KEYS:
        value = getattr(params, name)
        if value is None:
            continue
        out.append(f"{name} = {_format(value)}")
    return "\n".join(out) + "\n"


def serialize_sweep(spec: SweepSpec) -> str:
    combos = ", ".join(combo_name(c) for c in spec.combos)
    return serialize_params(spec.base) + (
        f"replicates = {spec.replicates}\n"
        f"base_seed = {spec.base_seed}\n"
        f"output_dir = {spec.output_dir}\n"
        f"combos = {combos}\n"
    )
