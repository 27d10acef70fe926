"""CSV export of a single run."""

from __future__ import annotations

import csv
import math
from pathlib import Path

from luckgrid.config import combo_name
from luckgrid.engine import RunResult
from luckgrid.stats import event_histogram, wealth_histogram

AGENT_HEADER = ["run_id", "seed", "agent_id", "talent", "wealth_magnitude",
                "lucky_hits", "unlucky_hits", "x", "y"]
TIMESERIES_HEADER = ["step", "mean_wealth", "std_wealth", "gini"]


def fmt(value: float) -> str:
    """Six significant digits; undefined metrics become an empty field."""
    value = float(value)
    if math.isnan(value):
        return ""
    return f"{value:.6g}"


def run_id(result: RunResult) -> str:
    p = result.params
    return f"{combo_name((p.network_rule, p.movement_rule))}-{result.seed}"


def _write(path: Path, header: list[str], rows) -> None:
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def export_run(result: RunResult, out_dir: str | Path) -> list[Path]:
    """Write the five per-run CSV files into ``out_dir`` and return their paths."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create {out}: {exc.strerror or exc}") from exc
    w = result.final
    rid = run_id(result)

    agents = (
        [rid, result.seed, i, fmt(w.talent[i]), fmt(w.wealth[i]),
         int(w.lucky_hits[i]), int(w.unlucky_hits[i]), fmt(w.pos[i, 0]), fmt(w.pos[i, 1])]
        for i in range(w.n_agents)
    )
    series = ([t, fmt(m), fmt(s), fmt(g)] for t, (m, s, g) in enumerate(result.series))

    files = {
        "agents.csv": (AGENT_HEADER, agents),
        "timeseries.csv": (TIMESERIES_HEADER, series),
        "lucky_hist.csv": (["n_events", "count"], enumerate(event_histogram(w.lucky_hits).tolist())),
        "unlucky_hist.csv": (["n_events", "count"], enumerate(event_histogram(w.unlucky_hits).tolist())),
    }
    p = result.params
    width = p.delta_wealth if p.delta_wealth > 0 else 1.0
    lower, counts = wealth_histogram(w.wealth, width, origin=p.initial_wealth)
    files["wealth_hist.csv"] = (["bin_lower", "count"],
                                ((fmt(b), int(c)) for b, c in zip(lower, counts)))

    paths = []
    for name, (header, rows) in files.items():
        path = out / name
        _write(path, header, rows)
        paths.append(path)
    return paths


def read_csv(path: str | Path) -> list[dict[str, str]]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))
