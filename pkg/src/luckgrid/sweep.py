"""
Parameter sweep over strategy combos and replicate seeds.

Run ``(combo c, replicate k)`` uses seed ``base_seed + c * 10**6 + k``, where
``c`` indexes ``spec.combos``. Each run writes into its own directory
``<output_dir>/runs/<Network>-<Movement>/rep_<k>/``; ``summary.csv`` is
written once at the end, sorted by combo index, so output bytes do not
depend on the number of workers.
"""

from __future__ import annotations

import csv
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from luckgrid.config import Combo, SweepSpec, combo_name, parse_combo
from luckgrid.engine import run
from luckgrid.export import export_run, read_csv
from luckgrid.model import SimParams
from luckgrid.stats import SummaryMetrics

log = logging.getLogger(__name__)

JOBS_ENV = "LUCKGRID_JOBS"
SUMMARY_HEADER = ["network_rule", "movement_rule", "replicates", "mean_wealth", "std_wealth", "gini"]


class SweepError(RuntimeError):
    def __init__(self, combo: Combo, seed: int, cause: BaseException):
        self.combo = combo
        self.seed = seed
        super().__init__(f"run {combo_name(combo)} seed {seed} failed: {cause}")


@dataclass(frozen=True)
class SummaryRow:
    combo: Combo
    replicates: int
    mean_wealth: float
    std_wealth: float
    gini: float

    @property
    def name(self) -> str:
        return combo_name(self.combo)


@dataclass(frozen=True)
class _Task:
    combo_index: int
    replicate: int
    combo: Combo
    seed: int
    params: SimParams
    out_dir: Path | None


def _execute(task: _Task) -> tuple[int, int, SummaryMetrics]:
    try:
        result = run(task.params, task.seed)
        if task.out_dir is not None:
            export_run(result, task.out_dir)
    except Exception as exc:
        raise SweepError(task.combo, task.seed, exc) from exc
    return task.combo_index, task.replicate, result.summary


def resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        env = os.environ.get(JOBS_ENV, "").strip()
        jobs = int(env) if env else 1
    return max(1, int(jobs))


def run_dir(output_dir: Path, combo: Combo, replicate: int) -> Path:
    return Path(output_dir) / "runs" / combo_name(combo) / f"rep_{replicate:03d}"


def _tasks(spec: SweepSpec, export: bool) -> list[_Task]:
    tasks = []
    for c, combo in enumerate(spec.combos):
        params = spec.base.replace(network_rule=combo[0], movement_rule=combo[1])
        for k in range(spec.replicates):
            seed = spec.run_seed(c, k)
            out = run_dir(spec.output_dir, combo, k) if export else None
            tasks.append(_Task(c, k, combo, seed, params.replace(seed=seed), out))
    return tasks


def _mean(values: list[float]) -> float:
    finite = [v for v in values if not math.isnan(v)]
    return float(np.mean(finite)) if finite else math.nan


def run_sweep(spec: SweepSpec, jobs: int | None = None, export: bool = True,
              write_summary: bool = True) -> list[SummaryRow]:
    """Run every (combo, replicate) and average the final metrics per combo.

    Raises:
        SweepError: on the first failing run, naming its combo and seed.
    """
    jobs = resolve_jobs(jobs)
    tasks = _tasks(spec, export)
    log.info("sweep: %d runs over %d combos with %d worker(s)", len(tasks), len(spec.combos), jobs)
    if jobs == 1:
        results = [_execute(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_execute, tasks))

    per_combo: dict[int, list[SummaryMetrics]] = {}
    for c, _k, metrics in sorted(results, key=lambda r: (r[0], r[1])):
        per_combo.setdefault(c, []).append(metrics)
    rows = [
        SummaryRow(
            combo=spec.combos[c],
            replicates=len(ms),
            mean_wealth=_mean([m.mean_wealth for m in ms]),
            std_wealth=_mean([m.std_wealth for m in ms]),
            gini=_mean([m.gini for m in ms]),
        )
        for c, ms in sorted(per_combo.items())
    ]
    if write_summary:
        write_summary_csv(rows, Path(spec.output_dir) / "summary.csv")
    return rows


def _full(value: float) -> str:
    # Full precision so a one-replicate summary reads back equal to the run.
    return "" if math.isnan(value) else repr(float(value))


def write_summary_csv(rows: list[SummaryRow], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_HEADER)
        for r in rows:
            writer.writerow([r.combo[0].value, r.combo[1].value, r.replicates,
                             _full(r.mean_wealth), _full(r.std_wealth), _full(r.gini)])
    return path


def read_summary_csv(path: str | Path) -> list[SummaryRow]:
    def num(s: str) -> float:
        return float(s) if s else math.nan

    return [
        SummaryRow(
            combo=parse_combo((rec["network_rule"], rec["movement_rule"])),
            replicates=int(rec["replicates"]),
            mean_wealth=num(rec["mean_wealth"]),
            std_wealth=num(rec["std_wealth"]),
            gini=num(rec["gini"]),
        )
        for rec in read_csv(path)
    ]


def render_table(rows: list[SummaryRow]) -> str:
    """Aligned text table, one row per combo, values to two decimals."""
    headers = ["Policies", "Mean of wealth", "Standard deviation of wealth", "Gini coefficient"]

    def cell(v: float) -> str:
        return "n/a" if math.isnan(v) else f"{v:.2f}"

    body = [[r.name, cell(r.mean_wealth), cell(r.std_wealth), cell(r.gini)] for r in rows]
    widths = [max(len(h), *(len(b[i]) for b in body)) if body else len(h) for i, h in enumerate(headers)]
    sep = "+" + "+".join("-" * (w + 2) for w in widths) + "+"

    def line(cells):
        first = f" {cells[0]:<{widths[0]}} "
        rest = [f" {c:>{w}} " for c, w in zip(cells[1:], widths[1:])]
        return "|" + "|".join([first, *rest]) + "|"

    return "\n".join([sep, line(headers), sep, *(line(b) for b in body), sep])
