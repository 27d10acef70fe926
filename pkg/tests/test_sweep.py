import math

import pytest

from luckgrid.config import SweepSpec
from luckgrid.engine import run
from luckgrid.model import MovementRule, NetworkRule, SimParams
from luckgrid.sweep import (
    SummaryRow,
    SweepError,
    read_summary_csv,
    render_table,
    resolve_jobs,
    run_dir,
    run_sweep,
)

BASE = SimParams(n_agents=60, world_side=30.0, steps=12)


def spec(tmp_path, **kw):
    return SweepSpec(base=BASE, output_dir=tmp_path, **kw)


class TestRunSweep:
    def test_single_run_equals_direct_run(self, tmp_path):
        s = spec(tmp_path, combos=("Location-Highest",), replicates=1, base_seed=3)
        rows = run_sweep(s)
        direct = run(BASE.replace(network_rule="Location", movement_rule="Highest"), seed=3).summary
        assert rows == [SummaryRow((NetworkRule.LOCATION, MovementRule.HIGHEST), 1,
                                   direct.mean_wealth, direct.std_wealth, direct.gini)]
        assert read_summary_csv(tmp_path / "summary.csv") == rows

    def test_replicates_average(self, tmp_path):
        s = spec(tmp_path, combos=("Random-Random", "Talent-Average"), replicates=3, base_seed=10)
        rows = run_sweep(s, export=False)
        for c, row in enumerate(rows):
            p = BASE.replace(network_rule=row.combo[0], movement_rule=row.combo[1])
            finals = [run(p, seed=10 + c * 10**6 + k).summary for k in range(3)]
            assert row.mean_wealth == pytest.approx(sum(f.mean_wealth for f in finals) / 3, abs=1e-12)
            assert row.gini == pytest.approx(sum(f.gini for f in finals) / 3, abs=1e-12)

    def test_run_directories(self, tmp_path):
        s = spec(tmp_path, combos=("Wealth-Random", "Random-Average"), replicates=2)
        run_sweep(s)
        for combo in s.combos:
            for k in range(2):
                d = run_dir(tmp_path, combo, k)
                assert (d / "agents.csv").exists() and (d / "timeseries.csv").exists()
        assert (tmp_path / "runs" / "Wealth-Random" / "rep_001").is_dir()

    def test_output_independent_of_jobs(self, tmp_path):
        combos = ("Random-Highest", "Location-Average", "Talent-Random")
        run_sweep(spec(tmp_path / "one", combos=combos, replicates=2), jobs=1)
        run_sweep(spec(tmp_path / "two", combos=combos, replicates=2), jobs=2)
        one = sorted(p.relative_to(tmp_path / "one") for p in (tmp_path / "one").rglob("*.csv"))
        two = sorted(p.relative_to(tmp_path / "two") for p in (tmp_path / "two").rglob("*.csv"))
        assert one == two and len(one) == 1 + 6 * 5
        for rel in one:
            assert (tmp_path / "one" / rel).read_bytes() == (tmp_path / "two" / rel).read_bytes()

    def test_failure_names_combo_and_seed(self, tmp_path, monkeypatch):
        import luckgrid.sweep as sweep

        def boom(params, seed):
            raise RuntimeError("kaput")

        monkeypatch.setattr(sweep, "run", boom)
        with pytest.raises(SweepError, match="Random-Average seed 7"):
            run_sweep(spec(tmp_path, combos=("Random-Average",), replicates=1, base_seed=7))


class TestJobs:
    def test_env_fallback(self, monkeypatch):
        monkeypatch.setenv("LUCKGRID_JOBS", "3")
        assert resolve_jobs(None) == 3
        assert resolve_jobs(2) == 2
        monkeypatch.delenv("LUCKGRID_JOBS")
        assert resolve_jobs(None) == 1
        assert resolve_jobs(0) == 1


class TestSummaryFiles:
    def test_nan_round_trip(self, tmp_path):
        from luckgrid.sweep import write_summary_csv

        rows = [SummaryRow((NetworkRule.RANDOM, MovementRule.RANDOM), 2, 0.1 + 0.2, 1 / 3, math.nan)]
        write_summary_csv(rows, tmp_path / "s.csv")
        back = read_summary_csv(tmp_path / "s.csv")
        assert back[0].mean_wealth == 0.1 + 0.2 and back[0].std_wealth == 1 / 3
        assert math.isnan(back[0].gini)

    def test_render_table(self):
        rows = [
            SummaryRow((NetworkRule.RANDOM, MovementRule.RANDOM), 10, 4.7012, 1.18, 0.1291),
            SummaryRow((NetworkRule.TALENT, MovementRule.AVERAGE), 10, 4.697, 0.805, math.nan),
        ]
        text = render_table(rows)
        lines = text.splitlines()
        assert len({len(x) for x in lines}) == 1
        assert "Policies" in lines[1] and "Gini coefficient" in lines[1]
        assert "Random-Random" in lines[3] and "4.70" in lines[3] and "0.13" in lines[3]
        assert "n/a" in lines[4]
