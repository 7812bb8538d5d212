import json

import numpy as np
import pytest

from ccqo.ansatz import AnsatzKind, AnsatzSpec
from ccqo.benchmark import (
    BenchmarkPlan,
    BenchmarkReport,
    CellStats,
    compare_report,
    derive_seed,
    first_crossing,
    run_benchmark,
    trace_filename,
)
from ccqo.optimizer import OptimizerConfig, optimize

SHORT = OptimizerConfig(max_iterations=5)


def test_derive_seed_stable_and_distinct():
    a = derive_seed(0, AnsatzKind.CCQO_E, 1, 0)
    assert a == derive_seed(0, "ccqo-e", 1, 0)
    keys = [(b, k, p, r) for b in (0, 1) for k in AnsatzKind for p in (1, 2) for r in range(3)]
    assert len({derive_seed(*key) for key in keys}) == len(keys)


def test_single_run_cell_has_zero_spread(model):
    trace = optimize(AnsatzSpec("ccqo", 1), model, SHORT)
    cell = CellStats.from_traces([trace])
    assert cell.mean_energy == trace.final_energy and cell.std_energy == 0.0
    assert cell.mean_success == trace.final_success and cell.std_success == 0.0


def test_population_std(model):
    traces = [optimize(AnsatzSpec("cqaoa", 1), model, OptimizerConfig(max_iterations=2, seed=s))
              for s in range(4)]
    e = np.array([t.final_energy for t in traces])
    assert CellStats.from_traces(traces).std_energy == pytest.approx(np.sqrt(np.mean((e - e.mean()) ** 2)))


def test_runs_replay_in_isolation(model):
    plan = BenchmarkPlan(algorithms=("cqaoa", "ccqo-e"), layers=(1, 2), repeats=2, optimizer=SHORT)
    report = run_benchmark(plan, model)
    assert len(report.traces) == 8 and not report.failures
    again = optimize(AnsatzSpec("ccqo-e", 2), model,
                     OptimizerConfig(max_iterations=5, seed=derive_seed(0, "ccqo-e", 2, 1)))
    assert report.traces[AnsatzKind.CCQO_E, 2, 1].to_csv() == again.to_csv()


def test_report_files(tmp_path, model):
    plan = BenchmarkPlan(algorithms=("ccqo",), layers=(1,), repeats=2, optimizer=SHORT)
    run_benchmark(plan, model, tmp_path)
    names = sorted(p.name for p in (tmp_path / "traces").iterdir())
    assert names == [trace_filename(AnsatzKind.CCQO, 1, r) for r in range(2)] == \
        ["ccqo_p1_r00.csv", "ccqo_p1_r01.csv"]
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["cells"][0]["runs"] == 2
    assert BenchmarkPlan.from_dict(report["plan"]) == BenchmarkPlan(
        algorithms=("ccqo",), layers=(1,), repeats=2, optimizer=OptimizerConfig(max_iterations=5))


def test_plan_validation():
    with pytest.raises(ValueError):
        BenchmarkPlan(repeats=0)
    with pytest.raises(ValueError):
        BenchmarkPlan(layers=())
    with pytest.raises(ValueError):
        BenchmarkPlan(algorithms=("vqe",))


def test_plan_accepts_layer_range():
    plan = BenchmarkPlan.from_dict({"layer_range": {"start": 2, "stop": 4}})
    assert plan.layers == (2, 3, 4)


def test_compare_single_algorithm_is_singleton_ranking(model):
    plan = BenchmarkPlan(algorithms=("ccqo-e",), layers=(1, 3), repeats=2, optimizer=SHORT)
    cmp = compare_report(run_benchmark(plan, model))
    assert cmp.energy_ranking == {1: ["ccqo-e"], 3: ["ccqo-e"]}
    assert len(cmp.trend_checks) == 1 and cmp.aggregate_ok


def test_compare_rejects_empty_report():
    with pytest.raises(ValueError):
        compare_report(BenchmarkReport(BenchmarkPlan()))


def test_trend_check_detects_regression(model):
    plan = BenchmarkPlan(algorithms=("ccqo",), layers=(1, 3), repeats=1, optimizer=SHORT)
    report = run_benchmark(plan, model)
    report.cells[AnsatzKind.CCQO, 3] = CellStats(100.0, 0.0, 0.0, 0.0, 1)
    cmp = compare_report(report)
    assert not cmp.trends_ok and not cmp.aggregate_ok


def test_first_crossing():
    assert first_crossing(np.array([3.0, 2.5, 1.9, 0.4]), 2.0) == 2
    assert first_crossing(np.array([3.0, 2.5]), 0.5) is None


def test_failed_run_is_recorded(model, monkeypatch):
    import ccqo.benchmark as bm

    def boom(*a, **k):
        raise RuntimeError("solver blew up")

    monkeypatch.setattr(bm, "optimize", boom)
    report = run_benchmark(BenchmarkPlan(algorithms=("ccqo",), layers=(1,), repeats=1), model)
    assert "solver blew up" in report.failures[AnsatzKind.CCQO, 1, 0]
    assert report.cells == {}
