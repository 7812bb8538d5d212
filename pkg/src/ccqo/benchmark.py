"""Multi-seed sweeps over algorithms and layer counts, with aggregate statistics."""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .ansatz import AnsatzKind, AnsatzSpec
from .encoding import IsingModel, model_2893
from .optimizer import OptimizerConfig, RunTrace, optimize
from .photonic import IDEAL, NoiseConfig

log = logging.getLogger(__name__)

# 3-layer averages measured on the photonic chip, for plot annotation only
HARDWARE_REFERENCE = {
    "layers": 3,
    "mean_energy": {"cqaoa": 3.57, "ccqo": 3.13, "ccqo-e": 0.472},
    "mean_success": {"cqaoa": 0.528, "ccqo": 0.608, "ccqo-e": 0.861},
    "layers_to_near_optimal": {"cqaoa": 7, "ccqo": 5, "ccqo-e": 3},
}

_KIND_INDEX = {AnsatzKind.CQAOA: 0, AnsatzKind.CCQO: 1, AnsatzKind.CCQO_E: 2}


def derive_seed(seed_base: int, kind: AnsatzKind, layers: int, repeat: int) -> int:
    """Deterministic per-run seed, so any run can be replayed alone."""
    seq = np.random.SeedSequence([seed_base, _KIND_INDEX[AnsatzKind.parse(kind)], layers, repeat])
    return int(seq.generate_state(1, dtype=np.uint32)[0])


@dataclass(frozen=True)
class BenchmarkPlan:
    algorithms: tuple[AnsatzKind, ...] = tuple(AnsatzKind)
    layers: tuple[int, ...] = tuple(range(1, 8))
    repeats: int = 10
    optimizer: OptimizerConfig = OptimizerConfig()
    noise: NoiseConfig = IDEAL
    seed_base: int = 0
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "algorithms", tuple(AnsatzKind.parse(a) for a in self.algorithms))
        object.__setattr__(self, "layers", tuple(int(p) for p in self.layers))
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if not self.layers or not self.algorithms:
            raise ValueError("plan needs at least one algorithm and one layer count")
        if min(self.layers) < 1:
            raise ValueError("layer counts must be positive")

    def runs(self):
        for kind in self.algorithms:
            for p in self.layers:
                for r in range(self.repeats):
                    yield kind, p, r

    def to_dict(self) -> dict:
        opt = self.optimizer.to_dict()
        opt.pop("seed")
        return {
            "algorithms": [k.value for k in self.algorithms],
            "layers": list(self.layers),
            "repeats": self.repeats,
            "optimizer": opt,
            "noise": self.noise.to_dict(),
            "seed_base": self.seed_base,
            "workers": self.workers,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BenchmarkPlan":
        layers = d.get("layers", d.get("layer_range", list(range(1, 8))))
        if isinstance(layers, dict):
            layers = range(layers["start"], layers["stop"] + 1)
        return cls(
            algorithms=tuple(d.get("algorithms", [k.value for k in AnsatzKind])),
            layers=tuple(layers),
            repeats=int(d.get("repeats", 10)),
            optimizer=OptimizerConfig(**{k: v for k, v in d.get("optimizer", {}).items() if k != "seed"}),
            noise=NoiseConfig(**d.get("noise", {})),
            seed_base=int(d.get("seed_base", 0)),
            workers=int(d.get("workers", 1)),
        )

    @classmethod
    def load(cls, path: str | Path) -> "BenchmarkPlan":
        return cls.from_dict(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class CellStats:
    mean_energy: float
    std_energy: float
    mean_success: float
    std_success: float
    runs: int

    @classmethod
    def from_traces(cls, traces: Sequence[RunTrace]) -> "CellStats":
        # population std: a single run has zero spread
        e = np.array([t.final_energy for t in traces])
        s = np.array([t.final_success for t in traces])
        return cls(float(e.mean()), float(e.std()), float(s.mean()), float(s.std()), len(traces))


@dataclass
class BenchmarkReport:
    plan: BenchmarkPlan
    traces: dict[tuple[AnsatzKind, int, int], RunTrace] = field(default_factory=dict)
    failures: dict[tuple[AnsatzKind, int, int], str] = field(default_factory=dict)
    cells: dict[tuple[AnsatzKind, int], CellStats] = field(default_factory=dict)

    def cell_traces(self, kind: AnsatzKind, layers: int) -> list[RunTrace]:
        return [t for (k, p, _), t in sorted(self.traces.items(), key=lambda kv: kv[0][2])
                if k is kind and p == layers and t.status == "ok"]

    def aggregate(self) -> dict[tuple[AnsatzKind, int], CellStats]:
        cells = {}
        for kind in self.plan.algorithms:
            for p in self.plan.layers:
                traces = self.cell_traces(kind, p)
                if traces:
                    cells[kind, p] = CellStats.from_traces(traces)
        return cells

    def mean_curve(self, kind: AnsatzKind, layers: int, which: str = "energy") -> np.ndarray:
        traces = self.cell_traces(kind, layers)
        series = [t.energies() if which == "energy" else t.successes() for t in traces]
        n = min(len(s) for s in series)
        return np.mean([s[:n] for s in series], axis=0)

    def to_dict(self) -> dict:
        return {
            "plan": self.plan.to_dict(),
            "cells": [
                {"algorithm": k.value, "layers": p, **c.__dict__}
                for (k, p), c in self.cells.items()
            ],
            "failures": [
                {"algorithm": k.value, "layers": p, "repeat": r, "error": msg}
                for (k, p, r), msg in self.failures.items()
            ],
            "aborted": [
                {"algorithm": k.value, "layers": p, "repeat": r, "message": t.message}
                for (k, p, r), t in self.traces.items() if t.status != "ok"
            ],
            "hardware_reference": HARDWARE_REFERENCE,
        }


def trace_filename(kind: AnsatzKind, layers: int, repeat: int) -> str:
    return f"{kind.value}_p{layers}_r{repeat:02d}.csv"


def _one_run(args) -> tuple[tuple, RunTrace | None, str | None]:
    kind, p, r, plan, model = args
    config = OptimizerConfig(**{**plan.optimizer.to_dict(), "seed": derive_seed(plan.seed_base, kind, p, r)})
    try:
        trace = optimize(AnsatzSpec(kind, p, model.n_qubits), model, config, plan.noise)
        return (kind, p, r), trace, None
    except Exception as exc:  # recorded per run, the sweep continues
        return (kind, p, r), None, f"{type(exc).__name__}: {exc}"


def run_benchmark(plan: BenchmarkPlan, model: IsingModel | None = None,
                  out_dir: str | Path | None = None) -> BenchmarkReport:
    model = model if model is not None else model_2893()
    jobs = [(k, p, r, plan, model) for k, p, r in plan.runs()]
    if plan.workers > 1:
        with ProcessPoolExecutor(plan.workers) as pool:
            results = list(pool.map(_one_run, jobs))
    else:
        results = [_one_run(j) for j in jobs]

    report = BenchmarkReport(plan)
    for key, trace, error in results:
        if error is not None:
            log.warning("run %s failed: %s", key, error)
            report.failures[key] = error
        else:
            report.traces[key] = trace
    report.cells = report.aggregate()
    if out_dir is not None:
        save_report(report, out_dir)
    return report


def save_report(report: BenchmarkReport, out_dir: str | Path):
    out = Path(out_dir)
    (out / "traces").mkdir(parents=True, exist_ok=True)
    for (k, p, r), trace in report.traces.items():
        trace.save_csv(out / "traces" / trace_filename(k, p, r))
    (out / "report.json").write_text(json.dumps(report.to_dict(), indent=2) + "\n")


@dataclass
class Comparison:
    energy_ranking: dict[int, list[str]]
    success_ranking: dict[int, list[str]]
    threshold_crossing: dict[int, dict[str, dict[float, Optional[int]]]]
    trend_checks: list[dict]
    aggregate_ok: bool

    @property
    def trends_ok(self) -> bool:
        return all(c["ok"] for c in self.trend_checks)

    @property
    def ok(self) -> bool:
        return self.trends_ok and self.aggregate_ok

    def to_dict(self) -> dict:
        return {
            "energy_ranking": {str(p): r for p, r in self.energy_ranking.items()},
            "success_ranking": {str(p): r for p, r in self.success_ranking.items()},
            "threshold_crossing": {
                str(p): {k: {str(t): it for t, it in v.items()} for k, v in d.items()}
                for p, d in self.threshold_crossing.items()
            },
            "trend_checks": self.trend_checks,
            "aggregate_ok": self.aggregate_ok,
        }


def first_crossing(curve: np.ndarray, threshold: float) -> Optional[int]:
    below = np.flatnonzero(curve < threshold)
    return int(below[0]) if below.size else None


def compare_report(report: BenchmarkReport, thresholds: Iterable[float] = (2.0, 0.5)) -> Comparison:
    """Rankings per layer count, threshold crossings of the mean energy curve, trend checks.

    The trend check asserts ``mean(p+2) <= mean(p) + std(p)`` per algorithm.
    """
    if not report.cells:
        raise ValueError("report has no completed runs to compare")
    thresholds = tuple(thresholds)
    layers = sorted({p for _, p in report.cells})
    e_rank, s_rank, crossing = {}, {}, {}
    for p in layers:
        kinds = [k for k in report.plan.algorithms if (k, p) in report.cells]
        e_rank[p] = [k.value for k in sorted(kinds, key=lambda k: report.cells[k, p].mean_energy)]
        s_rank[p] = [k.value for k in sorted(kinds, key=lambda k: -report.cells[k, p].mean_success)]
        crossing[p] = {
            k.value: {t: first_crossing(report.mean_curve(k, p), t) for t in thresholds}
            for k in kinds
        }
    checks = []
    for k in report.plan.algorithms:
        for p in layers:
            a, b = report.cells.get((k, p)), report.cells.get((k, p + 2))
            if a is None or b is None:
                continue
            checks.append({"algorithm": k.value, "layers": p,
                           "mean": a.mean_energy, "std": a.std_energy, "mean_plus_2": b.mean_energy,
                           "ok": bool(b.mean_energy <= a.mean_energy + a.std_energy)})
    recomputed = report.aggregate()
    aggregate_ok = recomputed.keys() == report.cells.keys() and all(
        recomputed[key] == report.cells[key] for key in recomputed)
    return Comparison(e_rank, s_rank, crossing, checks, aggregate_ok)
