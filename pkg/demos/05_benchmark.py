"""A reduced sweep over the three ansatze (the default plan takes a few minutes)."""
import sys

from ccqo import BenchmarkPlan, compare_report, run_benchmark

out = sys.argv[1] if len(sys.argv) > 1 else None
plan = BenchmarkPlan(layers=(1, 3), repeats=4)
report = run_benchmark(plan, out_dir=out)

for (kind, p), c in report.cells.items():
    print(f"{kind.value:7s} p={p}  E {c.mean_energy:.3f} +/- {c.std_energy:.3f}"
          f"  P {c.mean_success:.3f} +/- {c.std_success:.3f}")

cmp = compare_report(report)
print("energy ranking:", cmp.energy_ranking)
print("success ranking:", cmp.success_ranking)
print("trend checks ok:", cmp.trends_ok)
