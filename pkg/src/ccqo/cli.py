"""Command-line entry point: ``ccqo <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .ansatz import AnsatzKind, AnsatzSpec, build_unitary
from .benchmark import BenchmarkPlan, compare_report, run_benchmark
from .encoding import FactorizationInstance, build_objective, objective_to_hamiltonian
from .mesh import MeshProgram, PortEncoding, decompose
from .optimizer import OptimizerConfig, optimize
from .photonic import NoiseConfig, propagate


def load_unitary(path: str | Path) -> np.ndarray:
    d = json.loads(Path(path).read_text())
    return np.array(d["real"], dtype=float) + 1j * np.array(d["imag"], dtype=float)


def save_unitary(u: np.ndarray, path: str | Path):
    Path(path).write_text(json.dumps({"real": u.real.tolist(), "imag": u.imag.tolist()}))


def _write_json(obj, out: str | None):
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _model(composite: int):
    # both factor templates fix their end bits, so bit counts are informational
    return objective_to_hamiltonian(build_objective(FactorizationInstance(composite, 7, 2)))


def cmd_encode(args) -> int:
    model = _model(args.composite)
    enc = PortEncoding(model.n_qubits)
    table = model.energies()
    out = model.to_dict()
    out["energies"] = [{"port": k + 1, "state": enc.decode(k + 1), "energy": float(e)}
                       for k, e in enumerate(table)]
    out["ground_state"] = enc.decode(model.ground_state() + 1)
    _write_json(out, args.out)
    return 0


def cmd_unitary(args) -> int:
    model = _model(args.composite)
    spec = AnsatzSpec(args.algo, args.layers, model.n_qubits)
    params = [float(x) for x in args.params.split(",")] if args.params else \
        np.random.default_rng(args.seed).uniform(-np.pi, np.pi, len(spec.parameter_names()))
    save_unitary(build_unitary(spec, params, model), args.out)
    return 0


def cmd_decompose(args) -> int:
    program = decompose(load_unitary(args.input))
    if args.out:
        program.save(args.out)
    else:
        _write_json(program.to_dict(), None)
    return 0


def cmd_simulate(args) -> int:
    program = MeshProgram.load(args.mesh)
    noise = NoiseConfig(args.shots, args.jitter)
    rng = np.random.default_rng(args.seed)
    dist = propagate(program, args.port, noise, rng)
    enc = PortEncoding(int(np.log2(program.modes)))
    _write_json({
        "input_port": args.port,
        "noise": noise.to_dict(),
        "seed": args.seed,
        "intensities": dist.tolist(),
        "states": [enc.decode(k + 1) for k in range(program.modes)],
    }, args.out)
    return 0


def cmd_optimize(args) -> int:
    model = _model(args.composite)
    spec = AnsatzSpec(args.algo, args.layers, model.n_qubits)
    config = OptimizerConfig(learning_rate_init=args.lr, fd_step=args.fd_step,
                             max_iterations=args.iterations, seed=args.seed)
    trace = optimize(spec, model, config, NoiseConfig(args.shots, args.jitter))
    if args.out:
        trace.save_csv(args.out)
    else:
        sys.stdout.write(trace.to_csv())
    if trace.status != "ok":
        logging.error(trace.message)
        return 1
    return 0


def cmd_benchmark(args) -> int:
    plan = BenchmarkPlan.load(args.config)
    if args.workers:
        plan = BenchmarkPlan(**{**plan.__dict__, "workers": args.workers})
    report = run_benchmark(plan, out_dir=args.out_dir)
    comparison = compare_report(report)
    (Path(args.out_dir) / "comparison.json").write_text(json.dumps(comparison.to_dict(), indent=2) + "\n")
    for (k, p), c in report.cells.items():
        print(f"{k.value:7s} p={p}: energy {c.mean_energy:.3f} +/- {c.std_energy:.3f}, "
              f"success {c.mean_success:.3f} +/- {c.std_success:.3f}")
    if args.assert_trends and not comparison.ok:
        for c in comparison.trend_checks:
            if not c["ok"]:
                print(f"trend violated: {c}", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ccqo", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    algos = [k.value for k in AnsatzKind]

    p = sub.add_parser("encode", help="emit the Ising model and energy table as JSON")
    p.add_argument("--composite", type=int, default=2893)
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("unitary", help="write an ansatz unitary as JSON")
    p.add_argument("--composite", type=int, default=2893)
    p.add_argument("--algo", choices=algos, required=True)
    p.add_argument("--layers", type=int, default=1)
    p.add_argument("--params", help="comma-separated angles; random from --seed if omitted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_unitary)

    p = sub.add_parser("decompose", help="compile a unitary into MZI settings")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("simulate", help="inject a photon into a mesh and read the ports")
    p.add_argument("--mesh", required=True)
    p.add_argument("--port", type=int, default=1)
    p.add_argument("--shots", type=int)
    p.add_argument("--jitter", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("optimize", help="run one gradient-descent optimization")
    p.add_argument("--composite", type=int, default=2893)
    p.add_argument("--algo", choices=algos, required=True)
    p.add_argument("--layers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shots", type=int)
    p.add_argument("--jitter", type=float, default=0.0)
    p.add_argument("--iterations", type=int, default=150)
    p.add_argument("--lr", type=float, default=0.005)
    p.add_argument("--fd-step", type=float, default=0.01)
    p.add_argument("--out")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("benchmark", help="run a multi-seed sweep from a plan file")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--workers", type=int)
    p.add_argument("--assert-trends", action="store_true")
    p.set_defaults(func=cmd_benchmark)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
