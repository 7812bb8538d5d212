"""Finite-difference gradient descent with step-decayed learning rate."""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .ansatz import AnsatzSpec, CompiledAnsatz, random_parameters
from .encoding import IsingModel
from .photonic import IDEAL, NoiseConfig, energy, propagate, sample_intensities

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class OptimizerConfig:
    learning_rate_init: float = 0.005
    decay_factor: float = 0.1
    decay_every: int = 30
    fd_step: float = 0.01
    max_iterations: int = 150
    seed: int = 0
    input_port: int = 1

    def __post_init__(self):
        if self.learning_rate_init <= 0 or self.fd_step <= 0 or self.decay_every < 1:
            raise ValueError("learning rate, fd step and decay interval must be positive")
        if not 0 < self.decay_factor <= 1:
            raise ValueError("decay_factor must lie in (0, 1]")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be non-negative")

    def learning_rate(self, iteration: int) -> float:
        return self.learning_rate_init * self.decay_factor ** (iteration // self.decay_every)

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def fd_gradient(cost: Callable[[np.ndarray], float], params, step: float) -> np.ndarray:
    """Central difference ``(f(x + h e_k) - f(x - h e_k)) / 2h`` per coordinate."""
    if step <= 0:
        raise ValueError("finite-difference step must be positive")
    x = np.asarray(params, dtype=float)
    grad = np.empty_like(x)
    for k in range(x.size):
        shift = np.zeros_like(x)
        shift[k] = step
        grad[k] = (cost(x + shift) - cost(x - shift)) / (2 * step)
    return grad


@dataclass
class IterationRecord:
    iteration: int
    learning_rate: float
    params: np.ndarray
    intensities: np.ndarray
    energy: float
    success_probability: float


@dataclass
class RunTrace:
    """Iteration ``t`` holds the parameters after ``t`` updates and the rate for update ``t``."""

    spec: AnsatzSpec
    config: OptimizerConfig
    noise: NoiseConfig
    target: int
    records: list[IterationRecord] = field(default_factory=list)
    status: str = "ok"
    message: str = ""

    @property
    def final(self) -> IterationRecord:
        return self.records[-1]

    @property
    def final_energy(self) -> float:
        return self.final.energy

    @property
    def final_success(self) -> float:
        return self.final.success_probability

    def energies(self) -> np.ndarray:
        return np.array([r.energy for r in self.records])

    def successes(self) -> np.ndarray:
        return np.array([r.success_probability for r in self.records])

    def to_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["iteration", "lr", "energy", "success_prob", *self.spec.parameter_names()])
        for r in self.records:
            w.writerow([r.iteration, repr(r.learning_rate), repr(r.energy),
                        repr(r.success_probability), *(repr(float(p)) for p in r.params)])
        return out.getvalue()

    def save_csv(self, path: str | Path):
        Path(path).write_text(self.to_csv())


class EnergyEstimator:
    """Energy of the ansatz state as read from the output ports.

    Noiseless evaluation uses the state vector directly; shot noise draws from
    ``rng``; phase jitter compiles each probe to a mesh and perturbs it.
    """

    def __init__(self, ansatz: CompiledAnsatz, model: IsingModel, input_port: int = 1,
                 noise: NoiseConfig = IDEAL, rng: np.random.Generator | None = None):
        self.ansatz = ansatz
        self.table = model.energies()
        self.noise = noise
        self.rng = rng
        self.input_port = input_port
        self.state_in = np.zeros(ansatz.dim, dtype=complex)
        self.state_in[input_port - 1] = 1.0

    def intensities(self, params) -> np.ndarray:
        if self.noise.phase_jitter_sd > 0:
            return propagate(self.ansatz.unitary(params), self.input_port, self.noise, self.rng)
        psi = self.ansatz.apply(params, self.state_in)
        return sample_intensities(np.abs(psi) ** 2, self.noise.shots, self.rng)

    def __call__(self, params) -> float:
        return float(self.intensities(params) @ self.table)


def optimize(spec: AnsatzSpec, model: IsingModel, config: OptimizerConfig = OptimizerConfig(),
             noise: NoiseConfig = IDEAL, initial: Optional[np.ndarray] = None,
             target: Optional[int] = None) -> RunTrace:
    """Plain gradient descent from a uniform ``[-pi, pi)`` start."""
    seeds = np.random.SeedSequence(config.seed)
    init_rng, noise_rng = (np.random.default_rng(s) for s in seeds.spawn(2))
    ansatz = CompiledAnsatz(spec, model)
    theta = random_parameters(spec, init_rng) if initial is None else np.array(initial, dtype=float)
    cost = EnergyEstimator(ansatz, model, config.input_port, noise, noise_rng)
    target = model.ground_state() if target is None else target
    trace = RunTrace(spec, config, noise, target)

    def record(t: int, theta: np.ndarray):
        dist = cost.intensities(theta)
        e = energy(dist, model)
        trace.records.append(IterationRecord(t, config.learning_rate(t), theta.copy(), dist, e,
                                             float(dist[target])))
        return e

    if not math.isfinite(record(0, theta)):
        trace.status, trace.message = "aborted", "non-finite energy at the initial point"
        return trace
    for t in range(config.max_iterations):
        grad = fd_gradient(cost, theta, config.fd_step)
        if not np.all(np.isfinite(grad)):
            trace.status = "aborted"
            trace.message = f"non-finite gradient at iteration {t}"
            log.warning(trace.message)
            break
        theta = theta - config.learning_rate(t) * grad
        if not math.isfinite(record(t + 1, theta)):
            trace.status = "aborted"
            trace.message = f"non-finite energy after iteration {t}"
            log.warning(trace.message)
            break
    return trace
