"""Single-photon injection, propagation and port readout."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .encoding import IsingModel
from .mesh import MeshProgram, PortEncoding, decompose, reconstruct
from .pauli import PauliSum, materialize


@dataclass(frozen=True)
class NoiseConfig:
    """``shots=None`` reads exact intensities; ``phase_jitter_sd`` is in radians."""

    shots: Optional[int] = None
    phase_jitter_sd: float = 0.0

    def __post_init__(self):
        if self.shots is not None and self.shots < 1:
            raise ValueError("shots must be >= 1")
        if self.phase_jitter_sd < 0:
            raise ValueError("phase jitter must be non-negative")

    @property
    def ideal(self) -> bool:
        return self.shots is None and self.phase_jitter_sd == 0

    def to_dict(self) -> dict:
        return {"shots": self.shots, "phase_jitter_sd": self.phase_jitter_sd}


IDEAL = NoiseConfig()


def sample_intensities(probs: np.ndarray, shots: Optional[int], rng: np.random.Generator | None) -> np.ndarray:
    """Exact intensities unchanged, or a multinomial histogram of ``shots`` photons."""
    probs = np.asarray(probs, dtype=float)
    if shots is None:
        return probs
    if rng is None:
        raise ValueError("shot sampling needs a random generator")
    # multinomial wants pvals summing to at most one
    pvals = np.clip(probs, 0.0, None)
    return rng.multinomial(shots, pvals / pvals.sum()) / shots


def propagate(circuit: np.ndarray | MeshProgram, input_port: int, noise: NoiseConfig = IDEAL,
              rng: np.random.Generator | None = None) -> np.ndarray:
    """Port intensities after injecting one photon at ``input_port`` (1-based).

    A dense unitary is compiled to a mesh first when phase jitter is requested.
    """
    modes = circuit.modes if isinstance(circuit, MeshProgram) else np.shape(circuit)[0]
    if not 1 <= input_port <= modes:
        raise ValueError(f"input port {input_port} outside 1..{modes}")
    if noise.phase_jitter_sd > 0:
        if rng is None:
            raise ValueError("phase jitter needs a random generator")
        program = circuit if isinstance(circuit, MeshProgram) else decompose(circuit)
        u = reconstruct(program.perturbed(noise.phase_jitter_sd, rng))
    elif isinstance(circuit, MeshProgram):
        u = reconstruct(circuit)
    else:
        u = np.asarray(circuit)
    return sample_intensities(np.abs(u[:, input_port - 1]) ** 2, noise.shots, rng)


def _diagonal_energies(model: IsingModel | PauliSum) -> np.ndarray:
    if isinstance(model, IsingModel):
        return model.energies()
    if not model.is_diagonal():
        raise ValueError("energy readout needs a diagonal (all-Z) observable")
    return np.real(np.diag(materialize(model)))


def energy(dist: np.ndarray, model: IsingModel | PauliSum) -> float:
    """Expected problem energy, offset included."""
    table = _diagonal_energies(model)
    dist = np.asarray(dist, dtype=float)
    if dist.shape != table.shape:
        raise ValueError("distribution and observable dimension differ")
    return float(dist @ table)


def success_probability(dist: np.ndarray, target: int | str, encoding: PortEncoding | None = None) -> float:
    """Intensity at the port of ``target``, a basis index or bit label like ``"011"``."""
    dist = np.asarray(dist, dtype=float)
    if isinstance(target, str):
        encoding = encoding or PortEncoding(len(target))
        target = encoding.encode(target) - 1
    if not 0 <= target < dist.size:
        raise ValueError(f"target state {target} outside the register")
    return float(dist[target])
