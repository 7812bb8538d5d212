"""Counterdiabatic variational optimization on a simulated 8-mode MZI mesh."""

from .ansatz import AnsatzKind, AnsatzSpec, CompiledAnsatz, build_unitary, parameter_count
from .benchmark import BenchmarkPlan, BenchmarkReport, compare_report, run_benchmark
from .encoding import (
    FactorizationInstance,
    GaugePotential,
    IsingModel,
    OperatorPool,
    ReducedObjective,
    adiabatic_hamiltonian,
    build_cd_hamiltonian,
    build_mixing_hamiltonian,
    build_objective,
    gauge_potential,
    model_2893,
    objective_to_hamiltonian,
)
from .mesh import MeshProgram, MziSetting, PortEncoding, decompose, mzi_transfer, reconstruct
from .optimizer import OptimizerConfig, RunTrace, fd_gradient, optimize
from .pauli import PauliSum, PauliTerm, commutator, expm_unitary, materialize
from .photonic import NoiseConfig, energy, propagate, success_probability

__version__ = "0.1.0"
