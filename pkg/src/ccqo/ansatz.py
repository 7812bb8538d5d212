"""Parameterized unitaries for CQAOA, CCQO and CCQO-E.

Parameters are flat and layer-major. Within a layer the order is

* CQAOA: ``(beta, gamma)``
* CCQO: ``(gamma, alpha, beta)``
* CCQO-E: ``(alpha_1, ..., alpha_n, beta)``

Layers compose right to left: layer 1 acts on the state first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .encoding import IsingModel, build_cd_hamiltonian, build_mixing_hamiltonian
from .pauli import PauliSum, Propagator, local_string


class AnsatzKind(str, enum.Enum):
    CQAOA = "cqaoa"
    CCQO = "ccqo"
    CCQO_E = "ccqo-e"

    @classmethod
    def parse(cls, value: "str | AnsatzKind") -> "AnsatzKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown ansatz kind {value!r}")


@dataclass(frozen=True)
class AnsatzSpec:
    """Algorithm, layer count and register size.

    ``symmetric_two_body`` selects ``J_ij (Z_i Y_j + Y_i Z_j)`` for the CCQO-E
    two-body factor; ``False`` keeps only ``J_ij Z_i Y_j`` for ``i < j``.
    ``share_beta`` makes CCQO-E use one ``beta`` for all layers, stored last.
    """

    kind: AnsatzKind
    layers: int = 1
    n_qubits: int = 3
    symmetric_two_body: bool = True
    share_beta: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", AnsatzKind.parse(self.kind))
        if self.layers < 1:
            raise ValueError("layers must be >= 1")
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be >= 1")

    def parameter_names(self) -> list[str]:
        if self.kind is AnsatzKind.CQAOA:
            per = ["beta", "gamma"]
        elif self.kind is AnsatzKind.CCQO:
            per = ["gamma", "alpha", "beta"]
        else:
            per = [f"alpha{i + 1}" for i in range(self.n_qubits)]
            if not self.share_beta:
                per.append("beta")
        names = [f"{name}_{k + 1}" for k in range(self.layers) for name in per]
        if self.kind is AnsatzKind.CCQO_E and self.share_beta:
            names.append("beta")
        return names


def parameter_count(spec: AnsatzSpec) -> int:
    return len(spec.parameter_names())


def random_parameters(spec: AnsatzSpec, rng: np.random.Generator) -> np.ndarray:
    """Uniform draw from ``[-pi, pi)``."""
    return rng.uniform(-np.pi, np.pi, parameter_count(spec))


def ccqoe_two_body(model: IsingModel, symmetric: bool = True) -> PauliSum:
    n = model.n_qubits
    terms = []
    for i, j, c in model.pairs():
        terms.append((c, local_string(n, {i: "Z", j: "Y"})))
        if symmetric:
            terms.append((c, local_string(n, {i: "Y", j: "Z"})))
    return PauliSum.from_terms(n, terms)


class LocalRotations:
    """Tensor product of ``exp(-i a_k Y)`` over the register."""

    def __init__(self, angles: np.ndarray):
        self.cos, self.sin = np.cos(angles), np.sin(angles)

    def matrix(self) -> np.ndarray:
        blocks = [np.array([[c, -s], [s, c]], dtype=complex) for c, s in zip(self.cos, self.sin)]
        return reduce(np.kron, blocks)

    def __matmul__(self, other: np.ndarray) -> np.ndarray:
        if other.ndim == 2:
            return self.matrix() @ other
        n = self.cos.size
        psi = other
        for k in range(n):
            v = psi.reshape(2 ** k, 2, -1)
            x0, x1 = v[:, 0], v[:, 1]
            c, s = self.cos[k], self.sin[k]
            psi = np.stack([c * x0 - s * x1, s * x0 + c * x1], axis=1)
        return psi.reshape(-1)


class CompiledAnsatz:
    """An ansatz bound to a problem, with generator spectra cached.

    Building this once and calling :meth:`unitary` or :meth:`apply` many
    times is the fast path used by the optimizer.
    """

    def __init__(self, spec: AnsatzSpec, model: IsingModel):
        if model.n_qubits != spec.n_qubits:
            raise ValueError(
                f"model has {model.n_qubits} qubits, spec expects {spec.n_qubits}")
        self.spec = spec
        self.model = model
        self.n_params = parameter_count(spec)
        self.dim = 2 ** spec.n_qubits
        if spec.kind is AnsatzKind.CCQO_E:
            self.two_body = Propagator(ccqoe_two_body(model, spec.symmetric_two_body))
            self.h = model.h.copy()
        else:
            self.problem = Propagator(model.hamiltonian())
            self.mixer = Propagator(build_mixing_hamiltonian(spec.n_qubits))
            if spec.kind is AnsatzKind.CCQO:
                self.cd = Propagator(build_cd_hamiltonian(model))

    def _check(self, params) -> np.ndarray:
        params = np.asarray(params, dtype=float)
        if params.shape != (self.n_params,):
            raise ValueError(
                f"{self.spec.kind.value} with {self.spec.layers} layer(s) takes "
                f"{self.n_params} parameters, got shape {params.shape}")
        return params

    def _factors(self, params: np.ndarray):
        """Yield ``(propagator_or_matrix, angle)`` in application order."""
        spec = self.spec
        if spec.kind is AnsatzKind.CQAOA:
            for beta, gamma in params.reshape(-1, 2):
                yield self.problem, gamma
                yield self.mixer, beta
        elif spec.kind is AnsatzKind.CCQO:
            for gamma, alpha, beta in params.reshape(-1, 3):
                yield self.problem, gamma
                yield self.cd, alpha
                yield self.mixer, beta
        else:
            n = spec.n_qubits
            if spec.share_beta:
                alphas = params[:-1].reshape(-1, n)
                betas = np.full(spec.layers, params[-1])
            else:
                block = params.reshape(-1, n + 1)
                alphas, betas = block[:, :n], block[:, n]
            for alpha, beta in zip(alphas, betas):
                yield self.two_body, beta
                yield LocalRotations(alpha * self.h), None

    def unitary(self, params) -> np.ndarray:
        params = self._check(params)
        u = np.eye(self.dim, dtype=complex)
        for op, angle in self._factors(params):
            if angle is None:
                u = op @ u
            elif angle != 0.0:
                u = op(angle) @ u
        return u

    def apply(self, params, state: np.ndarray) -> np.ndarray:
        params = self._check(params)
        psi = np.asarray(state, dtype=complex)
        for op, angle in self._factors(params):
            if angle is None:
                psi = op @ psi
            elif angle != 0.0:
                psi = op.apply(angle, psi)
        return psi


def build_unitary(spec: AnsatzSpec, params, model: IsingModel) -> np.ndarray:
    return CompiledAnsatz(spec, model).unitary(params)
