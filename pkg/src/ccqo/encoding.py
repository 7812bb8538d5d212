"""Factorization objective and the qubit Hamiltonians built from it.

The only built-in reduction is for 2893 = p·q with templates
``p = (1 x7 ... x1 1)`` and ``q = (1 y2 y1 1)``. After classical
preprocessing three binary variables survive (``x6``, ``y1`` and the carry
``c5``), mapped to qubits 1, 2, 3 in that order.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .pauli import PauliSum, PauliTerm, commutator, local_string, materialize


class UnsupportedCompositeError(ValueError):
    pass


@dataclass(frozen=True)
class FactorizationInstance:
    composite: int
    p_bits: int
    q_bits: int

    def __post_init__(self):
        if self.composite < 1 or self.composite % 2 == 0:
            raise ValueError("composite must be a positive odd integer")


INSTANCE_2893 = FactorizationInstance(composite=2893, p_bits=7, q_bits=2)


@dataclass(frozen=True)
class ReducedObjective:
    """Polynomial over binary variables: ``sum(coef * prod(vars))``."""

    variables: tuple[str, ...]
    monomials: tuple[tuple[float, frozenset[str]], ...]

    def __post_init__(self):
        known = set(self.variables)
        for _, mono in self.monomials:
            if not mono <= known:
                raise ValueError(f"monomial uses undeclared variables {sorted(mono - known)}")

    def evaluate(self, assignment: Mapping[str, int] | Sequence[int]) -> float:
        if not isinstance(assignment, Mapping):
            assignment = dict(zip(self.variables, assignment))
        total = Fraction(0)
        for coef, mono in self.monomials:
            if all(assignment[v] for v in mono):
                total += Fraction(coef)
        return float(total)

    def table(self) -> np.ndarray:
        """Objective at every assignment, indexed by the bit pattern (first variable MSB)."""
        return np.array([self.evaluate(bits)
                         for bits in itertools.product((0, 1), repeat=len(self.variables))])


def build_objective(instance: FactorizationInstance = INSTANCE_2893) -> ReducedObjective:
    if instance.composite != 2893:
        raise UnsupportedCompositeError(
            f"no built-in reduction for composite {instance.composite}")
    m = frozenset
    return ReducedObjective(
        variables=("x6", "y1", "c5"),
        monomials=(
            (-6.0, m({"x6", "y1", "c5"})),
            (2.0, m({"x6", "c5"})),
            (-4.0, m({"y1", "c5"})),
            (-1.0, m({"c5"})),
            (11.0, m({"x6", "y1"})),
            (-2.0, m({"x6"})),
            (2.0, m({"y1"})),
            (3.0, m()),
        ),
    )


@dataclass(frozen=True, eq=False)
class IsingModel:
    """Diagonal spin Hamiltonian ``sum h_i Z_i + sum_{i<j} J_ij Z_i Z_j + higher + offset``.

    ``J`` is stored as a full symmetric matrix with zero diagonal. ``offset``
    is kept apart from the operator: the Hamiltonian used in evolutions drops
    it, energies reported to the user include it.
    """

    h: np.ndarray
    J: np.ndarray
    higher: tuple[PauliTerm, ...] = ()
    offset: float = 0.0

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float)
        J = np.asarray(self.J, dtype=float)
        if J.shape != (h.size, h.size) or not np.array_equal(J, J.T) or np.any(np.diag(J)):
            raise ValueError("J must be symmetric with zero diagonal and match h")
        for t in self.higher:
            if t.n_qubits != h.size or set(t.axes) - {"I", "Z"}:
                raise ValueError(f"higher-order term {t.axes} is not a Z string on {h.size} qubits")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "J", J)

    @property
    def n_qubits(self) -> int:
        return self.h.size

    def pairs(self):
        """Yield ``(i, j, J_ij)`` for ``i < j`` with nonzero coupling."""
        n = self.n_qubits
        for i in range(n):
            for j in range(i + 1, n):
                if self.J[i, j]:
                    yield i, j, float(self.J[i, j])

    def hamiltonian(self, include_offset: bool = False) -> PauliSum:
        n = self.n_qubits
        terms = [(float(c), local_string(n, {i: "Z"})) for i, c in enumerate(self.h) if c]
        terms += [(c, local_string(n, {i: "Z", j: "Z"})) for i, j, c in self.pairs()]
        terms += list(self.higher)
        return PauliSum.from_terms(n, terms, offset=self.offset if include_offset else 0.0)

    def energies(self) -> np.ndarray:
        """Diagonal of ``H + offset`` in basis order ``|0...0>`` .. ``|1...1>``."""
        return np.real(np.diag(materialize(self.hamiltonian(include_offset=True))))

    def ground_state(self) -> int:
        return int(np.argmin(self.energies()))

    def to_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "h": self.h.tolist(),
            "J": self.J.tolist(),
            "higher": [{"coefficient": t.coefficient, "axes": t.axes} for t in self.higher],
            "offset": self.offset,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "IsingModel":
        return cls(np.array(d["h"]), np.array(d["J"]),
                   tuple(PauliTerm(t["coefficient"], t["axes"]) for t in d.get("higher", ())),
                   float(d.get("offset", 0.0)))


def objective_to_hamiltonian(obj: ReducedObjective) -> IsingModel:
    """Substitute ``k -> (1 - Z)/2`` for every variable and expand."""
    n = len(obj.variables)
    if n == 0:
        raise ValueError("objective has no variables")
    index = {v: i for i, v in enumerate(obj.variables)}
    acc: dict[frozenset[int], Fraction] = defaultdict(Fraction)
    for coef, mono in obj.monomials:
        sites = [index[v] for v in mono]
        scale = Fraction(coef) / 2 ** len(sites)
        for r in range(len(sites) + 1):
            for subset in itertools.combinations(sites, r):
                acc[frozenset(subset)] += scale * (-1) ** r

    h = np.zeros(n)
    J = np.zeros((n, n))
    higher = []
    offset = 0.0
    for sites, c in sorted(acc.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
        if c == 0:
            continue
        c = float(c)
        if not sites:
            offset = c
        elif len(sites) == 1:
            (i,) = sites
            h[i] = c
        elif len(sites) == 2:
            i, j = sorted(sites)
            J[i, j] = J[j, i] = c
        else:
            higher.append(PauliTerm(c, local_string(n, {i: "Z" for i in sites})))
    return IsingModel(h, J, tuple(higher), offset)


def model_2893() -> IsingModel:
    """Ising model of the 2893 instance."""
    return objective_to_hamiltonian(build_objective(INSTANCE_2893))


# local counterdiabatic patterns; each entry places its axes on (i) or (i, j)
POOL_PATTERNS: tuple[str, ...] = ("Y", "ZY", "YZ", "XY", "YX")


@dataclass(frozen=True)
class OperatorPool:
    entries: tuple[str, ...] = POOL_PATTERNS

    def matches(self, axes: str) -> bool:
        """True if the string is a pool pattern placed on some sites."""
        pattern = "".join(c for c in axes if c != "I")
        return pattern in self.entries

    def instances(self, n: int) -> list[str]:
        out = []
        for pattern in self.entries:
            for sites in itertools.combinations(range(n), len(pattern)):
                out.append(local_string(n, dict(zip(sites, pattern))))
        return out


def build_cd_hamiltonian(model: IsingModel) -> PauliSum:
    """``sum_{i<j} J_ij (Z_i Y_j + Y_i Z_j)``."""
    n = model.n_qubits
    terms = []
    for i, j, c in model.pairs():
        terms.append((c, local_string(n, {i: "Z", j: "Y"})))
        terms.append((c, local_string(n, {i: "Y", j: "Z"})))
    return PauliSum.from_terms(n, terms)


def build_mixing_hamiltonian(n: int) -> PauliSum:
    if n < 1:
        raise ValueError("need at least one qubit")
    return PauliSum.from_terms(n, [(-1.0, local_string(n, {i: "X"})) for i in range(n)])


def adiabatic_hamiltonian(h_i: PauliSum, h_f: PauliSum, lam: float) -> PauliSum:
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"schedule parameter {lam} outside [0, 1]")
    return h_i.scaled(1.0 - lam) + h_f.scaled(lam)


@dataclass(frozen=True, eq=False)
class GaugePotential:
    """Variational nested-commutator approximation of the adiabatic gauge potential.

    ``operator = sum_k coefficients[k] * basis[k]`` where ``basis[0] = i[H, dH]``
    and ``basis[k+1] = -[H, [H, basis[k]]]``; every basis element is Hermitian.
    """

    order: int
    coefficients: np.ndarray
    operator: PauliSum
    basis: tuple[PauliSum, ...]
    action: float
    degenerate: bool = False
    residuals: dict = field(default_factory=dict)


def action(h_ad: PauliSum, d_h: PauliSum, potential: PauliSum) -> float:
    """``tr(G†G)`` with ``G = dH - i[H, A]``, evaluated on dense matrices."""
    H, dH, A = materialize(h_ad), materialize(d_h), materialize(potential)
    G = dH - 1j * (H @ A - A @ H)
    return float(np.real(np.trace(G.conj().T @ G)))


def _hs(a: PauliSum, b: PauliSum) -> float:
    # tr(AB) = 2^N · sum of matching coefficients
    da, db = a.as_dict(), b.as_dict()
    return 2 ** a.n_qubits * math.fsum(c * db[k] for k, c in da.items() if k in db)


def gauge_potential(h_ad: PauliSum, d_h: PauliSum, order: int) -> GaugePotential:
    """Least-action coefficients for the first ``order`` nested commutators.

    With ``B_k = i[H, C_k]`` the action is the quadratic
    ``tr(dH^2) - 2 sum a_k tr(dH B_k) + sum a_j a_k tr(B_j B_k)``, minimised by
    the Gram system; a rank-deficient Gram matrix falls back to the
    pseudo-inverse and sets ``degenerate``.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    h_ad._check_same(d_h)
    basis = [commutator(h_ad, d_h)]
    for _ in range(order - 1):
        basis.append(commutator(h_ad, commutator(h_ad, basis[-1])))
    images = [commutator(h_ad, c) for c in basis]

    gram = np.array([[_hs(bj, bk) for bk in images] for bj in images])
    rhs = np.array([_hs(d_h, bk) for bk in images])
    coef, _, rank, _ = np.linalg.lstsq(gram, rhs, rcond=1e-12)
    degenerate = bool(rank < order)

    op = PauliSum.zero(h_ad.n_qubits)
    for a, c in zip(coef, basis):
        op = op + c.scaled(float(a))
    return GaugePotential(order, coef, op, tuple(basis), action(h_ad, d_h, op), degenerate)
