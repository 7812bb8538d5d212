"""Dense Pauli-string algebra for small qubit registers.

Basis convention: qubit value 0 is the +1 eigenstate of Z, and the basis
index of ``|q1 q2 ... qN>`` is the binary number ``q1 q2 ... qN`` with the
first qubit most significant. Pauli strings are written in the same order,
so ``"ZIY"`` is Z on qubit 1 and Y on qubit 3.

Every :class:`PauliSum` carries real coefficients and is Hermitian.
Commutators are therefore returned premultiplied by ``i``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping

import numpy as np

MAX_DENSE_QUBITS = 12

PAULI_MATRICES: dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# single-site products: (a, b) -> (phase, c) with a·b = phase·c
_PRODUCT: dict[tuple[str, str], tuple[complex, str]] = {}
for _a in "IXYZ":
    _PRODUCT[("I", _a)] = (1, _a)
    _PRODUCT[(_a, "I")] = (1, _a)
for _a in "XYZ":
    _PRODUCT[(_a, _a)] = (1, "I")
for _a, _b, _c in (("X", "Y", "Z"), ("Y", "Z", "X"), ("Z", "X", "Y")):
    _PRODUCT[(_a, _b)] = (1j, _c)
    _PRODUCT[(_b, _a)] = (-1j, _c)


class RegisterTooLargeError(ValueError):
    """Raised when a dense matrix would exceed :data:`MAX_DENSE_QUBITS`."""


def _check_axes(axes: str) -> str:
    axes = axes.upper()
    if not axes or any(c not in "IXYZ" for c in axes):
        raise ValueError(f"invalid Pauli string {axes!r}")
    return axes


def pauli_product(a: str, b: str) -> tuple[complex, str]:
    """Multiply two Pauli strings, returning ``(phase, string)``."""
    if len(a) != len(b):
        raise ValueError("Pauli strings act on different register sizes")
    phase: complex = 1
    out = []
    for x, y in zip(a, b):
        p, c = _PRODUCT[(x, y)]
        phase *= p
        out.append(c)
    return phase, "".join(out)


def local_string(n: int, sites: Mapping[int, str]) -> str:
    """Build a length-``n`` string from a 0-based ``{site: axis}`` mapping."""
    chars = ["I"] * n
    for site, axis in sites.items():
        chars[site] = axis
    return "".join(chars)


@dataclass(frozen=True)
class PauliTerm:
    coefficient: float
    axes: str

    def __post_init__(self):
        object.__setattr__(self, "axes", _check_axes(self.axes))
        object.__setattr__(self, "coefficient", float(self.coefficient))

    @property
    def n_qubits(self) -> int:
        return len(self.axes)

    @property
    def weight(self) -> int:
        """Number of non-identity sites."""
        return sum(c != "I" for c in self.axes)

    def to_sum(self) -> "PauliSum":
        return PauliSum.from_terms(self.n_qubits, [self])


@dataclass(frozen=True, eq=False)
class PauliSum:
    """Real linear combination of Pauli strings plus an identity offset.

    ``terms`` never contains the all-identity string; that coefficient lives
    in ``offset``.
    """

    n_qubits: int
    terms: tuple[PauliTerm, ...] = ()
    offset: float = 0.0

    @classmethod
    def from_terms(cls, n_qubits: int, terms: Iterable[PauliTerm | tuple[float, str]],
                   offset: float = 0.0, tol: float = 0.0) -> "PauliSum":
        acc: dict[str, list[float]] = defaultdict(list)
        acc["I" * n_qubits].append(float(offset))
        for t in terms:
            if not isinstance(t, PauliTerm):
                t = PauliTerm(*t)
            if t.n_qubits != n_qubits:
                raise ValueError(
                    f"term {t.axes} does not act on {n_qubits} qubits")
            acc[t.axes].append(t.coefficient)
        return cls._collect(n_qubits, acc, tol)

    @classmethod
    def _collect(cls, n_qubits: int, acc: Mapping[str, list[float]], tol: float) -> "PauliSum":
        identity = "I" * n_qubits
        offset = math.fsum(acc.get(identity, ()))
        out = []
        for axes in sorted(acc):
            if axes == identity:
                continue
            c = math.fsum(acc[axes])
            if abs(c) > tol:
                out.append(PauliTerm(c, axes))
        return cls(n_qubits, tuple(out), offset)

    @classmethod
    def zero(cls, n_qubits: int) -> "PauliSum":
        return cls(n_qubits)

    def as_dict(self) -> dict[str, float]:
        d = {t.axes: t.coefficient for t in self.terms}
        if self.offset:
            d["I" * self.n_qubits] = self.offset
        return d

    def coefficient(self, axes: str) -> float:
        axes = _check_axes(axes)
        if axes == "I" * self.n_qubits:
            return self.offset
        return self.as_dict().get(axes, 0.0)

    def is_zero(self, tol: float = 0.0) -> bool:
        return abs(self.offset) <= tol and all(abs(t.coefficient) <= tol for t in self.terms)

    def is_diagonal(self) -> bool:
        return all(set(t.axes) <= {"I", "Z"} for t in self.terms)

    def without_offset(self) -> "PauliSum":
        return PauliSum(self.n_qubits, self.terms, 0.0)

    def scaled(self, factor: float) -> "PauliSum":
        return PauliSum.from_terms(
            self.n_qubits, [(factor * t.coefficient, t.axes) for t in self.terms],
            offset=factor * self.offset)

    def _check_same(self, other: "PauliSum"):
        if other.n_qubits != self.n_qubits:
            raise ValueError(
                f"register size mismatch: {self.n_qubits} vs {other.n_qubits}")

    def __add__(self, other: "PauliSum") -> "PauliSum":
        self._check_same(other)
        return PauliSum.from_terms(self.n_qubits, self.terms + other.terms,
                                   offset=self.offset + other.offset)

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + other.scaled(-1.0)

    def __neg__(self) -> "PauliSum":
        return self.scaled(-1.0)

    def __mul__(self, factor: float) -> "PauliSum":
        return self.scaled(factor)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self.n_qubits == other.n_qubits and self.as_dict() == other.as_dict()

    def allclose(self, other: "PauliSum", atol: float = 1e-12) -> bool:
        self._check_same(other)
        a, b = self.as_dict(), other.as_dict()
        return all(abs(a.get(k, 0.0) - b.get(k, 0.0)) <= atol for k in set(a) | set(b))

    def matrix(self) -> np.ndarray:
        return materialize(self)

    def __repr__(self) -> str:
        parts = [f"{t.coefficient:+g}*{t.axes}" for t in self.terms]
        if self.offset or not parts:
            parts.insert(0, f"{self.offset:+g}*I")
        return f"PauliSum({' '.join(parts)})"


def materialize(op: PauliTerm | PauliSum) -> np.ndarray:
    """Dense ``2^N x 2^N`` matrix of a Pauli term or sum."""
    n = op.n_qubits
    if n < 1:
        raise ValueError("register must hold at least one qubit")
    if n > MAX_DENSE_QUBITS:
        raise RegisterTooLargeError(
            f"register too large for dense backend: {n} > {MAX_DENSE_QUBITS} qubits")
    if isinstance(op, PauliTerm):
        op = op.to_sum()
    dim = 2 ** n
    out = op.offset * np.eye(dim, dtype=complex)
    for t in op.terms:
        out += t.coefficient * reduce(np.kron, (PAULI_MATRICES[c] for c in t.axes))
    return out


def commutator(a: PauliSum, b: PauliSum) -> PauliSum:
    """Return ``i[A, B]``, a Hermitian sum when ``A`` and ``B`` are.

    Only anticommuting string pairs contribute, each with ``2i·ab·phase``.
    Contributions are summed with :func:`math.fsum` so that
    ``commutator(a, b) == -commutator(b, a)`` holds exactly.
    """
    a._check_same(b)
    acc: dict[str, list[float]] = defaultdict(list)
    for ta in a.terms:
        for tb in b.terms:
            phase, axes = pauli_product(ta.axes, tb.axes)
            if phase.real != 0:
                continue  # commuting pair
            # i·(PaPb − PbPa) = i·2·phase·Pc, phase = ±i
            acc[axes].append(-2.0 * phase.imag * ta.coefficient * tb.coefficient)
    return PauliSum._collect(a.n_qubits, acc, tol=0.0)


def is_hermitian(m: np.ndarray, atol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= atol)


def unitarity_error(u: np.ndarray) -> float:
    """``max|U†U − I|``."""
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def is_unitary(u: np.ndarray, atol: float = 1e-12) -> bool:
    return u.ndim == 2 and u.shape[0] == u.shape[1] and unitarity_error(u) <= atol


class Propagator:
    """Cached eigendecomposition of a Hermitian generator.

    ``Propagator(H)(a)`` equals ``exp(-i a H)``; :meth:`apply` acts on a
    state without forming the matrix.
    """

    def __init__(self, generator: PauliSum | np.ndarray):
        m = materialize(generator) if isinstance(generator, PauliSum) else np.asarray(generator, dtype=complex)
        if not is_hermitian(m):
            raise ValueError("generator is not Hermitian")
        self.diagonal = bool(np.all(m == np.diag(np.diag(m))))
        if self.diagonal:
            self.eigenvalues = np.diag(m).real.copy()
            self.eigenvectors = None
        else:
            self.eigenvalues, self.eigenvectors = np.linalg.eigh(m)

    def __call__(self, angle: float) -> np.ndarray:
        phases = np.exp(-1j * angle * self.eigenvalues)
        if self.diagonal:
            return np.diag(phases)
        v = self.eigenvectors
        return (v * phases) @ v.conj().T

    def apply(self, angle: float, state: np.ndarray) -> np.ndarray:
        phases = np.exp(-1j * angle * self.eigenvalues)
        if self.diagonal:
            return phases * state
        v = self.eigenvectors
        return v @ (phases * (v.conj().T @ state))


def expm_unitary(generator: PauliSum, angle: float) -> np.ndarray:
    """``exp(-i·angle·H)`` by Hermitian eigendecomposition."""
    return Propagator(generator)(angle)
