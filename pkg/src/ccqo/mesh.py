"""Rectangular (Clements) MZI mesh compilation.

Each Mach-Zehnder interferometer on modes ``(m, m+1)`` has transfer matrix

    T(theta, phi) = i e^{i theta} [[e^{i phi} sin(theta),  cos(theta)],
                                   [e^{i phi} cos(theta), -sin(theta)]]

i.e. an external phase ``phi`` on the upper input arm, two 50:50 splitters
and an internal phase ``2 theta`` between them. ``theta = 0`` is the cross
state and ``theta = pi/2`` the bar state. Modes are 0-based here; port ``k``
(1-based) is mode ``k - 1`` and encodes the basis state ``|binary(k-1)>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .pauli import unitarity_error

TWO_PI = 2 * np.pi
# below this magnitude a Givens target counts as already nulled
ZERO_TOL = 1e-13


class NonUnitaryError(ValueError):
    def __init__(self, residual: float):
        super().__init__(f"matrix is not unitary: max|U^dag U - I| = {residual:.3e}")
        self.residual = residual


def mzi_transfer(theta: float, phi: float) -> np.ndarray:
    s, c = np.sin(theta), np.cos(theta)
    e = np.exp(1j * phi)
    return 1j * np.exp(1j * theta) * np.array([[e * s, c], [e * c, -s]])


@dataclass(frozen=True)
class MziSetting:
    row: int
    column: int
    theta: float
    phi: float

    def to_dict(self) -> dict:
        return {"column": self.column, "row": self.row, "theta": self.theta, "phi": self.phi}


@dataclass(frozen=True, eq=False)
class MeshProgram:
    """MZI settings in propagation order, followed by an output phase screen."""

    modes: int
    settings: tuple[MziSetting, ...]
    output_phases: np.ndarray = field(default=None)

    def __post_init__(self):
        phases = np.zeros(self.modes) if self.output_phases is None else np.asarray(self.output_phases, float)
        if phases.shape != (self.modes,):
            raise ValueError("need one output phase per mode")
        for s in self.settings:
            if not 0 <= s.row < self.modes - 1:
                raise ValueError(f"MZI row {s.row} out of range for {self.modes} modes")
        object.__setattr__(self, "output_phases", phases)

    @property
    def depth(self) -> int:
        return 1 + max((s.column for s in self.settings), default=-1)

    def to_dict(self) -> dict:
        return {
            "modes": self.modes,
            "settings": [s.to_dict() for s in self.settings],
            "output_phases": self.output_phases.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MeshProgram":
        settings = tuple(MziSetting(int(s["row"]), int(s["column"]), float(s["theta"]), float(s["phi"]))
                         for s in d["settings"])
        return cls(int(d["modes"]), settings, np.array(d["output_phases"], dtype=float))

    def save(self, path: str | Path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2))

    @classmethod
    def load(cls, path: str | Path) -> "MeshProgram":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def perturbed(self, sd: float, rng: np.random.Generator) -> "MeshProgram":
        """Copy with Gaussian noise of width ``sd`` on every phase shifter.

        The internal shifter carries ``2 theta``, so theta moves by half its draw.
        """
        if sd < 0:
            raise ValueError("jitter must be non-negative")
        if sd == 0:
            return self
        n = len(self.settings)
        d_int, d_ext = rng.normal(0, sd, n), rng.normal(0, sd, n)
        settings = tuple(MziSetting(s.row, s.column, s.theta + a / 2, s.phi + b)
                         for s, a, b in zip(self.settings, d_int, d_ext))
        return MeshProgram(self.modes, settings,
                           self.output_phases + rng.normal(0, sd, self.modes))


def _wrap(phi: float) -> float:
    phi = float(np.mod(phi, TWO_PI))
    return 0.0 if phi >= TWO_PI else phi


def _null_right(a: complex, b: complex) -> tuple[float, float]:
    """Settings whose inverse, applied on columns ``(c, c+1)``, zeros ``a`` (column c)."""
    if abs(a) < ZERO_TOL:
        return np.pi / 2, 0.0
    if abs(b) < ZERO_TOL:
        return 0.0, 0.0
    return float(np.arctan2(abs(b), abs(a))), _wrap(np.angle(-a / b))


def _null_left(a: complex, b: complex) -> tuple[float, float]:
    """Settings that, applied on rows ``(r, r+1)``, zero ``b`` (row r+1)."""
    if abs(b) < ZERO_TOL:
        return np.pi / 2, 0.0
    if abs(a) < ZERO_TOL:
        return 0.0, 0.0
    return float(np.arctan2(abs(a), abs(b))), _wrap(np.angle(b / a))


def _factor_phase_mzi(m: np.ndarray) -> tuple[float, float, complex, complex]:
    """Write a 2x2 unitary as ``diag(a, b) @ T(theta, phi)``."""
    sin_part = np.hypot(abs(m[0, 0]), abs(m[1, 1]))
    cos_part = np.hypot(abs(m[0, 1]), abs(m[1, 0]))
    theta = float(np.arctan2(sin_part, cos_part))
    z = m[0, 0] * np.conj(m[0, 1]) - m[1, 0] * np.conj(m[1, 1])
    phi = _wrap(np.angle(z)) if abs(z) > ZERO_TOL else 0.0
    t = mzi_transfer(theta, phi)
    a = m[0, 0] * np.conj(t[0, 0]) + m[0, 1] * np.conj(t[0, 1])
    b = m[1, 0] * np.conj(t[1, 0]) + m[1, 1] * np.conj(t[1, 1])
    return theta, phi, a, b


def _assign_columns(rows: list[int]) -> list[int]:
    """Earliest column for each MZI given propagation order; column k holds rows of parity k."""
    last: dict[int, int] = {}
    cols = []
    for r in rows:
        col = max(last.get(r, -1), last.get(r + 1, -1)) + 1
        if col % 2 != r % 2:
            col += 1
        last[r] = last[r + 1] = col
        cols.append(col)
    return cols


def decompose(u: np.ndarray, atol: float = 1e-10) -> MeshProgram:
    """Clements decomposition of an ``N x N`` unitary into ``N(N-1)/2`` MZIs."""
    u = np.array(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError("expected a square matrix")
    residual = unitarity_error(u)
    if residual > atol:
        raise NonUnitaryError(residual)
    n = u.shape[0]
    right: list[tuple[int, float, float]] = []  # applied as U @ T^-1, in order
    left: list[tuple[int, float, float]] = []   # applied as T @ U, in order
    for i in range(1, n):
        if i % 2:
            for j in range(i):
                r, c = n - 1 - j, i - 1 - j
                theta, phi = _null_right(u[r, c], u[r, c + 1])
                t_inv = mzi_transfer(theta, phi).conj().T
                u[:, c:c + 2] = u[:, c:c + 2] @ t_inv
                right.append((c, theta, phi))
        else:
            for j in range(1, i + 1):
                r, c = n + j - i - 2, j - 1
                theta, phi = _null_left(u[r, c], u[r + 1, c])
                u[r:r + 2, :] = mzi_transfer(theta, phi) @ u[r:r + 2, :]
                left.append((r, theta, phi))

    # U = L_1^† ... L_m^† D T_n ... T_1; push D leftwards through each L^†
    d = np.diag(u).copy()
    pushed = []
    for r, theta, phi in reversed(left):
        block = mzi_transfer(theta, phi).conj().T @ np.diag(d[r:r + 2])
        th, ph, a, b = _factor_phase_mzi(block)
        d[r], d[r + 1] = a, b
        pushed.append((r, th, ph))
    # physical order: T_1 .. T_n, then the pushed MZIs from L_m' back to L_1'
    sequence = right + pushed
    cols = _assign_columns([r for r, _, _ in sequence])
    settings = sorted(
        (MziSetting(r, col, th, ph) for (r, th, ph), col in zip(sequence, cols)),
        key=lambda s: (s.column, s.row))
    return MeshProgram(n, tuple(settings), np.angle(d))


def reconstruct(program: MeshProgram) -> np.ndarray:
    u = np.eye(program.modes, dtype=complex)
    for s in program.settings:
        r = s.row
        u[r:r + 2, :] = mzi_transfer(s.theta, s.phi) @ u[r:r + 2, :]
    return np.exp(1j * program.output_phases)[:, None] * u


@dataclass(frozen=True)
class PortEncoding:
    """Port ``k`` (1-based) carries basis state ``|binary(k-1)>`` on ``n_qubits``."""

    n_qubits: int = 3

    @property
    def ports(self) -> int:
        return 2 ** self.n_qubits

    def decode(self, port: int) -> str:
        if not 1 <= port <= self.ports:
            raise ValueError(f"port {port} outside 1..{self.ports}")
        return format(port - 1, f"0{self.n_qubits}b")

    def encode(self, bits: str) -> int:
        if len(bits) != self.n_qubits or set(bits) - {"0", "1"}:
            raise ValueError(f"{bits!r} is not a {self.n_qubits}-bit basis label")
        return int(bits, 2) + 1
