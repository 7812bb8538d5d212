from functools import reduce

import numpy as np
import pytest

from ccqo.encoding import build_cd_hamiltonian, build_mixing_hamiltonian, model_2893

# independent dense Pauli matrices for oracles
I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1.0, -1.0]).astype(complex)
_AXIS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def dense(label: str) -> np.ndarray:
    return reduce(np.kron, [_AXIS[c] for c in label])


def eig_expm(h: np.ndarray, angle: float) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * angle * w)) @ v.conj().T


@pytest.fixture(scope="session")
def model():
    return model_2893()


@pytest.fixture(scope="session")
def hp_dense():
    return (0.75 * dense("ZZZ") + 2 * dense("ZZI") - 0.25 * dense("ZIZ") - 1.75 * dense("IZZ")
            - 1.5 * dense("ZII") - 2 * dense("IZI") + 1.75 * dense("IIZ"))


@pytest.fixture(scope="session")
def hcd_dense():
    return (2 * (dense("ZYI") + dense("YZI")) - 0.25 * (dense("ZIY") + dense("YIZ"))
            - 1.75 * (dense("IZY") + dense("IYZ")))


@pytest.fixture(scope="session")
def hm_dense():
    return -(dense("XII") + dense("IXI") + dense("IIX"))


@pytest.fixture(scope="session")
def hamiltonians(model):
    return {"p": model.hamiltonian(), "cd": build_cd_hamiltonian(model),
            "m": build_mixing_hamiltonian(3)}


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def factor_generators(kind: str, layers: int, h, hp, hcd, hm):
    """(parameter index, dense generator) per exponential factor, in the order they act."""
    seq = []
    for k in range(layers):
        if kind == "cqaoa":
            seq += [(2 * k + 1, hp), (2 * k, hm)]
        elif kind == "ccqo":
            seq += [(3 * k, hp), (3 * k + 1, hcd), (3 * k + 2, hm)]
        else:
            seq.append((4 * k + 3, hcd))
            seq += [(4 * k + i, hz * dense("I" * i + "Y" + "I" * (2 - i))) for i, hz in enumerate(h)]
    return seq


def adjoint_gradient(seq, theta, diag):
    """Exact gradient of <psi|diag|psi> by back-propagating the observable."""
    psi = np.zeros(8, complex)
    psi[0] = 1
    states, factors = [], []
    for idx, g in seq:
        u = eig_expm(g, theta[idx])
        psi = u @ psi
        states.append(psi)
        factors.append(u)
    grad = np.zeros(len(theta))
    obs = np.diag(diag).astype(complex)
    for (idx, g), s, u in zip(reversed(seq), reversed(states), reversed(factors)):
        grad[idx] += np.real(s.conj() @ (1j * (g @ obs - obs @ g)) @ s)
        obs = u.conj().T @ obs @ u
    return grad


def half_width(m: np.ndarray) -> float:
    w = np.linalg.eigvalsh(m)
    return (w[-1] - w[0]) / 2
