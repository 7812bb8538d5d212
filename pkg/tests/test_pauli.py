import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccqo.pauli import (
    PauliSum,
    PauliTerm,
    Propagator,
    RegisterTooLargeError,
    commutator,
    expm_unitary,
    is_hermitian,
    materialize,
    pauli_product,
    unitarity_error,
)

from conftest import dense, eig_expm

labels = st.text(alphabet="IXYZ", min_size=3, max_size=3)
coeffs = st.floats(min_value=-3, max_value=3, allow_nan=False)
sums = st.lists(st.tuples(coeffs, labels), min_size=1, max_size=5).map(
    lambda ts: PauliSum.from_terms(3, ts))


def test_single_y():
    m = materialize(PauliTerm(1.0, "Y"))
    np.testing.assert_array_equal(m, [[0, -1j], [1j, 0]])


def test_zzz_is_diagonal_parity():
    m = materialize(PauliTerm(0.75, "ZZZ"))
    z = [1 - 2 * int(b) for b in "01"]
    expected = [0.75 * a * b * c for a in z for b in z for c in z]
    np.testing.assert_array_equal(m, np.diag(expected))


def test_problem_hamiltonian_diagonal(hamiltonians):
    hp = hamiltonians["p"] + PauliSum(3, (), 4.0)
    np.testing.assert_array_equal(np.diag(materialize(hp)).real, [3, 2, 5, 0, 1, 2, 14, 5])


def test_dense_guard():
    with pytest.raises(RegisterTooLargeError, match="register too large"):
        materialize(PauliTerm(1.0, "Z" * 13))


def test_invalid_label():
    with pytest.raises(ValueError):
        PauliTerm(1.0, "XQ")


def test_identity_axes_go_to_offset():
    s = PauliSum.from_terms(2, [(1.5, "II"), (2.0, "XZ")])
    assert s.offset == 1.5
    assert [t.axes for t in s.terms] == ["XZ"]


@pytest.mark.parametrize("a,b,phase,c", [
    ("X", "Y", 1j, "Z"), ("Y", "X", -1j, "Z"), ("Z", "Z", 1, "I"), ("ZX", "XX", 1j, "YI"),
])
def test_pauli_product_table(a, b, phase, c):
    assert pauli_product(a, b) == (phase, c)
    np.testing.assert_allclose(dense(a) @ dense(b), phase * dense(c))


def test_commutator_z_y():
    # [Z, Y] = -2i X, stored as i[Z, Y] = 2X
    out = commutator(PauliTerm(1, "Z").to_sum(), PauliTerm(1, "Y").to_sum())
    assert out == PauliSum.from_terms(1, [(2.0, "X")])


def test_self_commutator_vanishes(hamiltonians):
    for h in hamiltonians.values():
        assert commutator(h, h).is_zero()


def test_commutator_matches_dense(hamiltonians, hp_dense, hm_dense):
    out = commutator(hamiltonians["p"], hamiltonians["m"])
    oracle = 1j * (hp_dense @ hm_dense - hm_dense @ hp_dense)
    np.testing.assert_allclose(materialize(out), oracle, atol=1e-12, rtol=0)


def test_commutator_size_mismatch():
    with pytest.raises(ValueError):
        commutator(PauliSum.from_terms(2, [(1, "XX")]), PauliSum.from_terms(3, [(1, "XXX")]))


@settings(max_examples=60, deadline=None)
@given(sums, sums)
def test_commutator_antisymmetric(a, b):
    assert commutator(a, b) == -commutator(b, a)


@settings(max_examples=60, deadline=None)
@given(sums, sums, coeffs, coeffs)
def test_materialize_linear(a, b, x, y):
    lhs = materialize(a.scaled(x) + b.scaled(y))
    rhs = x * materialize(a) + y * materialize(b)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12, rtol=0)


@settings(max_examples=40, deadline=None)
@given(sums)
def test_sums_are_hermitian_and_offset_shifts_spectrum(s):
    m = materialize(s)
    assert is_hermitian(m)
    shifted = materialize(s + PauliSum(3, (), 2.5))
    np.testing.assert_allclose(np.linalg.eigvalsh(shifted), np.linalg.eigvalsh(m) + 2.5, atol=1e-12)


def test_expm_zero_angle(hamiltonians):
    np.testing.assert_allclose(expm_unitary(hamiltonians["cd"], 0.0), np.eye(8), atol=1e-14)


def test_expm_x_quarter_turn():
    u = expm_unitary(PauliTerm(1, "X").to_sum(), np.pi / 2)
    np.testing.assert_allclose(u, -1j * np.array([[0, 1], [1, 0]]), atol=1e-15)


def test_expm_diagonal_problem(hamiltonians):
    gamma = 0.37
    d = np.array([3, 2, 5, 0, 1, 2, 14, 5]) - 4.0
    np.testing.assert_allclose(expm_unitary(hamiltonians["p"], gamma), np.diag(np.exp(-1j * gamma * d)),
                               atol=1e-14)


def test_expm_rejects_non_hermitian():
    with pytest.raises(ValueError, match="Hermitian"):
        Propagator(np.array([[0, 1], [0, 0]]))


@settings(max_examples=40, deadline=None)
@given(sums, st.floats(-np.pi, np.pi), st.floats(-np.pi, np.pi))
def test_expm_group_law_and_unitarity(h, a, b):
    ua, ub, uab = expm_unitary(h, a), expm_unitary(h, b), expm_unitary(h, a + b)
    assert unitarity_error(ua) < 1e-12
    np.testing.assert_allclose(ua @ ub, uab, atol=1e-10, rtol=0)
    np.testing.assert_allclose(ua, eig_expm(materialize(h), a), atol=1e-12, rtol=0)


def test_propagator_apply_matches_matrix(hamiltonians):
    rng = np.random.default_rng(3)
    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    for h in hamiltonians.values():
        prop = Propagator(h)
        np.testing.assert_allclose(prop.apply(0.8, psi), prop(0.8) @ psi, atol=1e-13)
