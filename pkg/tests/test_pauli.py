import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qd2.pauli import (
    Pauli, apply, commutes, gf4_to_pauli, iter_paulis, pauli_from_index, pauli_to_gf4, to_matrix,
)

from conftest import dense_pauli

PHASES = {0: 1, 1: 1j, 2: -1, 3: -1j}


def paulis(n):
    return st.tuples(
        st.text("IXYZ", min_size=n, max_size=n), st.integers(0, 3)
    ).map(lambda t: Pauli.from_str(t[0]) if t[1] == 0 else _phased(t[0], t[1]))


def _phased(letters, phase):
    p = Pauli.from_str(letters)
    return Pauli(p.n, p.x, p.z, phase)


def dense(p):
    return PHASES[p.phase] * dense_pauli(p.letters())


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(paulis(n), paulis(n))))
def test_product_matches_dense(pq):
    p, q = pq
    np.testing.assert_allclose(dense(p * q), dense(p) @ dense(q), atol=1e-12)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(paulis(n), paulis(n))))
def test_commutation_matches_dense(pq):
    p, q = pq
    a, b = dense(p), dense(q)
    assert commutes(p, q) == np.allclose(a @ b, b @ a)


@given(st.integers(1, 4).flatmap(paulis))
def test_to_matrix_and_apply(p):
    np.testing.assert_allclose(to_matrix(p), dense(p), atol=1e-12)
    v = np.arange(1 << p.n) + 1j
    np.testing.assert_allclose(apply(p, v), dense(p) @ v, atol=1e-12)


def test_string_round_trip():
    for text in ["XYZI", "-ZZ", "+iXY", "-iY"]:
        p = Pauli.from_str(text)
        assert Pauli.from_str(str(p)) == p
    assert str(Pauli.from_str("+XX")) == "XX"
    with pytest.raises(ValueError):
        Pauli.from_str("XQ")


def test_single_and_weight():
    p = Pauli.single(4, 2, "Y")
    assert p.letters() == "IIYI"
    assert p.weight == 1
    assert Pauli.from_str("XIZY").weight == 3


def test_dagger_and_hermitian():
    p = _phased("XZ", 1)
    assert not p.is_hermitian()
    np.testing.assert_allclose(dense(p.dagger()), dense(p).conj().T)
    assert (p * p.dagger()) == Pauli.identity(2)


def test_gf4_correspondence():
    assert gf4_to_pauli("01wW").letters() == "IYXZ"
    assert pauli_to_gf4(Pauli.from_str("IYXZ")) == (0, 3, 2, 1)


def test_iteration_counts():
    assert sum(1 for _ in iter_paulis(3)) == 64
    for w in range(4):
        got = list(iter_paulis(3, w))
        assert all(p.weight == w for p in got)
        assert len(got) == [1, 9, 27, 27][w]
    assert pauli_from_index(2, 0) == Pauli.identity(2)


def test_length_mismatch():
    with pytest.raises(ValueError):
        Pauli.from_str("XX") * Pauli.from_str("X")
    with pytest.raises(ValueError):
        Pauli(2, 4, 0)
