from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qd2 import catalog
from qd2.constructions import bell_pairs, extend_by_two, nonadditive_6_16_2
from qd2.enumerators import (
    Enumerator, additive_enumerators, complement_enumerator, dual_enumerator, enumerator_record,
    format_enumerators, krawtchouk, macwilliams, rationalize, shadow_zero,
    theorem2_identity_check, weight_enumerator,
)
from qd2.pauli import iter_paulis
from qd2.statecode import from_additive

from conftest import dense_pauli


def definitional(P, n):
    """A_d and B_d by explicit dense traces, one Pauli at a time."""
    A, B = np.zeros(n + 1), np.zeros(n + 1)
    for E in iter_paulis(n):
        M = dense_pauli(E.letters())
        A[E.weight] += abs(np.trace(M @ P)) ** 2
        B[E.weight] += np.trace(M @ P @ M @ P).real
    return A, B


CATALOG = {
    "even1": lambda: from_additive(catalog.even_optimal(1)),
    "even2": lambda: from_additive(catalog.even_optimal(2)),
    "302": lambda: from_additive(catalog.three_0_2()),
    "513": lambda: from_additive(catalog.hamming_5_1_3()),
    "hexacode": lambda: from_additive(catalog.hexacode()),
    "6-16-2": nonadditive_6_16_2,
}


@pytest.mark.parametrize("name", ["even1", "even2", "302", "513"])
def test_against_dense_traces(name):
    s = CATALOG[name]()
    A, B = definitional(s.projector(), s.n)
    np.testing.assert_allclose([float(c) for c in weight_enumerator(s).coeffs], A, atol=1e-9)
    np.testing.assert_allclose([float(c) for c in dual_enumerator(s).coeffs], B, atol=1e-9)
    np.testing.assert_allclose([float(c) for c in dual_enumerator(s.projector()).coeffs], B, atol=1e-9)


@pytest.mark.parametrize("name", list(CATALOG))
def test_macwilliams_matches_definition(name):
    s = CATALOG[name]()
    A, B = weight_enumerator(s), dual_enumerator(s)
    assert A.is_exact and B.is_exact
    assert macwilliams(A) == B
    assert macwilliams(B) == A
    assert A[0] == s.K**2 and B[0] == s.K


@pytest.mark.parametrize("code", [catalog.even_optimal(2), catalog.hexacode(), catalog.hamming_5_1_3(), catalog.three_0_2()])
def test_additive_shortcut(code):
    A, B = additive_enumerators(code)
    s = from_additive(code)
    assert A == weight_enumerator(s)
    assert B == dual_enumerator(s)


def test_nonadditive_6_16_2_values():
    s = nonadditive_6_16_2()
    A, B = weight_enumerator(s), dual_enumerator(s)
    assert A.coeffs == (256, 0, 0, 0, 0, 0, 768)
    assert B.coeffs == (16, 0, 720, 1920, 5040, 5760, 2928)


def test_bell_extension_enumerator():
    A = weight_enumerator(extend_by_two(bell_pairs(1)))
    assert A.polynomial() == "16 x^4 + 48 y^4"


def test_krawtchouk_generating_function():
    # sum_j K_j(i) t^j = (1 + 3t)^(n-i) (1 - t)^i
    n = 6
    for i in range(n + 1):
        poly = np.polynomial.polynomial.polymul(
            np.polynomial.polynomial.polypow([1, 3], n - i),
            np.polynomial.polynomial.polypow([1, -1], i),
        )
        assert [krawtchouk(n, j, i) for j in range(n + 1)] == list(np.rint(poly).astype(int))


@given(st.integers(1, 7), st.data())
def test_macwilliams_is_involution(n, data):
    coeffs = data.draw(st.lists(st.fractions(min_value=-50, max_value=50), min_size=n + 1, max_size=n + 1))
    A = Enumerator(n, 1, "A", coeffs)
    assert macwilliams(macwilliams(A)) == A


def test_b1_closed_form():
    # B_1 = 2^-n sum_i (3n - 4i) A_i
    n = 5
    A = weight_enumerator(from_additive(catalog.hamming_5_1_3()))
    expected = Fraction(1, 2**n) * sum((3 * n - 4 * i) * A[i] for i in range(n + 1))
    assert macwilliams(A)[1] == expected


@pytest.mark.parametrize("name", ["302", "513"])
def test_identity_on_odd_codes(name):
    assert theorem2_identity_check(weight_enumerator(CATALOG[name]()))


def test_identity_needs_odd_length():
    with pytest.raises(ValueError):
        theorem2_identity_check(weight_enumerator(CATALOG["even2"]()))


@pytest.mark.parametrize("name", list(CATALOG))
def test_shadow_nonnegative(name):
    assert shadow_zero(weight_enumerator(CATALOG[name]())) >= 0


def test_complement():
    A = Enumerator(2, 1, "A", (1, 0, 3))
    C = complement_enumerator(A)
    assert C.K == 3 and C.coeffs == (9, 0, 3)
    with pytest.raises(ValueError):
        complement_enumerator(macwilliams(A))


def test_rationalize():
    assert rationalize(0.25 + 1e-12, 64) == Fraction(1, 4)
    assert isinstance(rationalize(np.pi, 64), float)


def test_formatting():
    A = Enumerator(2, 1, "A", (1, 0, 3))
    B = macwilliams(A)
    text = format_enumerators(A, B, shadow_zero(A))
    assert text.splitlines()[0] == "A[0] = 1"
    assert "S0 = 1" in text
    rec = enumerator_record(A, B, shadow_zero(A))
    assert rec["A"] == ["1", "0", "3"] and rec["K"] == "1"
    assert Enumerator(3, 1, "A", (1, 0, -2, 4)).polynomial() == "1 x^3 - 2 x y^2 + 4 y^3"
    with pytest.raises(ValueError):
        Enumerator(2, 1, "C", (1, 0, 3))
