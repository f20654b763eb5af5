from itertools import combinations

import numpy as np
import pytest

from qd2 import catalog, gf4
from qd2.config import ToleranceError
from qd2.constructions import (
    CosetSpec, bell_pairs, coset_code, coset_translates, extend_by_two, nonadditive_6_16_2,
    nonadditive_even,
)
from qd2.enumerators import weight_enumerator
from qd2.pauli import Pauli, gf4_to_pauli
from qd2.statecode import (
    StateCode, certify_442, from_additive, is_pure_distance_at_least, kl_scan, minimum_distance,
    partial_trace, from_projector, pauli_stabilizer, quartic_invariant,
)

from conftest import GF4_ADD, dense_pauli


def test_coset_words_form_a_distance_2_code():
    words = catalog.COSET_WORDS_6_16_2
    assert len(set(words)) == 16
    for u, v in combinations(words, 2):
        diff = "".join(GF4_ADD[(a, b)] for a, b in zip(u, v))
        assert sum(c != "0" for c in diff) >= 2


def test_coset_words_are_not_additive():
    words = set(catalog.COSET_WORDS_6_16_2)
    closed = all(
        "".join(GF4_ADD[(a, b)] for a, b in zip(u, v)) in words for u in words for v in words
    )
    assert not closed


def test_translates_act_on_first_qubit_of_each_pair():
    (p,) = coset_translates(["1wW"])
    assert p.letters() == "YIXIZI"


def test_nonadditive_6_16_2():
    s = nonadditive_6_16_2()
    assert (s.n, s.K) == (6, 16)
    report = kl_scan(s)
    # pure distance 2: every weight-1 error vanishes on the code
    assert report[1]["zero"] == report[1]["total"] == 18
    assert report[2]["scalar"] < report[2]["total"]
    assert tuple(minimum_distance(s)) == (2, True)


def test_nonadditive_differs_from_stabilizer_code():
    s = nonadditive_6_16_2()
    t = from_additive(catalog.even_optimal(3))
    # same weight enumerator, different local invariants and stabilizer
    assert weight_enumerator(s) == weight_enumerator(t)
    diffs = [abs(quartic_invariant(s, S) - quartic_invariant(t, S)) for S in combinations(range(6), 2)]
    assert max(diffs) > 1e-6
    assert len(pauli_stabilizer(s)) == 2
    assert len(pauli_stabilizer(t)) == 4


def test_coset_code_rejects_overlapping_translates():
    spec = CosetSpec(bell_pairs(1), [Pauli.from_str("II"), Pauli.from_str("XX")])
    with pytest.raises(ToleranceError, match="non-orthogonal"):
        coset_code(spec)


def test_coset_spec_needs_single_state():
    with pytest.raises(ValueError):
        CosetSpec(from_additive(catalog.even_optimal(2)), [])


def test_extend_bell():
    s = extend_by_two(bell_pairs(1))
    assert (s.n, s.K) == (4, 4)
    assert weight_enumerator(s).coeffs == (16, 0, 0, 0, 48)
    assert certify_442(s).residual < 1e-7


def test_extend_three_0_2():
    s = extend_by_two(from_additive(catalog.three_0_2()))
    assert (s.n, s.K) == (5, 4)
    assert tuple(minimum_distance(s)) == (2, True)
    t = extend_by_two(s)
    assert (t.n, t.K) == (7, 16)
    assert is_pure_distance_at_least(t, 2)


def test_extend_rejects_impure():
    # |00>: Z on qubit 0 has expectation 1
    with pytest.raises(ValueError):
        extend_by_two(StateCode(np.eye(4)[:1]))


def test_nonadditive_even_8():
    s = nonadditive_even(4)
    assert (s.n, s.K) == (8, 64)
    assert is_pure_distance_at_least(s, 2)
    with pytest.raises(ValueError):
        nonadditive_even(2)


def test_bell_pairs():
    s = bell_pairs(2)
    assert (s.n, s.K) == (4, 1)
    assert tuple(minimum_distance(s)) == (2, True)


def test_hexacode_trace_chain():
    s = from_additive(catalog.hexacode())
    P = s.projector()
    R = 2 * partial_trace(P, range(1, 6)).matrix
    np.testing.assert_allclose(R @ R, R, atol=1e-12)
    q = from_projector(R)
    assert q.K == 2
    assert tuple(minimum_distance(q)) == (3, True)
    for S in combinations(range(6), 2):
        keep = [i for i in range(6) if i not in S]
        q4 = from_projector(4 * partial_trace(P, keep).matrix)
        assert (q4.n, q4.K) == (4, 4)
        assert certify_442(q4).residual < 1e-7
