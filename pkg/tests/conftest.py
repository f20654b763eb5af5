"""Independent oracles shared by the test modules: dense Pauli matrices
built letter by letter, explicit GF(4) arithmetic, and Haar sampling."""

from functools import reduce

import numpy as np
import pytest

LETTER_MATRIX = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# GF(4) = {0, 1, w, W} with w^2 = W = w + 1, written out by hand
GF4_ADD = {
    ("0", a): a for a in "01wW"
} | {
    (a, "0"): a for a in "01wW"
} | {
    ("1", "1"): "0", ("w", "w"): "0", ("W", "W"): "0",
    ("1", "w"): "W", ("w", "1"): "W",
    ("1", "W"): "w", ("W", "1"): "w",
    ("w", "W"): "1", ("W", "w"): "1",
}
GF4_MUL = {
    **{("0", a): "0" for a in "01wW"},
    **{(a, "0"): "0" for a in "01wW"},
    **{("1", a): a for a in "1wW"},
    **{(a, "1"): a for a in "1wW"},
    ("w", "w"): "W", ("W", "W"): "w", ("w", "W"): "1", ("W", "w"): "1",
}
GF4_CONJ = {"0": "0", "1": "1", "w": "W", "W": "w"}
# trace Tr(a) = a + a^2 in GF(2)
GF4_TRACE = {"0": 0, "1": 0, "w": 1, "W": 1}
# symbol -> Pauli letter under the standard correspondence
SYMBOL_LETTER = {"0": "I", "1": "Y", "w": "X", "W": "Z"}


def dense_pauli(letters, sign=1):
    return sign * reduce(np.kron, (LETTER_MATRIX[c] for c in letters))


def word_pauli(word):
    return dense_pauli("".join(SYMBOL_LETTER[s] for s in word))


def trace_inner(u, v):
    """sum_i Tr(u_i conj(v_i)) in GF(2), straight from the tables."""
    total = 0
    for a, b in zip(u, v):
        total ^= GF4_TRACE[GF4_MUL[(a, GF4_CONJ[b])]]
    return total


def haar_unitary(rng, dim=2):
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def dense_stabilizer_projector(words, signs=None):
    n = len(words[0])
    P = np.eye(1 << n, dtype=complex)
    for i, w in enumerate(words):
        s = 1 if signs is None else signs[i]
        P = P @ (np.eye(1 << n) + s * word_pauli(w)) / 2
    return P


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
