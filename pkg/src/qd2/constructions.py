"""Code constructions: the even-length family, the two-qubit extension,
coset codes, and the nonadditive ((6,16,2))."""

from dataclasses import dataclass

import numpy as np

from .catalog import COSET_WORDS_6_16_2, even_optimal
from .config import ToleranceError, check_dense
from .pauli import Pauli, apply, gf4_to_pauli
from .statecode import StateCode, is_pure_distance_at_least

__all__ = [
    "CosetSpec",
    "bell_pairs",
    "coset_code",
    "even_optimal",
    "extend_by_two",
    "nonadditive_6_16_2",
    "nonadditive_even",
]

BELL = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


def bell_pairs(count):
    v = np.ones(1, dtype=complex)
    for _ in range(count):
        v = np.kron(v, BELL)
    return StateCode(v[None, :])


def extend_by_two(code):
    """Pure ((n,K,2)) -> pure ((n+2,4K,2)).

    The new code is spanned by E_0 E_n (Q (x) Bell) for E in {I, X, Y, Z},
    with the paired letters on qubit 0 of Q and on the first appended qubit.
    """
    if not is_pure_distance_at_least(code, 2):
        raise ValueError("input is not a pure code of distance >= 2")
    n = code.n
    check_dense(n + 2)
    base = np.kron(code.basis, BELL[None, :]).reshape(code.K, -1)
    rows = []
    for letter in "IXYZ":
        if letter == "I":
            E = Pauli.identity(n + 2)
        else:
            E = Pauli.single(n + 2, 0, letter) * Pauli.single(n + 2, n, letter)
        rows.append(apply(E, base))
    return StateCode(np.concatenate(rows), code.tol)


@dataclass(frozen=True, eq=False)
class CosetSpec:
    base: StateCode
    translates: tuple

    def __post_init__(self):
        if self.base.K != 1:
            raise ValueError("base must be a single state")
        object.__setattr__(self, "translates", tuple(self.translates))


def coset_code(spec, tol=1e-9):
    v = spec.base.basis[0]
    images = np.array([apply(E, v) for E in spec.translates])
    gram = images.conj() @ images.T
    off = np.abs(gram - np.eye(len(images)))
    if off.max() > tol:
        i, j = np.unravel_index(np.argmax(off), off.shape)
        raise ToleranceError(
            f"translates {spec.translates[i]} and {spec.translates[j]} give non-orthogonal states"
            f" (overlap {abs(gram[i, j]):.3g})"
        )
    return StateCode(images, spec.base.tol)


def coset_translates(words):
    """Pauli images of length-L GF(4) words acting on the first qubit of each of L Bell pairs."""
    out = []
    for word in words:
        p = gf4_to_pauli(word)
        L = p.n
        x = z = 0
        for j in range(L):
            bit = L - 1 - j
            x |= (p.x >> bit & 1) << (2 * L - 1 - 2 * j)
            z |= (p.z >> bit & 1) << (2 * L - 1 - 2 * j)
        out.append(Pauli(2 * L, x, z))
    return out


def nonadditive_6_16_2():
    spec = CosetSpec(bell_pairs(3), coset_translates(COSET_WORDS_6_16_2))
    return coset_code(spec)


def nonadditive_even(m):
    """((2m, 4^(m-1), 2)) from the ((6,16,2)) by repeated two-qubit extension."""
    if m < 3:
        raise ValueError("m must be at least 3")
    check_dense(2 * m)
    code = nonadditive_6_16_2()
    for _ in range(m - 3):
        code = extend_by_two(code)
    return code
