"""The n-qubit Pauli group with exact phases.

A Pauli is stored as two n-bit masks and a phase exponent mod 4.  Masks
are read left to right (qubit 0 is the most significant bit), matching
computational-basis indices, so ``x`` can be XORed straight into a state
index.  The phase is relative to the Hermitian letters I, X, Y, Z:
``Pauli(2, 0b11, 0b11, 2)`` is ``-YY``.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from . import gf4
from .config import check_dense

PHASE_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_BITS = {v: k for k, v in _LETTER.items()}


@dataclass(frozen=True)
class Pauli:
    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError(f"bit masks do not fit in {self.n} qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n):
        return cls(n, 0, 0)

    @classmethod
    def single(cls, n, qubit, letter):
        """``letter`` in 'XYZ' acting on ``qubit``; identity elsewhere."""
        bx, bz = _BITS[letter]
        shift = n - 1 - qubit
        return cls(n, bx << shift, bz << shift)

    @classmethod
    def from_str(cls, text):
        text = text.strip()
        phase = 0
        for token, p in (("+i", 1), ("-i", 3), ("+", 0), ("-", 2)):
            if text.startswith(token):
                phase, text = p, text[len(token):]
                break
        x = z = 0
        for ch in text:
            if ch not in "IXYZ":
                raise ValueError(f"bad Pauli letter {ch!r}")
            bx, bz = _BITS[ch]
            x, z = (x << 1) | bx, (z << 1) | bz
        return cls(len(text), x, z, phase)

    def letters(self):
        n = self.n
        return "".join(
            _LETTER[(self.x >> (n - 1 - i) & 1, self.z >> (n - 1 - i) & 1)] for i in range(n)
        )

    def __str__(self):
        prefix = "" if self.phase == 0 else PHASE_TEXT[self.phase]
        return prefix + self.letters()

    def __mul__(self, other):
        return multiply(self, other)

    @property
    def weight(self):
        return (self.x | self.z).bit_count()

    def dagger(self):
        return Pauli(self.n, self.x, self.z, -self.phase)

    def unphased(self):
        return Pauli(self.n, self.x, self.z, 0)

    def is_hermitian(self):
        return self.phase % 2 == 0

    def packed(self):
        """The GF(4) word of this Pauli, packed as in :mod:`qd2.gf4`."""
        return (self.x << self.n) | self.z


def _check_same(p, q):
    if p.n != q.n:
        raise ValueError(f"length mismatch: {p.n} vs {q.n} qubits")


def _letter_phase(x1, z1, x2, z2):
    # per-site product of Hermitian letters: XY = iZ, YZ = iX, ZX = iY
    X1, Y1, Z1 = x1 & ~z1, x1 & z1, ~x1 & z1
    X2, Y2, Z2 = x2 & ~z2, x2 & z2, ~x2 & z2
    plus = (X1 & Y2) | (Y1 & Z2) | (Z1 & X2)
    minus = (Y1 & X2) | (Z1 & Y2) | (X1 & Z2)
    return plus.bit_count() - minus.bit_count()


def multiply(p, q):
    _check_same(p, q)
    phase = p.phase + q.phase + _letter_phase(p.x, p.z, q.x, q.z)
    return Pauli(p.n, p.x ^ q.x, p.z ^ q.z, phase)


def commutes(p, q):
    _check_same(p, q)
    return ((p.x & q.z) ^ (p.z & q.x)).bit_count() % 2 == 0


def weight(p):
    return p.weight


def gf4_to_pauli(word):
    """0 -> I, 1 -> Y, omega -> X, omega bar -> Z, with phase +1."""
    word = gf4.parse_word(word)
    n = len(word)
    v = gf4.pack(word)
    return Pauli(n, v >> n, v & ((1 << n) - 1))


def pauli_to_gf4(p):
    return gf4.unpack(p.packed(), p.n)


def iter_paulis(n, weight=None):
    """Unphased Hermitian Paulis, optionally only those of one weight."""
    if weight is None:
        for index in range(4**n):
            yield pauli_from_index(n, index)
        return
    for support in combinations(range(n), weight):
        for letters in product("XYZ", repeat=weight):
            x = z = 0
            for q, ch in zip(support, letters):
                bx, bz = _BITS[ch]
                x |= bx << (n - 1 - q)
                z |= bz << (n - 1 - q)
            yield Pauli(n, x, z)


def pauli_from_index(n, index):
    """Index in range(4**n) -> unphased Pauli; slices of the range can be farmed out."""
    x, z = divmod(index, 1 << n)
    return Pauli(n, x, z)


@lru_cache(maxsize=None)
def _indices(n):
    idx = np.arange(1 << n, dtype=np.int64)
    idx.setflags(write=False)
    return idx


def apply(p, vectors):
    """Apply ``p`` to the last axis of ``vectors`` (state vectors of length 2^n)."""
    vectors = np.asarray(vectors)
    idx = _indices(p.n)
    # X^x Z^z |b> = (-1)^(z.b) |b ^ x>,  and Y = i X Z per site
    sign = 1 - 2 * (np.bitwise_count(idx & p.z).astype(np.int64) & 1)
    coef = 1j ** ((p.phase + (p.x & p.z).bit_count()) % 4)
    return coef * (sign * vectors)[..., idx ^ p.x]


def to_matrix(p):
    check_dense(p.n)
    return apply(p, np.eye(1 << p.n, dtype=complex)).T
