"""Additive codes over GF(4).

A symbol is a 2-bit int ``2*x + z`` so that field addition is XOR and the
symbol doubles as a single-qubit Pauli label (``x`` and ``z`` bits):

    0 -> I,  w (omega) -> X,  W (omega bar) -> Z,  1 -> Y

A length-n word packs into one int ``(x << n) | z`` with qubit 0 in the
most significant position of each half.  Under this packing the trace
inner product Tr(u * conj(v)) is the symplectic form, so an additive code is
the same object as the GF(2) span of a set of stabilizer generators.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from . import gf2
from .config import DEFAULT_SPAN_LIMIT, SizeLimitError

ZERO, OMEGA_BAR, OMEGA, ONE = 0, 1, 2, 3
SYMBOLS = {"0": ZERO, "1": ONE, "w": OMEGA, "W": OMEGA_BAR}
SYMBOL_TEXT = {v: k for k, v in SYMBOLS.items()}

_EXP = (ONE, OMEGA, OMEGA_BAR)
_LOG = {ONE: 0, OMEGA: 1, OMEGA_BAR: 2}


def add(a, b):
    return a ^ b


def mul(a, b):
    if a == ZERO or b == ZERO:
        return ZERO
    return _EXP[(_LOG[a] + _LOG[b]) % 3]


def conj(a):
    """Frobenius map a -> a^2, which swaps omega and omega bar."""
    return mul(a, a)


def trace(a):
    """Absolute trace GF(4) -> GF(2): a + a^2."""
    return 1 if add(a, conj(a)) == ONE else 0


def parse_word(text):
    """Parse ``"1wW0"`` or ``"1 w W 0"`` into a tuple of symbols."""
    if not isinstance(text, str):
        return tuple(int(s) for s in text)
    chars = text.split() if " " in text.strip() else list(text.strip())
    try:
        return tuple(SYMBOLS[c] for c in chars)
    except KeyError as exc:
        raise ValueError(f"bad GF(4) symbol {exc.args[0]!r}; use 0, 1, w, W") from None


def format_word(word, sep=""):
    return sep.join(SYMBOL_TEXT[s] for s in word)


def pack(word):
    n = len(word)
    x = z = 0
    for s in word:
        x = (x << 1) | (s >> 1)
        z = (z << 1) | (s & 1)
    return (x << n) | z


def unpack(v, n):
    x, z = v >> n, v & ((1 << n) - 1)
    return tuple(2 * (x >> (n - 1 - i) & 1) + (z >> (n - 1 - i) & 1) for i in range(n))


def packed_weight(v, n):
    return ((v >> n) | (v & ((1 << n) - 1))).bit_count()


def packed_support(v, n):
    """Support as an n-bit mask, qubit 0 most significant."""
    return (v >> n) | (v & ((1 << n) - 1))


def symplectic(u, v, n):
    mask = (1 << n) - 1
    return ((((u >> n) & v) ^ ((v >> n) & u)) & mask).bit_count() & 1


def _scale_omega(v, n):
    # omega * (x*omega + z*omegabar) = z*omega + (x + z)*omegabar
    mask = (1 << n) - 1
    x, z = v >> n, v & mask
    return (z << n) | (x ^ z)


def trace_inner_product(u, v):
    """Tr(sum_i u_i * conj(v_i)) as a bit; words may be strings or tuples."""
    u, v = parse_word(u), parse_word(v)
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    total = ZERO
    for a, b in zip(u, v):
        total = add(total, mul(a, conj(b)))
    return trace(total)


class QuantumParameters(NamedTuple):
    n: int
    k: int
    d: int
    pure: bool


@dataclass(frozen=True)
class Gf4AdditiveCode:
    """GF(2)-span of GF(4) generator words.

    Dependent generators are dropped on construction (first occurrence kept),
    so ``generators`` is always a basis in the order given.
    """

    n: int
    generators: tuple

    def __post_init__(self):
        gens = tuple(parse_word(g) for g in self.generators)
        for g in gens:
            if len(g) != self.n:
                raise ValueError(f"generator {format_word(g)} has length {len(g)}, expected {self.n}")
        keep = gf2.independent_subset([pack(g) for g in gens])
        object.__setattr__(self, "generators", tuple(gens[i] for i in keep))

    @classmethod
    def from_strings(cls, rows):
        rows = [parse_word(r) for r in rows]
        return cls(len(rows[0]), tuple(rows))

    @property
    def rank(self):
        return len(self.generators)

    @cached_property
    def packed(self):
        return [pack(g) for g in self.generators]

    @cached_property
    def canonical_packed(self):
        """Reduced echelon basis; fixes the sign convention of :func:`qd2.statecode.from_additive`."""
        return gf2.rref(self.packed)

    @cached_property
    def _basis(self):
        return gf2.XorBasis(self.packed)

    def __contains__(self, word):
        v = word if isinstance(word, int) else pack(parse_word(word))
        return v in self._basis

    def span_packed(self, limit=DEFAULT_SPAN_LIMIT):
        if 1 << self.rank > limit:
            raise SizeLimitError(f"span of size 2^{self.rank} exceeds limit {limit}")
        return gf2.span(self.packed)

    def words(self, limit=DEFAULT_SPAN_LIMIT):
        return [unpack(v, self.n) for v in self.span_packed(limit)]

    def same_span(self, other):
        if self.n != other.n or self.rank != other.rank:
            return False
        return all(v in self._basis for v in other.packed)

    def __str__(self):
        return "\n".join(format_word(g, " ") for g in self.generators)


def is_weakly_self_dual(code):
    gens = code.packed
    return all(symplectic(u, v, code.n) == 0 for i, u in enumerate(gens) for v in gens[i:])


def is_gf4_linear(code):
    return all(_scale_omega(v, code.n) in code for v in code.packed)


def centralizer_in_extraspecial(code):
    """Trace dual: every word trace-orthogonal to the whole code."""
    n = code.n
    mask = (1 << n) - 1
    # <e, g> = parity(e & swap(g)) with the x and z halves of g exchanged
    rows = [((g & mask) << n) | (g >> n) for g in code.packed]
    basis = gf2.nullspace(rows, 2 * n)
    return Gf4AdditiveCode(n, tuple(unpack(v, n) for v in sorted(basis, reverse=True)))


def weight_distribution(code, limit=DEFAULT_SPAN_LIMIT):
    counts = [0] * (code.n + 1)
    for v in code.span_packed(limit):
        counts[packed_weight(v, code.n)] += 1
    return counts


def minimum_weight(code, limit=DEFAULT_SPAN_LIMIT):
    """Smallest nonzero weight in the span; n + 1 for the zero code."""
    best = code.n + 1
    for v in code.span_packed(limit)[1:]:
        best = min(best, packed_weight(v, code.n))
    return best


def quantum_parameters(code, limit=DEFAULT_SPAN_LIMIT):
    """[[n, k, d]] of the stabilizer code with stabilizer ``code``."""
    if not is_weakly_self_dual(code):
        raise ValueError("code is not trace self-orthogonal")
    n = code.n
    k = n - code.rank
    stab_min = minimum_weight(code, limit)
    if k == 0:
        return QuantumParameters(n, 0, stab_min, True)
    cent = centralizer_in_extraspecial(code)
    d = n + 1
    for v in cent.span_packed(limit):
        w = packed_weight(v, n)
        if 0 < w < d and v not in code:
            d = w
            if d == 1:
                break
    return QuantumParameters(n, k, d, stab_min >= d)


def minimal_supports(code, limit=DEFAULT_SPAN_LIMIT):
    """Supports (frozensets of 0-based qubits) of minimal nonzero codewords."""
    masks = {packed_support(v, code.n) for v in code.span_packed(limit)[1:]}
    minimal = [s for s in masks if not any(t != s and t & s == t for t in masks)]
    return {_mask_to_set(s, code.n) for s in minimal}


def minimal_codewords(code, limit=DEFAULT_SPAN_LIMIT):
    supports = {_set_to_mask(s, code.n) for s in minimal_supports(code, limit)}
    return [v for v in code.span_packed(limit)[1:] if packed_support(v, code.n) in supports]


def minimal_span_check(code, limit=DEFAULT_SPAN_LIMIT):
    """True iff the minimal codewords span a GF(4)-linear code."""
    if not is_gf4_linear(code):
        raise ValueError("code is not GF(4)-linear")
    return gf2.rank(minimal_codewords(code, limit)) == code.rank


def _mask_to_set(mask, n):
    return frozenset(i for i in range(n) if mask >> (n - 1 - i) & 1)


def _set_to_mask(qubits, n):
    return sum(1 << (n - 1 - i) for i in qubits)


def weight_two_codewords(code, limit=DEFAULT_SPAN_LIMIT):
    return [unpack(v, code.n) for v in code.span_packed(limit) if packed_weight(v, code.n) == 2]

