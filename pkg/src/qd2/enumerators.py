"""Weight, dual and shadow-zero enumerators in exact rational arithmetic.

Normalization: A_d = sum over weight-d Pauli words E of Tr(E P) Tr(E^dag P)
and B_d = sum of Tr(E P E^dag P), so A_0 = K^2 and B_0 = K.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import gf4
from .config import check_dense
from .statecode import _as_matrix, _qubits, _walsh_hadamard, pauli_coefficients

ROUND_TOL = 1e-8


@dataclass(frozen=True)
class Enumerator:
    n: int
    K: Fraction
    kind: str  # "A" (weight) or "B" (dual)
    coeffs: tuple

    def __post_init__(self):
        if self.kind not in ("A", "B"):
            raise ValueError(f"kind must be 'A' or 'B', not {self.kind!r}")
        if len(self.coeffs) != self.n + 1:
            raise ValueError(f"need {self.n + 1} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "K", Fraction(self.K))
        object.__setattr__(self, "coeffs", tuple(_exact(c) for c in self.coeffs))

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    @property
    def is_exact(self):
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def polynomial(self):
        """Human form such as ``16 x^4 + 48 y^4`` (x marks identity, y non-identity)."""
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = " ".join(
                f"{v}^{e}" if e > 1 else v for v, e in (("x", self.n - i), ("y", i)) if e
            )
            terms.append(f"{_fmt(c)} {mono}".strip())
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _exact(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    return float(c)


def _fmt(c):
    if isinstance(c, Fraction):
        return str(c)
    return f"{c:.12g}"


def rationalize(value, max_den, tol=ROUND_TOL):
    """Nearest fraction with denominator <= max_den if within tol, else the float."""
    frac = Fraction(value).limit_denominator(max_den)
    if abs(float(frac) - value) <= tol:
        return frac
    return float(value)


def _rationalize_all(values, n):
    return tuple(rationalize(float(v), 1 << (2 * n)) for v in values)


def _weights(n):
    idx = np.arange(1 << n)
    return np.bitwise_count(idx[:, None] | idx[None, :]).astype(int)


def weight_enumerator(op):
    """A_d from the Pauli expansion of the projector (or Hermitian operator)."""
    m = _as_matrix(op)
    n = _qubits(m.shape[0])
    check_dense(n)
    c = pauli_coefficients(m)
    terms = (c * c).real  # Tr(E M) Tr(E^dag M) with E Hermitian
    A = np.bincount(_weights(n).ravel(), weights=terms.ravel(), minlength=n + 1)
    K = rationalize(float(np.trace(m).real), 1 << n)
    return Enumerator(n, Fraction(K), "A", _rationalize_all(A, n))


def dual_enumerator(op):
    """B_d = sum over weight-d words of Tr(E P E P), evaluated error by error."""
    m = _as_matrix(op)
    n = _qubits(m.shape[0])
    check_dense(n)
    B = np.bincount(_weights(n).ravel(), weights=_epep(m).ravel(), minlength=n + 1)
    K = rationalize(float(np.trace(m).real), 1 << n)
    return Enumerator(n, Fraction(K), "B", _rationalize_all(B, n))


def _epep(m):
    """Tr(E M E M) for every Hermitian Pauli E = X^x Z^z, as an array [x, z].

    Writing E|c> = i^|x&z| (-1)^(z.c) |c^x>, the trace is
    (-1)^(z.x) sum_u (-1)^(z.u) q_x[u] with q_x[u] = sum_a M[a^x, a^u] M[a^u^x, a],
    so each x costs one gather and one Walsh-Hadamard transform.
    """
    dim = m.shape[0]
    a = np.arange(dim)[:, None]
    u = np.arange(dim)[None, :]
    q = np.empty((dim, dim), dtype=complex)
    for x in range(dim):
        q[x] = np.sum(m[a ^ x, a ^ u] * m[a ^ u ^ x, a], axis=0)
    t = _walsh_hadamard(q)
    idx = np.arange(dim)
    sign = 1 - 2 * (np.bitwise_count(idx[:, None] & idx[None, :]).astype(np.int64) & 1)
    return (sign * t).real


def additive_enumerators(code):
    """(A, B) of a stabilizer code straight from span weight counts.

    A_d = K^2 N_d(stabilizer), B_d = K N_d(centralizer).
    """
    K = 1 << (code.n - code.rank)
    N = gf4.weight_distribution(code)
    M = gf4.weight_distribution(gf4.centralizer_in_extraspecial(code))
    return (
        Enumerator(code.n, K, "A", tuple(K * K * c for c in N)),
        Enumerator(code.n, K, "B", tuple(K * c for c in M)),
    )


def krawtchouk(n, j, i):
    """Quaternary Krawtchouk polynomial K_j(i) for length n."""
    return sum((-1) ** s * 3 ** (j - s) * comb(i, s) * comb(n - i, j - s) for s in range(j + 1))


def macwilliams(A):
    """B_j = 2^-n sum_i K_j(i) A_i.  The transform is an involution, so a dual
    enumerator maps back to the weight enumerator."""
    n = A.n
    scale = Fraction(1, 1 << n)
    coeffs = tuple(
        scale * sum(krawtchouk(n, j, i) * A[i] for i in range(n + 1)) for j in range(n + 1)
    )
    return Enumerator(n, A.K, "B" if A.kind == "A" else "A", coeffs)


def shadow_zero(A):
    return Fraction(1, 1 << A.n) * sum((-1) ** i * a for i, a in enumerate(A.coeffs))


def complement_enumerator(A):
    """Weight enumerator of the orthogonal complement: only A_0 changes."""
    if A.kind != "A":
        raise ValueError("complement rule applies to weight enumerators")
    dim = 1 << A.n
    if A.K >= dim:
        raise ValueError(f"K={A.K} leaves no complement in dimension {dim}")
    K2 = dim - A.K
    return Enumerator(A.n, K2, "A", (K2 * K2,) + A.coeffs[1:])


def theorem2_identity_check(A):
    """(n-2) B_0 + B_1 - 2 S_0 == 2^-n sum_{i<=m} 4 (n-2i-1)(A_2i + A_2i+1), n = 2m+1."""
    n = A.n
    if n % 2 == 0:
        raise ValueError("identity is stated for odd length")
    m = (n - 1) // 2
    B = macwilliams(A)
    lhs = (n - 2) * B[0] + B[1] - 2 * shadow_zero(A)
    rhs = Fraction(1, 1 << n) * sum(4 * (n - 2 * i - 1) * (A[2 * i] + A[2 * i + 1]) for i in range(m + 1))
    return lhs == rhs


def format_enumerators(A, B=None, S0=None):
    lines = [f"A[{i}] = {_fmt(c)}" for i, c in enumerate(A.coeffs)]
    if B is not None:
        lines += [f"B[{i}] = {_fmt(c)}" for i, c in enumerate(B.coeffs)]
    if S0 is not None:
        lines.append(f"S0 = {_fmt(S0)}")
    return "\n".join(lines)


def enumerator_record(A, B=None, S0=None):
    def enc(c):
        return str(c) if isinstance(c, Fraction) else c

    rec = {"n": A.n, "K": str(A.K), "A": [enc(c) for c in A.coeffs]}
    if B is not None:
        rec["B"] = [enc(c) for c in B.coeffs]
    if S0 is not None:
        rec["S0"] = enc(S0)
    return rec
