"""Quantum codes as explicit orthonormal families of state vectors.

Everything here is dense linear algebra on 2^n-dimensional vectors, so
the qubit count is capped by :func:`qd2.config.dense_limit`.  Qubits are
0-indexed; qubit 0 is the most significant bit of a basis index.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

import numpy as np

from . import gf4
from .config import DEFAULT_TOL, ToleranceError, check_dense
from .pauli import Pauli, apply, iter_paulis

PAULI_MATRICES = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
I2, SX, SY, SZ = PAULI_MATRICES

BELL_TARGETS = (
    np.array([1, 0, 0, 1]) / np.sqrt(2),
    np.array([0, 1, 1, 0]) / np.sqrt(2),
    -1j * np.array([0, 1, -1, 0]) / np.sqrt(2),
    np.array([1, 0, 0, -1]) / np.sqrt(2),
)


def _qubits(dim):
    n = dim.bit_length() - 1
    if dim != 1 << n:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


@dataclass(frozen=True, eq=False)
class HermitianOp:
    matrix: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("operator must be a square matrix")
        _qubits(m.shape[0])
        if np.max(np.abs(m - m.conj().T), initial=0.0) > max(self.tol, 1e-12) * max(1.0, np.abs(m).max()):
            raise ToleranceError("operator is not Hermitian within tolerance")
        object.__setattr__(self, "matrix", m)

    @property
    def n(self):
        return _qubits(self.matrix.shape[0])

    def __mul__(self, scalar):
        return HermitianOp(self.matrix * scalar, self.tol)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class StateCode:
    """K orthonormal vectors (rows of ``basis``) spanning a code in (C^2)^n."""

    basis: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        b = np.atleast_2d(np.asarray(self.basis, dtype=complex))
        n = _qubits(b.shape[1])
        check_dense(n)
        gram = b.conj() @ b.T
        dev = np.max(np.abs(gram - np.eye(len(b))))
        if dev > self.tol:
            raise ToleranceError(f"basis is not orthonormal: Gram deviation {dev:.3g} > {self.tol:g}")
        object.__setattr__(self, "basis", b)

    @property
    def n(self):
        return _qubits(self.basis.shape[1])

    @property
    def K(self):
        return self.basis.shape[0]

    def projector(self):
        return self.basis.T @ self.basis.conj()

    def __repr__(self):
        return f"StateCode(n={self.n}, K={self.K})"


def _as_matrix(op):
    if isinstance(op, StateCode):
        return op.projector()
    if isinstance(op, HermitianOp):
        return op.matrix
    return np.asarray(op, dtype=complex)


def _phase_fix(v, tol=1e-12):
    """Scale ``v`` so that its first nonzero entry is positive real."""
    flat = v.reshape(-1)
    nz = np.flatnonzero(np.abs(flat) > tol)
    if len(nz) == 0:
        return v
    first = flat[nz[0]]
    return v * (abs(first) / first)


# -- construction ---------------------------------------------------------

def from_additive(code, tol=DEFAULT_TOL):
    """Stabilizer code whose stabilizer has the code's echelon basis as +1 generators.

    Each echelon row is mapped to its Hermitian Pauli with phase +1.  For the
    two-row family with all-ones and all-omega rows this yields the group
    generated by +X...X and +Z...Z, i.e. (-1)^m on Y...Y.
    """
    from .gf4 import is_weakly_self_dual

    if not is_weakly_self_dual(code):
        raise ValueError("code is not trace self-orthogonal")
    n = code.n
    check_dense(n)
    mask = (1 << n) - 1
    columns = np.eye(1 << n, dtype=complex)
    for g in code.canonical_packed:
        p = Pauli(n, g >> n, g & mask)
        columns = (columns + apply(p, columns)) / 2
    K = 1 << (n - code.rank)
    return StateCode(_gram_schmidt(columns, K), tol)


def _gram_schmidt(rows, K, tol=1e-8):
    out = []
    for v in rows:
        for u in out:
            v = v - (u.conj() @ v) * u
        norm = np.linalg.norm(v)
        if norm > tol:
            out.append(_phase_fix(v / norm))
            if len(out) == K:
                break
    if len(out) != K:
        raise ToleranceError(f"found only {len(out)} of {K} independent vectors")
    return np.array(out)


def from_projector(op, tol=DEFAULT_TOL, proj_tol=1e-8):
    """StateCode spanning the range of a projector."""
    m = _as_matrix(op)
    if np.max(np.abs(m @ m - m)) > proj_tol or np.max(np.abs(m - m.conj().T)) > proj_tol:
        raise ToleranceError("operator is not a projector")
    vals, vecs = np.linalg.eigh(m)
    keep = vals > 0.5
    basis = np.array([_phase_fix(v) for v in vecs[:, keep].T])
    return StateCode(basis, tol)


def apply_local(code, unitaries):
    """Apply the single-qubit unitaries ``unitaries[q]`` to qubit q of every codeword."""
    n = code.n
    if len(unitaries) != n:
        raise ValueError(f"need {n} unitaries, got {len(unitaries)}")
    t = code.basis.reshape((code.K,) + (2,) * n)
    for q, u in enumerate(unitaries):
        t = np.moveaxis(np.tensordot(u, t, axes=([1], [q + 1])), 0, q + 1)
    return StateCode(t.reshape(code.K, -1), code.tol)


def local_operator(unitaries):
    out = np.ones((1, 1), dtype=complex)
    for u in unitaries:
        out = np.kron(out, u)
    return out


def permutation_operator(perm):
    """Unitary sending qubit i to position perm[i]."""
    n = len(perm)
    b = np.arange(1 << n)
    c = np.zeros_like(b)
    for i, target in enumerate(perm):
        c |= ((b >> (n - 1 - i)) & 1) << (n - 1 - target)
    out = np.zeros((1 << n, 1 << n), dtype=complex)
    out[c, b] = 1
    return out


# -- Knill-Laflamme -------------------------------------------------------

def kl_matrix(code, E):
    """<v_i| E |v_j> over the code basis."""
    if E.n != code.n:
        raise ValueError(f"Pauli on {E.n} qubits, code on {code.n}")
    return code.basis.conj() @ apply(E, code.basis).T


class KLResult(NamedTuple):
    scalar: bool
    value: complex
    residual: float


def kl_check(code, E, tol=None):
    tol = code.tol if tol is None else tol
    m = kl_matrix(code, E)
    lam = np.trace(m) / code.K
    residual = float(np.max(np.abs(m - lam * np.eye(code.K))))
    return KLResult(residual <= tol, complex(lam), residual)


class Distance(NamedTuple):
    d: int
    pure: bool


def minimum_distance(code, max_weight=None, tol=None):
    """Knill-Laflamme distance and purity.

    d is the smallest weight carrying an error whose restriction to the code
    is not scalar.  A one-dimensional code always gives a scalar, so for K=1
    the first weight with a nonzero expectation value is used instead (the
    usual convention for self-dual states).  With ``max_weight`` the scan
    stops early and the returned d is max_weight + 1 at most.
    """
    tol = code.tol if tol is None else tol
    n = code.n
    top = n if max_weight is None else min(n, max_weight)
    pure = True
    for w in range(1, top + 1):
        for E in iter_paulis(n, w):
            res = kl_check(code, E, tol)
            zero = abs(res.value) <= tol
            if not res.scalar or (code.K == 1 and not zero):
                return Distance(w, pure)
            pure = pure and zero
    return Distance(top + 1, pure)


def is_pure_distance_at_least(code, d, tol=None):
    tol = code.tol if tol is None else tol
    for w in range(1, d):
        for E in iter_paulis(code.n, w):
            if np.max(np.abs(kl_matrix(code, E))) > tol:
                return False
    return True


def _fwht_rows(a):
    """In-place Walsh-Hadamard transform along axis 0 (length a power of two)."""
    size = a.shape[0]
    tmp = np.empty_like(a[: size // 2])
    h = 1
    while h < size:
        b = a.reshape(size // (2 * h), 2, h, -1)
        t = tmp.reshape(size // (2 * h), h, -1)
        np.subtract(b[:, 0], b[:, 1], out=t)
        b[:, 0] += b[:, 1]
        b[:, 1] = t
        h *= 2
    return a


def _kl_triangle(code, x):
    """Upper triangles of the KL matrices of X^x Z^z for every z, shape (2^n, T).

    With (E v)[b] = i^|x&z| (-1)^(z.(b^x)) v[b^x] = (-i)^|x&z| (-1)^(z.b) v[b^x],
    the whole z-family is one Walsh-Hadamard transform of conj(v_i[b]) v_j[b^x]
    over b.  Hermitian
    Paulis give Hermitian matrices, so the triangle i <= j suffices.
    """
    V = code.basis
    K, dim = V.shape
    rows, cols = np.triu_indices(K)
    idx = np.arange(dim)
    W = V.T.conj()[:, rows] * V.T[idx ^ x][:, cols]
    _fwht_rows(W)
    W *= ((-1j) ** (np.bitwise_count(idx & x).astype(np.int64) % 4))[:, None]
    return W, rows, cols


def kl_block(code, x):
    """Full KL matrices of X^x Z^z for every z, shape (2^n, K, K)."""
    W, rows, cols = _kl_triangle(code, x)
    M = np.zeros((W.shape[0], code.K, code.K), dtype=complex)
    M[:, rows, cols] = W
    M[:, cols, rows] = W.conj()
    return M


def kl_scan(code, tol=None):
    """Classify every non-identity Pauli by weight: scalar, and zero-scalar counts."""
    tol = code.tol if tol is None else tol
    n, K = code.n, code.K
    report = {w: {"total": 0, "scalar": 0, "zero": 0} for w in range(1, n + 1)}
    idx = np.arange(1 << n)
    for x in range(1 << n):
        W, rows, cols = _kl_triangle(code, x)
        diag = rows == cols
        lam = W[:, diag].real.mean(axis=1)
        res = np.abs(W - np.where(diag, 1.0, 0.0) * lam[:, None]).max(axis=1)
        scalar = res <= tol
        zero = scalar & (np.abs(lam) <= tol)
        weights = np.bitwise_count(idx | x).astype(np.int64)
        for w in range(1, n + 1):
            sel = weights == w
            row = report[w]
            row["total"] += int(sel.sum())
            row["scalar"] += int(scalar[sel].sum())
            row["zero"] += int(zero[sel].sum())
    return report


# -- partial traces and invariants ---------------------------------------

def _check_subset(qubits, n):
    qubits = list(qubits)
    if len(set(qubits)) != len(qubits) or any(not 0 <= q < n for q in qubits):
        raise ValueError(f"bad qubit subset {qubits} for n={n}")
    return sorted(qubits)


def partial_trace(op, keep, n=None):
    """Trace out every qubit not in ``keep``; result ordered by qubit index."""
    m = _as_matrix(op)
    n = _qubits(m.shape[0]) if n is None else n
    keep = _check_subset(keep, n)
    drop = [q for q in range(n) if q not in keep]
    t = m.reshape((2,) * (2 * n))
    t = t.transpose(keep + drop + [n + q for q in keep] + [n + q for q in drop])
    a, b = 1 << len(keep), 1 << len(drop)
    reduced = np.einsum("ajbj->ab", t.reshape(a, b, a, b))
    return HermitianOp(reduced, getattr(op, "tol", DEFAULT_TOL))


def _split_basis(code, subset):
    n = code.n
    rest = [q for q in range(n) if q not in subset]
    t = code.basis.reshape((code.K,) + (2,) * n).transpose([0] + [1 + q for q in subset + rest])
    return t.reshape(code.K, 1 << len(subset), 1 << len(rest))


def quartic_invariant(code, subset):
    """Haar average over unit v in the code of Tr(-[Tr_{S^c}(v v^dag) (x) I, P]^2).

    Uses E[vv^dag (x) vv^dag] = (P (x) P)(1 + SWAP) / (K(K+1)) and expands the
    integrand as a bilinear form in the two copies, so the average is exact.
    """
    subset = _check_subset(subset, code.n)
    K = code.K
    V = _split_basis(code, subset)
    T = np.einsum("iac,jbc->ijab", V, V.conj())  # Tr_{S^c} |v_i><v_j|
    PS = np.einsum("kkab->ab", T)
    G = np.einsum("ijab,lkba->ijkl", T, T)  # <v_k| T_ij (x) I |v_l>
    H = np.einsum("iikl->kl", G)
    first = np.einsum("ab,bc,ca->", PS, PS, PS) + np.einsum("jiab,ijbc,ca->", T, T, PS)
    second = np.einsum("kl,lk->", H, H) + np.einsum("jikl,ijlk->", G, G)
    value = 2 * (first - second) / (K * (K + 1))
    return float(value.real)


def quartic_invariants(code, size=2):
    return {S: quartic_invariant(code, S) for S in combinations(range(code.n), size)}


def pauli_coefficients(op):
    """Tr(E M) for every unphased Pauli E, as an array indexed [x, z]."""
    m = _as_matrix(op)
    n = _qubits(m.shape[0])
    check_dense(n)
    idx = np.arange(1 << n)
    # Tr(X^x Z^z M) = sum_c (-1)^(z.c) M[c, c^x]
    u = m[idx[None, :], idx[None, :] ^ idx[:, None]]
    w = _walsh_hadamard(u)
    ypow = np.bitwise_count(idx[:, None] & idx[None, :]) % 4
    return w * (1j**ypow)


def _walsh_hadamard(a):
    a = np.array(a, dtype=complex)
    rows, size = a.shape
    h = 1
    while h < size:
        b = a.reshape(rows, size // (2 * h), 2, h)
        a = np.stack((b[:, :, 0] + b[:, :, 1], b[:, :, 0] - b[:, :, 1]), axis=2).reshape(rows, size)
        h *= 2
    return a


def pauli_stabilizer(code, tol=1e-7):
    """Hermitian Paulis E (with sign) such that E P = P."""
    coeffs = pauli_coefficients(code)
    n, K = code.n, code.K
    out = []
    for x, z in zip(*np.nonzero(np.abs(np.abs(coeffs) - K) < tol * K)):
        c = coeffs[x, z]
        if abs(c.imag) > tol * K:
            continue
        out.append(Pauli(n, int(x), int(z), 0 if c.real > 0 else 2))
    return sorted(out, key=lambda p: (p.weight, p.x, p.z))


# -- Bell-basis canonicalization -----------------------------------------

def so3_to_su2(R):
    """Unitary U with U (v . sigma) U^dag = (R v) . sigma, det U = 1."""
    R = np.asarray(R, dtype=float)
    images = [I2] + [sum(R[b, a] * PAULI_MATRICES[b + 1] for b in range(3)) for a in range(3)]
    # sum_mu (U s_mu U^dag) A s_mu = 2 Tr(U^dag A) U; pick A with Tr(U^dag A) far from 0
    best = max(
        (sum(img @ A @ s for img, s in zip(images, PAULI_MATRICES)) for A in PAULI_MATRICES),
        key=np.linalg.norm,
    )
    U = best / np.sqrt(np.linalg.det(best))
    return U


def su2_to_so3(U):
    return np.array(
        [[0.5 * np.trace(PAULI_MATRICES[b + 1] @ U @ PAULI_MATRICES[a + 1] @ U.conj().T).real
          for a in range(3)] for b in range(3)]
    )


def _bloch_direction(M):
    """M = e^{i theta} (n . sigma) with n a real unit vector; return n."""
    c = np.array([0.5 * np.trace(s @ M) for s in PAULI_MATRICES[1:]])
    k = int(np.argmax(np.abs(c)))
    n = (c * abs(c[k]) / c[k]).real
    return n / np.linalg.norm(n)


def _is_maximally_entangled(w, tol):
    m = w.reshape(2, 2)
    rho1 = m @ m.conj().T
    rho2 = m.T @ m.conj()
    return max(np.max(np.abs(rho1 - I2 / 2)), np.max(np.abs(rho2 - I2 / 2))) <= tol


def canonicalize_bell_basis(states, tol=1e-8):
    """Local unitaries (U1, U2) taking four maximally entangled states to the Bell basis.

    Target i (up to phase): (|00>+|11>), (|01>+|10>), -i(|01>-|10>), (|00>-|11>),
    each over sqrt 2.  Each returned unitary has its first nonzero entry made
    positive real.
    """
    W = np.array([np.asarray(s, dtype=complex).reshape(4) for s in states])
    if W.shape != (4, 4):
        raise ValueError("need four two-qubit states")
    if np.max(np.abs(W.conj() @ W.T - np.eye(4))) > tol:
        raise ToleranceError("states are not orthonormal")
    for i, w in enumerate(W):
        if not _is_maximally_entangled(w, tol):
            raise ValueError(f"state {i} is not maximally entangled")
    M = [np.sqrt(2) * w.reshape(2, 2) for w in W]
    # (U1 (x) U2) w  <->  U1 M U2^T; U2 = conj(U1 M1) turns M1 into the identity
    frame = np.array([_bloch_direction(Mk @ M[0].conj().T) for Mk in M[1:]])
    if np.linalg.det(frame) < 0:
        frame[2] = -frame[2]
    U1 = so3_to_su2(frame)
    U2 = (U1 @ M[0]).conj()
    U2 = U2 / np.sqrt(np.linalg.det(U2))
    return _phase_fix(U1), _phase_fix(U2)


# -- ((4,4,2)) certificate -----------------------------------------------

class Certificate442(NamedTuple):
    unitaries: tuple
    residual: float
    projector: np.ndarray


def _embed(n, ops):
    """Tensor product with ``ops[q]`` on qubit q and identity elsewhere."""
    return local_operator([ops.get(q, I2) for q in range(n)])


def _real_nullspace(columns, tol):
    """Real coefficient vectors r with sum_k r_k columns[k] == 0."""
    A = np.array([np.concatenate([c.real.ravel(), c.imag.ravel()]) for c in columns]).T
    _, s, vt = np.linalg.svd(A)
    s = np.concatenate([s, np.zeros(vt.shape[0] - len(s))])
    return vt[s <= tol], s


def _pair_commutant_basis(P, tol):
    paulis2 = [np.kron(a, b) for a in PAULI_MATRICES for b in PAULI_MATRICES]
    cols = []
    for p in paulis2:
        full = np.kron(p, np.eye(4))
        cols.append(full @ P - P @ full)
    null, s = _real_nullspace(cols, tol)
    return [sum(r[k] * paulis2[k] for k in range(16)) for r in null], s


def _order_like_bell(vecs):
    """Greedily assign eigenvectors to the Bell targets by overlap."""
    remaining = list(range(4))
    order = []
    for target in BELL_TARGETS:
        k = max(remaining, key=lambda j: abs(target.conj() @ vecs[j]))
        remaining.remove(k)
        order.append(k)
    return [vecs[k] for k in order]


def _align_qubit(P, q, tol):
    """Unitary on qubit q making P commute with X_0 X_q and Z_0 Z_q."""
    n = 4
    dirs = []
    for anchor in (SX, SZ):
        cols = []
        for s in PAULI_MATRICES[1:]:
            op = _embed(n, {0: anchor, q: s})
            cols.append(op @ P - P @ op)
        null, s = _real_nullspace(cols, tol)
        if len(null) != 1:
            raise ToleranceError(
                f"qubit {q}: expected a one-dimensional solution, singular values {np.round(s, 9)}"
            )
        v = null[0] / np.linalg.norm(null[0])
        dirs.append(v * np.sign(v[np.argmax(np.abs(v))]))
    a, b = dirs
    if abs(a @ b) > tol:
        raise ToleranceError(f"qubit {q}: directions are not orthogonal ({a @ b:.3g})")
    R = np.array([a, np.cross(b, a), b])
    return so3_to_su2(R)


def certify_442(code, sep_tol=1e-6, residual_tol=1e-7, seed=0):
    """Local unitaries carrying a ((4,4,2)) onto a coset of the [[4,2,2]].

    Returns unitaries ``U`` such that (U_0 (x) ... (x) U_3) P (...)^dag is a
    combination of IIII, XXXX, YYYY, ZZZZ, plus the Frobenius norm of what is
    left over.
    """
    if code.n != 4 or code.K != 4:
        raise ValueError(f"need a ((4,4,2)), got n={code.n} K={code.K}")
    if not is_pure_distance_at_least(code, 2, tol=1e-7):
        raise ValueError("code is not pure of distance 2")
    P = code.projector()

    # pair (0,1): a generic element of the commutant splits C^2 (x) C^2 into lines
    algebra, s = _pair_commutant_basis(P, sep_tol)
    if len(algebra) != 4:
        raise ToleranceError(f"commutant of pair (0,1) has dimension {len(algebra)}, expected 4")
    rng = np.random.default_rng(seed)
    for _ in range(20):
        A = sum(c * m for c, m in zip(rng.normal(size=4), algebra))
        vals, vecs = np.linalg.eigh(A)
        if np.min(np.diff(vals)) > sep_tol:
            break
    else:
        raise ToleranceError("could not separate the eigenspaces of the pair commutant")
    U0, U1 = canonicalize_bell_basis(_order_like_bell(list(vecs.T)))
    unitaries = [U0, U1, I2, I2]
    L = local_operator(unitaries)
    P = L @ P @ L.conj().T
    for q in (2, 3):
        Uq = _align_qubit(P, q, sep_tol)
        Lq = _embed(4, {q: Uq})
        P = Lq @ P @ Lq.conj().T
        unitaries[q] = _phase_fix(Uq)
    coeffs = pauli_coefficients(P)
    allowed = [(0, 0), (15, 0), (15, 15), (0, 15)]
    leftover = coeffs.copy()
    for x, z in allowed:
        leftover[x, z] = 0
    residual = float(np.sqrt(np.sum(np.abs(leftover) ** 2) / 16))
    if residual > residual_tol:
        raise ToleranceError(f"certificate residual {residual:.3g} exceeds {residual_tol:g}")
    return Certificate442(tuple(unitaries), residual, P)


def stabilizer_words(code):
    """GF(4) words (as strings) of the Pauli stabilizer, signs dropped."""
    return [gf4.format_word(gf4.unpack(p.packed(), p.n)) for p in pauli_stabilizer(code)]
