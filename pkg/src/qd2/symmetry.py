"""Symmetries of additive codes: the qubit-permutation and local S_3 action,
automorphism and equivalence search, and lifting to Clifford unitaries."""

from dataclasses import dataclass
from itertools import permutations
from typing import NamedTuple

import numpy as np

from . import gf2, gf4
from .config import DEFAULT_TOL, SizeLimitError, ToleranceError
from .gf4 import OMEGA, OMEGA_BAR, ONE, ZERO, Gf4AdditiveCode
from .pauli import Pauli, to_matrix
from .statecode import from_additive, local_operator, permutation_operator, so3_to_su2

NONZERO = (ONE, OMEGA, OMEGA_BAR)
S3 = tuple(
    (ZERO,) + tuple(img for _, img in sorted(zip(NONZERO, p), key=lambda t: t[0]))
    for p in permutations(NONZERO)
)
IDENTITY_LOCAL = (ZERO, OMEGA_BAR, OMEGA, ONE)

# Pauli label of each nonzero symbol: omega -> x, 1 -> y, omega bar -> z
_AXIS = {OMEGA: 0, ONE: 1, OMEGA_BAR: 2}
_SYMBOL_OF_AXIS = {v: k for k, v in _AXIS.items()}

SO3_TRANSPOSITIONS = {
    (1, 0, 2): np.array([[0, -1, 0], [-1, 0, 0], [0, 0, -1]]),
    (0, 2, 1): np.array([[-1, 0, 0], [0, 0, -1], [0, -1, 0]]),
}


def _so3_table():
    table = {(0, 1, 2): np.eye(3, dtype=int)}
    frontier = [(0, 1, 2)]
    while frontier:
        nxt = []
        for p in frontier:
            for t, mt in SO3_TRANSPOSITIONS.items():
                q = tuple(t[p[a]] for a in range(3))
                if q not in table:
                    table[q] = mt @ table[p]
                    nxt.append(q)
        frontier = nxt
    return table


SO3_IMAGES = _so3_table()


def axis_permutation(local):
    """The permutation of {x, y, z} induced by a local S_3 element."""
    return tuple(_AXIS[local[_SYMBOL_OF_AXIS[a]]] for a in range(3))


def so3_image(local):
    return SO3_IMAGES[axis_permutation(local)]


def local_unitary(local):
    return so3_to_su2(so3_image(local))


def parse_local(text):
    """``"1wW"`` lists the images of 1, omega, omega bar."""
    images = gf4.parse_word(text)
    if sorted(images) != sorted(NONZERO):
        raise ValueError(f"{text!r} is not a permutation of 1, w, W")
    table = [ZERO] * 4
    for src, img in zip(NONZERO, images):
        table[src] = img
    return tuple(table)


def format_local(local):
    return gf4.format_word(local[s] for s in NONZERO)


@dataclass(frozen=True)
class LocalSymmetry:
    """Word map u -> u' with u'[perm[i]] = locals[i](u[i])."""

    perm: tuple
    locals: tuple

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"{perm} is not a permutation")
        locs = tuple(parse_local(l) if isinstance(l, str) else tuple(l) for l in self.locals)
        if len(locs) != len(perm) or any(l not in S3 for l in locs):
            raise ValueError("need one S_3 element per qubit")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "locals", locs)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)), (IDENTITY_LOCAL,) * n)

    @property
    def n(self):
        return len(self.perm)

    def __mul__(self, other):
        """Composition: (self * other)(u) = self(other(u))."""
        if self.n != other.n:
            raise ValueError("length mismatch")
        perm = tuple(self.perm[other.perm[i]] for i in range(self.n))
        locs = tuple(
            tuple(self.locals[other.perm[i]][other.locals[i][s]] for s in range(4))
            for i in range(self.n)
        )
        return LocalSymmetry(perm, locs)

    def inverse(self):
        perm = [0] * self.n
        locs = [None] * self.n
        for i, p in enumerate(self.perm):
            perm[p] = i
            inv = [0] * 4
            for s in range(4):
                inv[self.locals[i][s]] = s
            locs[p] = tuple(inv)
        return LocalSymmetry(tuple(perm), tuple(locs))

    def is_identity(self):
        return self == LocalSymmetry.identity(self.n)

    def apply_word(self, word):
        word = gf4.parse_word(word)
        out = [ZERO] * self.n
        for i, s in enumerate(word):
            out[self.perm[i]] = self.locals[i][s]
        return tuple(out)

    def cycles(self):
        seen, out = set(), []
        for start in range(self.n):
            if start in seen:
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self.perm[i]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"
        return f"{cyc} [{' '.join(format_local(l) for l in self.locals)}]"

    def unitary(self):
        """Qubit permutation composed with the per-qubit SU(2) images of the local S_3 parts."""
        return permutation_operator(self.perm) @ local_operator([local_unitary(l) for l in self.locals])


def apply_symmetry(code, g):
    if code.n != g.n:
        raise ValueError(f"length mismatch: code {code.n}, symmetry {g.n}")
    return Gf4AdditiveCode(code.n, tuple(g.apply_word(w) for w in code.generators))


# -- backtracking search --------------------------------------------------

class SearchBudgetError(SizeLimitError):
    pass


def _profiles(code):
    """Per-coordinate invariant: sorted per-symbol counts of codewords by weight."""
    n = code.n
    counts = np.zeros((n, 4, n + 1), dtype=np.int64)
    for v in code.span_packed():
        word = gf4.unpack(v, n)
        w = sum(1 for s in word if s)
        for i, s in enumerate(word):
            counts[i, s, w] += 1
    return [tuple(sorted(tuple(counts[i, s]) for s in NONZERO)) for i in range(n)]


class _Searcher:
    """Finds maps c1 -> c2 coordinate by coordinate, pruning any partial map
    whose projected source code differs from the projected target code."""

    def __init__(self, c1, c2, budget):
        if c1.n != c2.n:
            raise ValueError(f"codes have different lengths {c1.n} and {c2.n}")
        self.n = c1.n
        self.g1 = [list(g) for g in c1.generators]
        self.g2 = [list(g) for g in c2.generators]
        self.ok = c1.rank == c2.rank
        p1, p2 = _profiles(c1), _profiles(c2)
        self.candidates = [[p for p in range(self.n) if p1[i] == p2[p]] for i in range(self.n)]
        self.budget = budget
        self.nodes = 0

    def _consistent(self, assignment):
        src = []
        for g in self.g1:
            v = 0
            for i, (p, loc) in enumerate(assignment):
                v = (v << 2) | loc[g[i]]
            src.append(v)
        dst = []
        for h in self.g2:
            v = 0
            for p, _ in assignment:
                v = (v << 2) | h[p]
            dst.append(v)
        basis = gf2.XorBasis(dst)
        return len(basis) == gf2.rank(src) and all(v in basis for v in src)

    def search(self, prefix=()):
        """Yield every completion of ``prefix`` (a list of (image, local) for coordinates 0..t-1)."""
        if not self.ok:
            return
        assignment = list(prefix)
        if not self._consistent(assignment):
            return
        yield from self._extend(assignment, {p for p, _ in assignment})

    def _extend(self, assignment, used):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetError(f"search exceeded {self.budget} nodes")
        i = len(assignment)
        if i == self.n:
            yield LocalSymmetry(tuple(p for p, _ in assignment), tuple(l for _, l in assignment))
            return
        for p in self.candidates[i]:
            if p in used:
                continue
            for loc in S3:
                assignment.append((p, loc))
                if self._consistent(assignment):
                    used.add(p)
                    yield from self._extend(assignment, used)
                    used.discard(p)
                assignment.pop()


class AutomorphismGroup(NamedTuple):
    order: int
    generators: list
    orbit_sizes: list


def additive_automorphism_group(code, max_n=8, budget=10**7):
    """Order and generators of the subgroup of S_n x| S_3^n fixing ``code``.

    Stabilizer chain, deepest level first: G_j fixes coordinates 0..j-1
    pointwise, and |G_j| = |orbit of (j, id) under G_j| * |G_(j+1)|.  The
    orbit is closed under the generators already known; a search runs only
    for (image, local) pairs the closure has not reached.
    """
    n = code.n
    if n > max_n:
        raise SizeLimitError(f"automorphism search limited to n <= {max_n}")
    searcher = _Searcher(code, code, budget)
    order, gens, orbits = 1, [], [0] * n
    for j in reversed(range(n)):
        prefix = [(i, IDENTITY_LOCAL) for i in range(j)]
        orbit = _pair_orbit((j, IDENTITY_LOCAL), gens)
        for p in searcher.candidates[j]:
            if p < j:
                continue
            for loc in S3:
                if (p, loc) in orbit:
                    continue
                found = next(searcher.search(prefix + [(p, loc)]), None)
                if found is not None:
                    gens.append(found)
                    orbit = _pair_orbit((j, IDENTITY_LOCAL), gens)
        orbits[j] = len(orbit)
        order *= len(orbit)
    return AutomorphismGroup(order, gens, orbits)


def _pair_orbit(start, gens):
    """Closure of a (coordinate, local) pair under g: (p, s) -> (g.perm[p], g.locals[p] s)."""
    seen, frontier = {start}, [start]
    while frontier:
        p, s = frontier.pop()
        for g in gens:
            loc = g.locals[p]
            q = (g.perm[p], tuple(loc[s[a]] for a in range(4)))
            if q not in seen:
                seen.add(q)
                frontier.append(q)
    return seen


def brute_force_automorphisms(code):
    """Every element of S_n x| S_3^n fixing the code, by exhaustive scan."""
    n = code.n
    out = []
    for perm in permutations(range(n)):
        for locs in _product_s3(n):
            g = LocalSymmetry(perm, locs)
            if apply_symmetry(code, g).same_span(code):
                out.append(g)
    return out


def _product_s3(n):
    if n == 0:
        yield ()
        return
    for rest in _product_s3(n - 1):
        for loc in S3:
            yield rest + (loc,)


def orbit_of_qubit(generators, n, start=0):
    orbit, frontier = {start}, [start]
    while frontier:
        q = frontier.pop()
        for g in generators:
            r = g.perm[q]
            if r not in orbit:
                orbit.add(r)
                frontier.append(r)
    return orbit


def is_qubit_transitive(group, n):
    return len(orbit_of_qubit(group.generators, n)) == n


def are_equivalent_additive(c1, c2, budget=10**7):
    """A LocalSymmetry mapping c1 onto c2, or None."""
    if c1.n != c2.n:
        raise ValueError(f"codes have different lengths {c1.n} and {c2.n}")
    if gf4.weight_distribution(c1) != gf4.weight_distribution(c2):
        return None
    return next(_Searcher(c1, c2, budget).search(), None)


# -- Clifford lifting -----------------------------------------------------

def clifford_lift(code, g, tol=DEFAULT_TOL):
    """Pauli e with e phi(P) e^dag = P, phi the unitary realizing ``g``."""
    lift, residual = lift_with_residual(code, g)
    if residual > tol:
        raise ToleranceError(f"lift residual {residual:.3g} exceeds {tol:g}")
    return lift


def lift_with_residual(code, g):
    """The fix-up Pauli and max |e phi(P) e^dag - P| on the state realization."""
    if not apply_symmetry(code, g).same_span(code):
        raise ValueError("symmetry does not fix the code")
    n = code.n
    state = from_additive(code)
    P = state.projector()
    phi = g.unitary()
    Pg = phi @ P @ phi.conj().T
    mask = (1 << n) - 1
    rows, rhs = [], []
    for w in code.canonical_packed:
        E = Pauli(n, w >> n, w & mask)
        M = to_matrix(E)
        s0 = np.trace(M @ P).real / state.K
        s1 = np.trace(M @ Pg).real / state.K
        if abs(abs(s1) - 1) > 1e-7:
            raise ToleranceError("image of the stabilizer is not a stabilizer")
        rows.append(((w & mask) << n) | (w >> n))
        rhs.append(int(np.sign(s0) != np.sign(s1)))
    e = gf2.solve(rows, rhs, 2 * n)
    lift = Pauli(n, e >> n, e & mask)
    return lift, lift_residual(P, Pg, lift)


def lift_residual(P, Pg, e):
    E = to_matrix(e)
    return float(np.max(np.abs(E @ Pg @ E.conj().T - P)))


def local_automorphism_residual(state, unitaries, perm=None):
    """max |phi P phi^dag - P| for phi = (permutation) * (tensor of unitaries)."""
    U = local_operator(unitaries)
    if perm is not None:
        U = permutation_operator(perm) @ U
    P = state.projector()
    return float(np.max(np.abs(U @ P @ U.conj().T - P)))


def is_monomial(R, tol=1e-9):
    """Every row and column of R has exactly one entry away from zero."""
    nz = np.abs(np.asarray(R)) > tol
    return bool(np.all(nz.sum(axis=0) == 1) and np.all(nz.sum(axis=1) == 1))


# -- GF(4)-linear equivalences are Clifford ------------------------------

class Corollary14Report(NamedTuple):
    distance_one: bool
    weight_two: list
    uncovered: list
    minimal_supports: list

    @property
    def applies(self):
        return not self.distance_one and not self.weight_two and not self.uncovered


def corollary14_preconditions(code):
    """Checks under which every equivalence of a GF(4)-linear code is Clifford."""
    if not gf4.is_gf4_linear(code):
        raise ValueError("code is not GF(4)-linear")
    params = gf4.quantum_parameters(code)
    supports = sorted(gf4.minimal_supports(code), key=lambda s: (len(s), sorted(s)))
    covered = set().union(*(s for s in supports if len(s) >= 4)) if supports else set()
    return Corollary14Report(
        distance_one=params.d == 1,
        weight_two=[gf4.format_word(w) for w in gf4.weight_two_codewords(code)],
        uncovered=[q for q in range(code.n) if q not in covered],
        minimal_supports=supports,
    )
