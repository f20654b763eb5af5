"""Dimension bounds for distance-2 codes and the odd-length nonexistence chain."""

from dataclasses import dataclass
from fractions import Fraction

from .enumerators import Enumerator, complement_enumerator, macwilliams, shadow_zero


def singleton_bound(n, d):
    if not 1 <= d <= (n + 2) / 2:
        raise ValueError(f"d={d} out of range for n={n}")
    return 2 ** (n - 2 * (d - 1))


def distance2_bound_exact(n):
    """Rational bound on K for a ((n, K, 2)): 4^(m-1) for n = 2m, 4^(m-1)(2 - 1/m) for n = 2m+1."""
    if n < 2:
        raise ValueError("n must be at least 2")
    m = n // 2
    if n % 2 == 0:
        return Fraction(4 ** (m - 1))
    return 4 ** (m - 1) * (2 - Fraction(1, m))


def distance2_bound(n):
    bound = distance2_bound_exact(n)
    return bound.numerator // bound.denominator


def optimal_odd_enumerator(m):
    """K^2 (x^n + n/(n-2) x y^(n-1) + (2n-2)/(n-2) y^n) with K on the odd bound, n = 2m+1."""
    if m < 2:
        raise ValueError("m must be at least 2")
    n = 2 * m + 1
    K = distance2_bound_exact(n)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[0] = K * K
    coeffs[n - 1] = K * K * Fraction(n, n - 2)
    coeffs[n] = K * K * Fraction(2 * n - 2, n - 2)
    return Enumerator(n, K, "A", tuple(coeffs))


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    reasons: tuple

    def __bool__(self):
        return self.feasible


def feasibility_check(A, n, K, d):
    """Linear-programming constraints a ((n, K, d)) weight enumerator must meet."""
    K = Fraction(K)
    reasons = []
    if A.n != n:
        reasons.append(f"enumerator length {A.n} != n={n}")
        return Feasibility(False, tuple(reasons))
    B = macwilliams(A)
    S0 = shadow_zero(A)
    if A[0] != K * K:
        reasons.append(f"A_0 = {A[0]} != K^2 = {K * K}")
    if B[0] != K:
        reasons.append(f"B_0 = {B[0]} != K = {K}")
    for i in range(n + 1):
        if A[i] < 0:
            reasons.append(f"A_{i} = {A[i]} < 0")
        if B[i] < 0:
            reasons.append(f"B_{i} = {B[i]} < 0")
        if i < d and K * B[i] != A[i]:
            reasons.append(f"K*B_{i} = {K * B[i]} != A_{i} = {A[i]}")
        elif K * B[i] < A[i]:
            reasons.append(f"K*B_{i} = {K * B[i]} < A_{i} = {A[i]}")
    if S0 < 0:
        reasons.append(f"S_0 = {S0} < 0")
    return Feasibility(not reasons, tuple(reasons))


@dataclass(frozen=True)
class NonexistenceCertificate:
    i: int
    n: int
    K: Fraction
    forced: Enumerator
    traced: Enumerator
    complement: Enumerator
    complement_dual: Enumerator
    violated_index: int | None
    violated_value: Fraction | None

    @property
    def nonexistence(self):
        return self.violated_index is not None


def _forced_enumerator(n, K):
    """Solve A_0 = K^2, B_0 = K, K B_1 = A_1 with A_1..A_(n-2) = 0 for A_(n-1), A_n."""
    A0 = K * K
    # B_0 = 2^-n (A0 + a + b) = K ;  B_1 = 2^-n (3n A0 - (n-4) a - n b) = 0
    scale = 1 << n
    s = K * scale - A0          # a + b
    t = 3 * n * A0               # (n-4) a + n b
    a = (n * s - t) / 4
    b = s - a
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[0], coeffs[n - 1], coeffs[n] = A0, a, b
    return Enumerator(n, K, "A", tuple(coeffs))


def _trace_one_qubit(A):
    """Enumerator of 2 Tr_1(P) for a pure distance-2 code whose only nonzero
    coefficients sit at weights 0, n-1, n.

    Only the identity and weight n-1 = length of the traced code survive; the
    top coefficient follows from B_0 = K' of the traced code.
    """
    n1 = A.n - 1
    K1 = 2 * A.K
    top = K1 * (1 << n1) - K1 * K1
    coeffs = [Fraction(0)] * (n1 + 1)
    coeffs[0], coeffs[n1] = K1 * K1, top
    return Enumerator(n1, K1, "A", tuple(coeffs))


def theorem3_certificate(i):
    """Chain for n = 2^i + 1 at K on the odd bound; a negative dual coefficient
    of the traced complement rules the code out."""
    if i < 2:
        raise ValueError("i must be at least 2")
    n = 2**i + 1
    K = Fraction(2 ** (2**i - 1) - 2 ** (2**i - i - 1))
    forced = _forced_enumerator(n, K)
    traced = _trace_one_qubit(forced)
    comp = complement_enumerator(traced)
    dual = macwilliams(comp)
    bad = next(((j, c) for j, c in enumerate(dual.coeffs) if c < 0), (None, None))
    return NonexistenceCertificate(i, n, K, forced, traced, comp, dual, *bad)


def format_certificate(cert):
    lines = [
        f"i = {cert.i}: candidate (({cert.n},{cert.K},2))",
        f"forced enumerator:       {cert.forced.polynomial()}",
        f"traced (({cert.traced.n},{cert.traced.K},2)): {cert.traced.polynomial()}",
        f"complement (K={cert.complement.K}):   {cert.complement.polynomial()}",
        f"complement dual:         {cert.complement_dual.polynomial()}",
    ]
    if cert.nonexistence:
        lines.append(
            f"violated coefficient B[{cert.violated_index}] = {cert.violated_value}"
        )
        lines.append(f"violated coefficient {cert.violated_value} -> nonexistence")
    else:
        lines.append("no violation")
    return "\n".join(lines)


def certificate_record(cert):
    def coeffs(e):
        return [str(c) for c in e.coeffs]

    return {
        "i": cert.i,
        "n": cert.n,
        "K": str(cert.K),
        "forced": coeffs(cert.forced),
        "traced": coeffs(cert.traced),
        "complement": coeffs(cert.complement),
        "complement_dual": coeffs(cert.complement_dual),
        "violated_index": cert.violated_index,
        "violated_value": None if cert.violated_value is None else str(cert.violated_value),
        "verdict": "nonexistence" if cert.nonexistence else "no violation",
    }
