"""``qd2`` command line: construct, verify and analyze small quantum codes.

Exit codes: 0 success, 1 negative verdict, 2 usage or input error,
3 numerical tolerance failure.
"""

import argparse
import json
import sys
from contextlib import nullcontext
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import bounds, catalog, constructions, enumerators, gf4, io, symmetry
from .config import DEFAULT_TOL, SizeLimitError, ToleranceError
from .gf4 import Gf4AdditiveCode
from .statecode import (
    certify_442, from_additive, from_projector, kl_scan, minimum_distance, partial_trace,
    quartic_invariant,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_TOLERANCE = 0, 1, 2, 3

FAMILIES = ("even-optimal", "extend", "coset-6-16-2", "hexacode", "hamming-5-1-3", "three-0-2")


@dataclass(frozen=True)
class Settings:
    json: bool = False
    threads: int | None = None
    gram_tol: float = DEFAULT_TOL


class Output:
    """Collects text lines and a JSON record; emits one of them."""

    def __init__(self, settings, stream):
        self.settings = settings
        self.stream = stream
        self.lines = []
        self.record = {}

    def line(self, text=""):
        self.lines.append(text)

    def flush(self):
        if self.settings.json:
            self.stream.write(json.dumps(self.record, sort_keys=True) + "\n")
        elif self.lines:
            self.stream.write("\n".join(self.lines) + "\n")


def _load(path, settings, trace_out=None):
    code = io.load(path, settings.gram_tol)
    if trace_out is not None:
        code = _trace_out(_as_state(code), trace_out)
    return code


def _trace_out(state, qubits):
    """Code whose projector is 2^|T| Tr_T(P); must itself be a projector."""
    try:
        listed = [int(q) for q in qubits.split(",")]
    except ValueError:
        listed = []
    drop = sorted(set(listed))
    keep = [q for q in range(state.n) if q not in drop]
    if not listed or len(drop) != len(listed) or len(keep) + len(drop) != state.n or not keep:
        raise ValueError(f"bad --trace-out {qubits!r} for n={state.n}")
    R = (1 << len(drop)) * partial_trace(state.projector(), keep).matrix
    return from_projector(R)


def _as_state(code):
    return from_additive(code) if isinstance(code, Gf4AdditiveCode) else code


def _require_additive(code, command):
    if not isinstance(code, Gf4AdditiveCode):
        raise ValueError(f"{command} needs an additive code file")
    return code


def _emit_code(code, args, out):
    text = io.dumps(code)
    kind = "additive" if isinstance(code, Gf4AdditiveCode) else "state"
    K = 1 << (code.n - code.rank) if kind == "additive" else code.K
    out.record.update(kind=kind, n=code.n, K=K)
    if args.output:
        io.save(code, args.output)
        out.record["path"] = args.output
        out.line(f"wrote {kind} code n={code.n} K={K} to {args.output}")
    elif out.settings.json:
        out.record["text"] = text
    else:
        out.lines.append(text.rstrip("\n"))


# -- commands -------------------------------------------------------------

def cmd_construct(args, out):
    fam = args.family
    if fam == "even-optimal":
        if args.m is None:
            raise ValueError("--m is required for even-optimal")
        code = catalog.even_optimal(args.m)
    elif fam == "extend":
        if args.input:
            code = constructions.extend_by_two(_as_state(_load(args.input, out.settings)))
        else:
            code = constructions.nonadditive_even(args.m if args.m is not None else 3)
    elif fam == "coset-6-16-2":
        code = constructions.nonadditive_6_16_2()
    elif fam == "hexacode":
        code = catalog.hexacode()
    elif fam == "hamming-5-1-3":
        code = catalog.hamming_5_1_3()
    else:
        code = catalog.three_0_2()
    _emit_code(code, args, out)
    return EXIT_OK


def cmd_extend(args, out):
    code = _as_state(_load(args.file, out.settings))
    for _ in range(args.times):
        code = constructions.extend_by_two(code)
    _emit_code(code, args, out)
    return EXIT_OK


def cmd_distance(args, out):
    code = _load(args.file, out.settings, args.trace_out)
    if args.scan:
        return _distance_scan(_as_state(code), out)
    if isinstance(code, Gf4AdditiveCode) and not args.kl:
        p = gf4.quantum_parameters(code)
        n, K, d, pure = p.n, 1 << p.k, p.d, p.pure
    else:
        state = _as_state(code)
        dist = minimum_distance(state, max_weight=args.max_weight)
        n, K, d, pure = state.n, state.K, dist.d, dist.pure
    out.record.update(n=n, K=K, d=d, pure=bool(pure))
    out.line(f"n={n} K={K} d={d} pure={str(bool(pure)).lower()}")
    return EXIT_OK


def _distance_scan(state, out):
    """Full Knill-Laflamme scan: counts per weight, then the distance it implies."""
    report = kl_scan(state)
    d, pure = state.n + 1, True
    for w in range(1, state.n + 1):
        row = report[w]
        detected = row["zero"] < row["total"] if state.K == 1 else row["scalar"] < row["total"]
        if detected:
            d = w
            break
        pure = pure and row["zero"] == row["total"]
    out.record.update(n=state.n, K=state.K, d=d, pure=pure,
                      scan={str(w): r for w, r in report.items()})
    for w, r in report.items():
        out.line(f"weight {w}: {r['total']} errors, {r['scalar']} scalar, {r['zero']} zero")
    out.line(f"n={state.n} K={state.K} d={d} pure={str(pure).lower()}")
    return EXIT_OK


def cmd_enum(args, out):
    code = _load(args.file, out.settings, args.trace_out)
    if isinstance(code, Gf4AdditiveCode):
        A, B = enumerators.additive_enumerators(code)
    else:
        A = enumerators.weight_enumerator(code.projector())
        B = enumerators.dual_enumerator(code)
    S0 = enumerators.shadow_zero(A) if A.is_exact else None
    out.record.update(enumerators.enumerator_record(A, B, S0))
    out.line(enumerators.format_enumerators(A, B, S0))
    return EXIT_OK


def cmd_bound(args, out):
    exact = bounds.distance2_bound_exact(args.n)
    floor = bounds.distance2_bound(args.n)
    out.record.update(n=args.n, bound=floor, exact=str(exact))
    out.line(f"K <= {floor} (exact {exact})")
    return EXIT_OK


def cmd_nonexist(args, out):
    cert = bounds.theorem3_certificate(args.i)
    out.record.update(bounds.certificate_record(cert))
    out.line(bounds.format_certificate(cert))
    return EXIT_OK


def cmd_invariants(args, out):
    state = _as_state(_load(args.file, out.settings, args.trace_out))
    values = {}
    for subset in combinations(range(state.n), args.size):
        values[subset] = quartic_invariant(state, subset)
    out.record["invariants"] = [{"subset": list(s), "value": v} for s, v in values.items()]
    for s, v in values.items():
        out.line(f"{{{','.join(map(str, s))}}} = {v:.12f}")
    return EXIT_OK


def cmd_aut(args, out):
    code = _require_additive(_load(args.file, out.settings), "aut")
    group = symmetry.additive_automorphism_group(code, max_n=args.max_n)
    transitive = symmetry.is_qubit_transitive(group, code.n)
    out.record.update(
        order=group.order,
        orbit_sizes=group.orbit_sizes,
        transitive=transitive,
        generators=[_symmetry_record(g) for g in group.generators],
    )
    out.line(f"order = {group.order}")
    out.line(f"orbit sizes = {' '.join(map(str, group.orbit_sizes))}")
    out.line(f"qubit-transitive = {str(transitive).lower()}")
    out.line(f"generators ({len(group.generators)}):")
    if not args.lift:
        out.lines += [f"  {g}" for g in group.generators]
        return EXIT_OK
    worst = 0.0
    for g, rec in zip(group.generators, out.record["generators"]):
        e, residual = symmetry.lift_with_residual(code, g)
        worst = max(worst, residual)
        rec.update(lift=str(e), residual=residual)
        out.line(f"  {g}  lift {e}  residual {residual:.1e}")
    out.record["worst_residual"] = worst
    if worst > DEFAULT_TOL:
        raise ToleranceError(f"lift residual {worst:.3g} exceeds {DEFAULT_TOL:g}")
    return EXIT_OK


def _symmetry_record(g):
    return {"perm": list(g.perm), "locals": [symmetry.format_local(l) for l in g.locals], "text": str(g)}


def cmd_equiv(args, out):
    c1 = _require_additive(_load(args.a, out.settings), "equiv")
    c2 = _require_additive(_load(args.b, out.settings), "equiv")
    g = symmetry.are_equivalent_additive(c1, c2)
    out.record["equivalent"] = g is not None
    if g is None:
        out.line("none")
        return EXIT_NEGATIVE
    out.record["witness"] = _symmetry_record(g)
    out.line(str(g))
    return EXIT_OK


def cmd_certify(args, out):
    state = _as_state(_load(args.file, out.settings, args.trace_out))
    cert = certify_442(state, residual_tol=args.residual_tol)
    out.record.update(
        residual=cert.residual,
        unitaries=[[[[z.real, z.imag] for z in row] for row in U] for U in cert.unitaries],
    )
    out.line(f"residual = {cert.residual:.3e}")
    for q, U in enumerate(cert.unitaries):
        out.line(f"U{q} = {_fmt_matrix(U)}")
    out.line("certified: locally equivalent to a [[4,2,2]] coset")
    return EXIT_OK


def _fmt_matrix(U):
    def z(c):
        # round first so tiny negatives do not print as -0.000000
        re_, im = round(c.real, 6) + 0.0, round(c.imag, 6) + 0.0
        return f"{re_:+.6f}{im:+.6f}j"

    return "[" + "; ".join(" ".join(z(c) for c in row) for row in np.asarray(U)) + "]"


# -- parser ---------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object")
    common.add_argument("--threads", type=int, default=None, help="cap BLAS threads")
    common.add_argument("--gram-tol", type=float, default=DEFAULT_TOL,
                        help="largest Gram deviation repaired when loading state files")

    traced = argparse.ArgumentParser(add_help=False)
    traced.add_argument("--trace-out", metavar="QUBITS",
                        help="comma-separated qubits to trace out; the result is rescaled to a projector")

    parser = argparse.ArgumentParser(prog="qd2", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a named code")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--m", type=int)
    p.add_argument("--input", help="state or additive file to extend (family extend)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("extend", parents=[common], help="add two qubits, multiplying K by 4")
    p.add_argument("file")
    p.add_argument("--times", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("distance", parents=[common, traced], help="minimum distance and purity")
    p.add_argument("file")
    p.add_argument("--kl", action="store_true", help="use the Knill-Laflamme scan for additive codes too")
    p.add_argument("--scan", action="store_true", help="classify all 4^n Paulis (full Knill-Laflamme scan)")
    p.add_argument("--max-weight", type=int)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("enum", parents=[common, traced], help="weight, dual and shadow-zero enumerators")
    p.add_argument("file")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("bound", parents=[common], help="upper bound on K for distance 2")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("nonexist", parents=[common], help="nonexistence certificate at n = 2^i + 1")
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(func=cmd_nonexist)

    p = sub.add_parser("invariants", parents=[common, traced], help="quartic local-unitary invariants")
    p.add_argument("file")
    p.add_argument("--size", type=int, default=2)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("aut", parents=[common], help="automorphism group of an additive code")
    p.add_argument("file")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--lift", action="store_true", help="lift each generator to a Clifford unitary and report residuals")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("equiv", parents=[common], help="equivalence witness for two additive codes")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("certify", parents=[common, traced], help="local-unitary certificate for a ((4,4,2))")
    p.add_argument("file")
    p.add_argument("--residual-tol", type=float, default=1e-7)
    p.set_defaults(func=cmd_certify)
    return parser


def _thread_limit(threads):
    if threads is None:
        return nullcontext()
    from threadpoolctl import threadpool_limits

    return threadpool_limits(limits=threads)


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    settings = Settings(json=args.json, threads=args.threads, gram_tol=args.gram_tol)
    out = Output(settings, stdout)
    try:
        with _thread_limit(settings.threads):
            code = args.func(args, out)
    except ToleranceError as exc:
        stderr.write(f"qd2: tolerance failure: {exc}\n")
        return EXIT_TOLERANCE
    except (io.FormatError, SizeLimitError, ValueError, OSError) as exc:
        stderr.write(f"qd2: error: {exc}\n")
        return EXIT_USAGE
    out.flush()
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
