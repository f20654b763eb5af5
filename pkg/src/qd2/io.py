"""Text formats for additive codes and state codes.

Additive::

    additive n=4
    1 1 1 1
    w w w w

State (one line per basis vector, amplitudes ``re:im`` in basis order)::

    state n=2 K=1
    0.7071067811865475:0.0,0.0:0.0,0.0:0.0,0.7071067811865475:0.0
"""

import re
from pathlib import Path

import numpy as np

from . import gf4
from .config import DEFAULT_TOL, ToleranceError
from .gf4 import Gf4AdditiveCode
from .statecode import StateCode

EXACT_GRAM = 1e-12

_ADDITIVE = re.compile(r"additive\s+n=(\d+)$")
_STATE = re.compile(r"state\s+n=(\d+)\s+K=(\d+)$")


class FormatError(ValueError):
    def __init__(self, message, line=None, path=None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.message = message
        self.line = line


def _content_lines(text):
    """(line number, stripped content) with comments and blank lines removed."""
    for num, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield num, body


def parse(text, gram_tol=DEFAULT_TOL):
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("empty file", 1)
    num, head = lines[0]
    if _ADDITIVE.match(head):
        return _parse_additive(lines)
    if _STATE.match(head):
        return _parse_state(lines, gram_tol)
    raise FormatError(f"unknown header {head!r}; expected 'additive n=<int>' or 'state n=<int> K=<int>'", num)


def _parse_additive(lines):
    num, head = lines[0]
    n = int(_ADDITIVE.match(head).group(1))
    gens = []
    for num, body in lines[1:]:
        fields = body.split()
        if len(fields) != n:
            raise FormatError(f"expected {n} symbols, found {len(fields)}", num)
        try:
            gens.append(gf4.parse_word(" ".join(fields)))
        except (ValueError, KeyError):
            bad = next(f for f in fields if f not in gf4.SYMBOLS)
            raise FormatError(f"bad symbol {bad!r}; use 0, 1, w, W", num) from None
    if not gens:
        raise FormatError("no generators", num)
    basis = []
    for row, (num, _) in zip(gens, lines[1:]):
        v = gf4.pack(row)
        if v == 0 or _in_span(basis, v):
            raise FormatError("generator is dependent on the previous ones", num)
        basis.append(v)
    return Gf4AdditiveCode(n, tuple(gens))


def _in_span(basis, v):
    from .gf2 import XorBasis

    return v in XorBasis(basis)


def _parse_amplitude(tok, num):
    try:
        re_, im = tok.split(":")
        return complex(float(re_), float(im))
    except ValueError:
        raise FormatError(f"bad amplitude {tok!r}; expected re:im", num) from None


def _parse_state(lines, gram_tol):
    num, head = lines[0]
    m = _STATE.match(head)
    n, K = int(m.group(1)), int(m.group(2))
    rows = lines[1:]
    if len(rows) != K:
        raise FormatError(f"header declares K={K} but {len(rows)} vectors follow", num)
    dim = 1 << n
    basis = np.zeros((K, dim), dtype=complex)
    for r, (num, body) in enumerate(rows):
        toks = body.split(",")
        if len(toks) != dim:
            raise FormatError(f"expected {dim} amplitudes, found {len(toks)}", num)
        basis[r] = [_parse_amplitude(t.strip(), num) for t in toks]
    return StateCode(orthonormalize(basis, gram_tol))


def orthonormalize(basis, gram_tol=DEFAULT_TOL):
    """Leave a basis with Gram deviation <= 1e-12 as is, symmetrically
    orthonormalize one within ``gram_tol``, and reject anything worse."""
    gram = basis.conj() @ basis.T
    dev = float(np.max(np.abs(gram - np.eye(len(basis)))))
    if dev <= EXACT_GRAM:
        return basis
    if dev > gram_tol:
        raise ToleranceError(f"Gram deviation {dev:.3g} exceeds --gram-tol {gram_tol:g}")
    w, V = np.linalg.eigh(gram)
    inv_sqrt = (V / np.sqrt(w)) @ V.conj().T
    # rows transform with the transpose of G^(-1/2)
    return inv_sqrt.T @ basis


def load(path, gram_tol=DEFAULT_TOL):
    path = Path(path)
    try:
        return parse(path.read_text(), gram_tol)
    except FormatError as exc:
        raise FormatError(exc.message, exc.line, path) from None


def format_additive(code):
    lines = [f"additive n={code.n}"]
    lines += [gf4.format_word(g, sep=" ") for g in code.generators]
    return "\n".join(lines) + "\n"


def format_state(code):
    lines = [f"state n={code.n} K={code.K}"]
    for row in code.basis:
        lines.append(",".join(f"{float(a.real)!r}:{float(a.imag)!r}" for a in row))
    return "\n".join(lines) + "\n"


def dumps(code):
    if isinstance(code, Gf4AdditiveCode):
        return format_additive(code)
    if isinstance(code, StateCode):
        return format_state(code)
    raise TypeError(f"cannot serialize {type(code).__name__}")


def save(code, path):
    Path(path).write_text(dumps(code))


def shipped_files():
    """Names of the catalog files bundled with the package."""
    from importlib.resources import files

    return sorted(p.name for p in files("qd2").joinpath("data").iterdir() if p.name.endswith(".qc"))


def load_shipped(name, gram_tol=DEFAULT_TOL):
    from importlib.resources import files

    if not name.endswith(".qc"):
        name += ".qc"
    return parse(files("qd2").joinpath("data", name).read_text(), gram_tol)
