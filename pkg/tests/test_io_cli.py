import io as _io
import json
import subprocess
import sys
from importlib.resources import files
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qd2 import catalog, io
from qd2.cli import run
from qd2.config import ToleranceError
from qd2.constructions import nonadditive_6_16_2
from qd2.gf4 import Gf4AdditiveCode
from qd2.statecode import StateCode

GOLDEN = Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "cases.json").read_text())
DATA = str(files("qd2").joinpath("data"))


def cli(*argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


# -- file formats -----------------------------------------------------------

@pytest.mark.parametrize("name", io.shipped_files())
def test_shipped_files_round_trip(name):
    text = files("qd2").joinpath("data", name).read_text()
    assert io.dumps(io.parse(text)) == text


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.text("01wW", min_size=n, max_size=n), min_size=1, max_size=4)))
def test_additive_round_trip(rows):
    code = Gf4AdditiveCode.from_strings(rows)
    if code.rank == 0:
        return
    text = io.dumps(code)
    again = io.parse(text)
    assert again.generators == code.generators
    assert io.dumps(again) == text


@given(st.integers(0, 2**31))
@settings(max_examples=20, deadline=None)
def test_state_round_trip(seed):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    q, _ = np.linalg.qr(z)
    code = StateCode(q.T[:3])
    text = io.dumps(code)
    assert io.dumps(io.parse(text)) == text


def test_comments_and_blank_lines():
    text = "# header\nadditive n=2  # two qubits\n\n1 1\nw w # second\n"
    code = io.parse(text)
    assert code.same_span(catalog.even_optimal(1))


@pytest.mark.parametrize("text, line", [
    ("additive n=3\n1 1 0\n1 1 x\n", 3),
    ("additive n=3\n1 1\n", 2),
    ("codes n=3\n", 1),
    ("\n\nstate n=1 K=1\n1:0,0\n", 4),
    ("state n=1 K=2\n1:0,0:0\n", 1),
    ("additive n=2\n1 1\n1 1\n", 3),
    ("", 1),
])
def test_format_errors_carry_line_numbers(text, line):
    with pytest.raises(io.FormatError) as info:
        io.parse(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"{line}:")


def test_gram_tolerance(tmp_path):
    s = nonadditive_6_16_2()
    b = s.basis.copy()
    b[0] = b[0] * (1 + 1e-3)
    bad = tmp_path / "bad.qc"
    bad.write_text(_raw_state(b))
    with pytest.raises(ToleranceError):
        io.load(bad)
    fixed = io.load(bad, gram_tol=1e-2)
    np.testing.assert_allclose(fixed.basis.conj() @ fixed.basis.T, np.eye(16), atol=1e-12)
    code, _, err = cli("distance", bad)
    assert code == 3 and "tolerance" in err
    code, out, _ = cli("distance", "--gram-tol", "1e-2", bad)
    assert code == 0 and out == "n=6 K=16 d=2 pure=true\n"


def _raw_state(basis):
    K, dim = basis.shape
    n = dim.bit_length() - 1
    lines = [f"state n={n} K={K}"]
    lines += [",".join(f"{float(a.real)!r}:{float(a.imag)!r}" for a in row) for row in basis]
    return "\n".join(lines) + "\n"


def test_small_deviation_repaired():
    b = nonadditive_6_16_2().basis.copy()
    b[1] += 1e-11 * b[2]
    code = io.parse(_raw_state(b))
    np.testing.assert_allclose(code.basis.conj() @ code.basis.T, np.eye(16), atol=1e-14)


def test_load_reports_path(tmp_path):
    f = tmp_path / "x.qc"
    f.write_text("additive n=2\n1 q\n")
    with pytest.raises(io.FormatError, match="x.qc:2:"):
        io.load(f)


def test_load_shipped():
    assert io.load_shipped("hexacode").same_span(catalog.hexacode())


# -- command line -----------------------------------------------------------

@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    argv = [a.replace("{data}", DATA) for a in CASES[name]]
    code, out, _ = cli(*argv)
    assert f"exit {code}\n{out}" == (GOLDEN / f"{name}.txt").read_text()


def test_construct_then_distance(tmp_path):
    f = tmp_path / "c.qc"
    assert cli("construct", "--family", "even-optimal", "--m", "3", "-o", f)[0] == 0
    code, out, _ = cli("distance", f)
    assert (code, out) == (0, "n=6 K=16 d=2 pure=true\n")


def test_bound_n5():
    assert cli("bound", "--n", "5")[1] == "K <= 6 (exact 6)\n"


def test_nonexist_i3_ends_with_verdict():
    code, out, _ = cli("nonexist", "--i", "3")
    assert code == 0
    assert out.rstrip().endswith("violated coefficient -128 -> nonexistence")


def test_extend_chain(tmp_path):
    a, b = tmp_path / "a.qc", tmp_path / "b.qc"
    assert cli("construct", "--family", "three-0-2", "-o", a)[0] == 0
    assert cli("extend", a, "-o", b)[0] == 0
    assert cli("distance", b)[1] == "n=5 K=4 d=2 pure=true\n"
    c = tmp_path / "c.qc"
    assert cli("construct", "--family", "extend", "--input", a, "-o", c)[0] == 0
    assert c.read_text() == b.read_text()


def test_construct_extend_family(tmp_path):
    f = tmp_path / "e.qc"
    assert cli("construct", "--family", "extend", "--m", "4", "-o", f)[0] == 0
    code = io.load(f)
    assert (code.n, code.K) == (8, 64)


def test_certify_bell_extension(tmp_path):
    bell, ext = tmp_path / "bell.qc", tmp_path / "ext.qc"
    assert cli("construct", "--family", "even-optimal", "--m", "1", "-o", bell)[0] == 0
    assert cli("extend", bell, "-o", ext)[0] == 0
    code, out, _ = cli("certify", "--json", ext)
    assert code == 0 and json.loads(out)["residual"] < 1e-7
    code, _, err = cli("certify", bell)
    assert code == 2 and "((4,4,2))" in err


@pytest.mark.parametrize("argv", [
    ["bound", "--n", "5", "--json"],
    ["nonexist", "--i", "3", "--json"],
    ["distance", "--json", f"{DATA}/hexacode.qc"],
    ["enum", "--json", f"{DATA}/even_optimal_2.qc"],
    ["invariants", "--json", f"{DATA}/three_0_2.qc"],
    ["aut", "--json", f"{DATA}/even_optimal_1.qc"],
    ["equiv", "--json", f"{DATA}/hexacode.qc", f"{DATA}/even_optimal_3.qc"],
    ["construct", "--json", "--family", "three-0-2"],
])
def test_json_is_single_object(argv):
    _, out, _ = cli(*argv)
    assert out.count("\n") == 1
    assert isinstance(json.loads(out), dict)


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["bound"],
    ["construct", "--family", "even-optimal"],
    ["distance", "/nonexistent/file.qc"],
    ["aut", f"{DATA}/coset_6_16_2.qc"],
])
def test_usage_errors(argv):
    assert cli(*argv)[0] == 2


def test_malformed_file_exit(tmp_path):
    f = tmp_path / "m.qc"
    f.write_text("additive n=2\n1 1\nw\n")
    code, _, err = cli("distance", f)
    assert code == 2 and ":3:" in err


def test_threads_flag():
    assert cli("bound", "--n", "9", "--threads", "1")[1] == "K <= 112 (exact 112)\n"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "qd2", "bound", "--n", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "K <= 1 (exact 1)\n"


@pytest.mark.parametrize("qubits", ["9", "x", "0,0", "0,1,2,3,4,5", ""])
def test_bad_trace_out(qubits):
    code, _, err = cli("distance", "--trace-out", qubits, f"{DATA}/hexacode.qc")
    assert code == 2 and "--trace-out" in err


def test_trace_out_pair_gives_442():
    code, out, _ = cli("distance", "--trace-out", "1,4", f"{DATA}/hexacode.qc")
    assert (code, out) == (0, "n=4 K=4 d=2 pure=true\n")
    code, out, _ = cli("certify", "--json", "--trace-out", "1,4", f"{DATA}/hexacode.qc")
    assert code == 0 and json.loads(out)["residual"] < 1e-7


def test_scan_json_counts():
    code, out, _ = cli("distance", "--scan", "--json", f"{DATA}/even_optimal_1.qc")
    rec = json.loads(out)
    assert code == 0 and rec["d"] == 2
    assert rec["scan"]["1"] == {"scalar": 6, "total": 6, "zero": 6}


def test_aut_lift_names_paulis():
    code, out, _ = cli("aut", "--lift", "--json", f"{DATA}/even_optimal_1.qc")
    rec = json.loads(out)
    assert code == 0 and rec["order"] == 12
    assert sorted(g["lift"] for g in rec["generators"]) == ["II", "II", "ZI"]
    assert rec["worst_residual"] < 1e-9
