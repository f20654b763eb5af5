"""Run the command-line invocations behind each acceptance criterion and echo
their output, then run the acceptance checks themselves.

    python3 scripts/reproduce_all.py
"""

import runpy
import shlex
import sys
import tempfile
from importlib.resources import files
from pathlib import Path

from qd2.cli import run

DATA = str(files("qd2").joinpath("data"))
ROOT = Path(__file__).resolve().parents[1]


def commands(tmp):
    yield 1, [f"distance --scan {DATA}/even_optimal_{m}.qc" for m in range(1, 5)]
    yield 2, [f"bound --n {n}" for n in range(3, 10)]
    yield 3, [f"nonexist --i {i}" for i in range(2, 6)]
    yield 4, [f"distance --scan {DATA}/coset_6_16_2.qc",
              f"invariants {DATA}/coset_6_16_2.qc",
              f"invariants {DATA}/even_optimal_3.qc"]
    yield 5, [f"invariants {DATA}/even_optimal_2.qc"]
    yield 6, [f"distance --kl {DATA}/hexacode.qc",
              f"distance --trace-out 0 {DATA}/hexacode.qc",
              f"certify --trace-out 0,1 {DATA}/hexacode.qc",
              f"certify --trace-out 2,5 {DATA}/hexacode.qc"]
    yield 7, [f"construct --family extend --input {DATA}/even_optimal_1.qc -o {tmp}/bell4.qc",
              f"enum {tmp}/bell4.qc",
              f"construct --family extend --input {DATA}/three_0_2.qc -o {tmp}/five.qc",
              f"distance {tmp}/five.qc"]
    yield 8, [f"enum {DATA}/{name}" for name in sorted(p.name for p in Path(DATA).glob("*.qc"))]
    yield 9, [f"aut --lift {DATA}/even_optimal_2.qc", f"aut --lift {DATA}/hexacode.qc"]


def main():
    status = 0
    with tempfile.TemporaryDirectory() as tmp:
        for crit, lines in commands(tmp):
            print(f"== criterion {crit}")
            for line in lines:
                print(f"$ qd2 {line.replace(DATA, '<data>').replace(tmp, '<tmp>')}")
                code = run(shlex.split(line))
                if code:
                    print(f"(exit {code})")
                    status = 1
    print("== acceptance checks")
    sys.argv = ["test_acceptance.py"]
    try:
        runpy.run_path(str(ROOT / "tests" / "test_acceptance.py"), run_name="__main__")
    except SystemExit as exc:
        status = status or int(exc.code or 0)
    return status


if __name__ == "__main__":
    sys.exit(main())
