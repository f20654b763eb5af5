"""Regenerate tests/golden/*.txt from the cases listed in tests/golden/cases.json.

Each golden file holds the exit code on its first line, then stdout.
"""

import io as _io
import json
from importlib.resources import files
from pathlib import Path

from qd2.cli import run

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"


def render(argv):
    data = str(files("qd2").joinpath("data"))
    argv = [a.replace("{data}", data) for a in argv]
    out, err = _io.StringIO(), _io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return f"exit {code}\n{out.getvalue()}"


def main():
    cases = json.loads((GOLDEN / "cases.json").read_text())
    for name, argv in cases.items():
        (GOLDEN / f"{name}.txt").write_text(render(argv))
        print(f"{name}.txt")


if __name__ == "__main__":
    main()
