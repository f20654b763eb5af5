"""Regenerate the catalog files shipped in src/qd2/data/."""

import argparse
from pathlib import Path

from qd2 import catalog, io
from qd2.constructions import nonadditive_6_16_2

DATA = Path(__file__).resolve().parents[1] / "src" / "qd2" / "data"


def shipped():
    codes = {f"even_optimal_{m}": catalog.even_optimal(m) for m in range(1, 5)}
    codes["hexacode"] = catalog.hexacode()
    codes["hamming_5_1_3"] = catalog.hamming_5_1_3()
    codes["three_0_2"] = catalog.three_0_2()
    codes["coset_6_16_2"] = nonadditive_6_16_2()
    return codes


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DATA)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, code in shipped().items():
        io.save(code, args.out / f"{name}.qc")
        print(f"{name}.qc  n={code.n}")


if __name__ == "__main__":
    main()
