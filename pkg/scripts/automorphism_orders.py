"""Print the additive automorphism group order and qubit orbits of each
shipped additive code."""

import time

from qd2 import io
from qd2.gf4 import Gf4AdditiveCode
from qd2.symmetry import additive_automorphism_group


def main():
    print(f"{'code':<16} {'n':>2} {'order':>8}  chain orbits      seconds")
    for name in io.shipped_files():
        code = io.load_shipped(name)
        if not isinstance(code, Gf4AdditiveCode):
            continue
        start = time.perf_counter()
        group = additive_automorphism_group(code)
        took = time.perf_counter() - start
        orbits = ",".join(map(str, group.orbit_sizes))
        print(f"{name[:-3]:<16} {code.n:>2} {group.order:>8}  {orbits:<17} {took:.2f}")


if __name__ == "__main__":
    main()
