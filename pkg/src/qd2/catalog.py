"""Generator tables for the named codes, symbols as in the file format
(``w`` = omega, ``W`` = omega bar)."""

from .gf4 import Gf4AdditiveCode

THREE_0_2 = ("110", "011", "www")

HEXACODE = (
    "001111",
    "00wwww",
    "111100",
    "wwww00",
    "0101wW",
    "0w0wW1",
)

HAMMING_5_1_3 = (
    "01111",
    "0wwww",
    "101wW",
    "w0wW1",
)

# length-3 nonlinear code of minimum distance 2 whose Pauli images translate
# the product of three Bell pairs into a ((6,16,2))
COSET_WORDS_6_16_2 = (
    "000", "011", "0ww", "0WW",
    "101", "110", "1wW", "1Ww",
    "w0w", "w1W", "ww1", "wW0",
    "W0W", "W1w", "Ww0", "WW1",
)


def three_0_2():
    return Gf4AdditiveCode.from_strings(THREE_0_2)


def hexacode():
    return Gf4AdditiveCode.from_strings(HEXACODE)


def hamming_5_1_3():
    return Gf4AdditiveCode.from_strings(HAMMING_5_1_3)


def even_optimal(m):
    """All-ones and all-omega rows of length 2m: a [[2m, 2m-2, 2]]."""
    if m < 1:
        raise ValueError("m must be positive")
    return Gf4AdditiveCode.from_strings(("1" * 2 * m, "w" * 2 * m))
