"""Runtime limits and the package's exception types."""

import os

DEFAULT_DENSE_LIMIT = 12
DEFAULT_SPAN_LIMIT = 1 << 24
DEFAULT_TOL = 1e-9


class SizeLimitError(ValueError):
    """A dense or enumerative computation would exceed the configured cap."""


class ToleranceError(ValueError):
    """A numerical check failed at the requested tolerance."""


def dense_limit():
    """Largest qubit count for which dense 2^n matrices are built.

    Read from ``QD2_DENSE_LIMIT`` on every call so tests and the CLI can
    override it without reloading modules.
    """
    value = os.environ.get("QD2_DENSE_LIMIT")
    if value is None:
        return DEFAULT_DENSE_LIMIT
    return int(value)


def check_dense(n):
    limit = dense_limit()
    if n > limit:
        raise SizeLimitError(f"{n} qubits exceeds dense limit {limit} (set QD2_DENSE_LIMIT)")
