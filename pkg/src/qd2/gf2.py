"""Linear algebra over GF(2) on vectors packed into Python ints."""


class XorBasis:
    """Incrementally maintained echelon basis keyed by leading bit."""

    def __init__(self, vectors=()):
        self.rows = {}
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    def reduce(self, v):
        while v:
            top = v.bit_length() - 1
            row = self.rows.get(top)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v):
        """Insert ``v``; return True if it was independent."""
        v = self.reduce(v)
        if not v:
            return False
        self.rows[v.bit_length() - 1] = v
        return True

    def __contains__(self, v):
        return self.reduce(v) == 0


def rank(vectors):
    return len(XorBasis(vectors))


def independent_subset(vectors):
    """Indices of a greedy maximal independent subset, in input order."""
    basis = XorBasis()
    return [i for i, v in enumerate(vectors) if basis.add(v)]


def rref(vectors):
    """Reduced row echelon form, rows sorted by decreasing leading bit."""
    rows = []
    for v in vectors:
        for r in rows:
            if v >> (r.bit_length() - 1) & 1:
                v ^= r
        if not v:
            continue
        lead = v.bit_length() - 1
        rows = [r ^ v if r >> lead & 1 else r for r in rows]
        rows.append(v)
    return sorted(rows, reverse=True)


def nullspace(rows, nbits):
    """Basis of {e : parity(e & row) == 0 for every row}."""
    echelon = rref(rows)
    pivots = {r.bit_length() - 1: r for r in echelon}
    basis = []
    for free in range(nbits):
        if free in pivots:
            continue
        e = 1 << free
        for p, r in pivots.items():
            if r >> free & 1:
                e |= 1 << p
        basis.append(e)
    return basis


def solve(rows, rhs, nbits):
    """Some e with parity(e & rows[j]) == rhs[j] for all j, or None."""
    aug = [(r, b) for r, b in zip(rows, rhs)]
    echelon = []
    for r, b in aug:
        for er, eb in echelon:
            if r >> (er.bit_length() - 1) & 1:
                r ^= er
                b ^= eb
        if not r:
            if b:
                return None
            continue
        lead = r.bit_length() - 1
        echelon = [(er ^ r, eb ^ b) if er >> lead & 1 else (er, eb) for er, eb in echelon]
        echelon.append((r, b))
    e = 0
    for r, b in echelon:
        if b:
            e |= 1 << (r.bit_length() - 1)
    return e


def span(vectors):
    """All 2^r combinations of the independent ``vectors`` in Gray-code order."""
    out = [0]
    v = 0
    for i in range(1, 1 << len(vectors)):
        v ^= vectors[(i & -i).bit_length() - 1]
        out.append(v)
    return out
