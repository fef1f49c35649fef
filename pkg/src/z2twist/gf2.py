"""Linear algebra over GF(2) on bit-packed vectors.

Vectors in Z_2^n are ints with x_1 in the most significant of n bits, so the
bit string "110" (x1=1, x2=1, x3=0) is the int 0b110 = 6.  Matrices act on
the left: (G x)_i = sum_j G[i][j] x_j mod 2.
"""

import numpy as np

__all__ = [
    "vec_from_str", "vec_to_str", "vec_add", "weight", "bit_of", "basis_vec",
    "GF2Matrix", "identity", "mat_from_rows_1based", "mat_apply", "mat_mul",
    "mat_invert", "is_invertible", "rank", "apply_table", "enumerate_gl",
    "count_gl", "random_invertible", "block_diag",
]


def vec_from_str(s):
    """Parse a bit string like "101" (x1 leftmost) into an int."""
    assert s and set(s) <= {"0", "1"}, f"bad bit string {s!r}"
    return int(s, 2)


def vec_to_str(v, n):
    return format(v, f"0{n}b")


def vec_add(u, v):
    return u ^ v


def weight(v):
    """Hamming weight."""
    return bin(v).count("1")


def bit_of(v, i, n):
    """Coordinate x_i (1-based) of v."""
    return (v >> (n - i)) & 1


def basis_vec(i, n):
    """The vector e_i (1-based)."""
    return 1 << (n - i)


class GF2Matrix:
    """n x n matrix over GF(2); rows bit-packed like vectors."""

    __slots__ = ("n", "rows")

    def __init__(self, n, rows):
        rows = tuple(int(r) for r in rows)
        assert len(rows) == n and all(0 <= r < (1 << n) for r in rows)
        self.n = n
        self.rows = rows

    def __eq__(self, other):
        return isinstance(other, GF2Matrix) and (self.n, self.rows) == (other.n, other.rows)

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"GF2Matrix({self.n}, {[vec_to_str(r, self.n) for r in self.rows]})"

    def entry(self, i, j):
        """Entry in row i, column j (1-based)."""
        return bit_of(self.rows[i - 1], j, self.n)

    def to_json(self):
        return {"n": self.n, "rows": [vec_to_str(r, self.n) for r in self.rows]}

    @classmethod
    def from_json(cls, obj):
        n = int(obj["n"])
        rows = [vec_from_str(r) for r in obj["rows"]]
        assert all(len(r) == n for r in obj["rows"]), "row length != n"
        return cls(n, rows)


def identity(n):
    return GF2Matrix(n, [basis_vec(i, n) for i in range(1, n + 1)])


def mat_from_rows_1based(n, row_cols):
    """Build a matrix from an iterable of column-index lists (1-based).

    row_cols[i] lists the j with G[i+1][j] = 1.
    """
    rows = []
    for cols in row_cols:
        r = 0
        for j in cols:
            r ^= basis_vec(j, n)
        rows.append(r)
    return GF2Matrix(n, rows)


def mat_apply(G, v):
    """Compute G v for a bit-packed vector v."""
    out = 0
    n = G.n
    for i, row in enumerate(G.rows):
        out |= (weight(row & v) & 1) << (n - 1 - i)
    return out


def mat_mul(A, B):
    """Matrix product A B (so (A B) v = A (B v))."""
    assert A.n == B.n
    n = A.n
    # column j of the product is A applied to column j of B
    bcols = [0] * n
    for i, row in enumerate(B.rows):
        for j in range(n):
            bcols[j] |= ((row >> (n - 1 - j)) & 1) << (n - 1 - i)
    pcols = [mat_apply(A, c) for c in bcols]
    rows = [0] * n
    for j, c in enumerate(pcols):
        for i in range(n):
            rows[i] |= ((c >> (n - 1 - i)) & 1) << (n - 1 - j)
    return GF2Matrix(n, rows)


def _eliminate(rows, n, aug):
    """In-place Gauss elimination; returns rank. aug rows carry an identity."""
    m = len(rows)
    r = 0
    for col in range(n - 1, -1, -1):
        piv = None
        for i in range(r, m):
            if (rows[i] >> col) & 1:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        aug[r], aug[piv] = aug[piv], aug[r]
        for i in range(m):
            if i != r and (rows[i] >> col) & 1:
                rows[i] ^= rows[r]
                aug[i] ^= aug[r]
        r += 1
    return r


def rank(G):
    rows = list(G.rows)
    return _eliminate(rows, G.n, [0] * G.n)


def is_invertible(G):
    return rank(G) == G.n


def mat_invert(G):
    """Inverse matrix; raises ValueError if singular."""
    n = G.n
    rows = list(G.rows)
    aug = [basis_vec(i, n) for i in range(1, n + 1)]
    if _eliminate(rows, n, aug) < n:
        raise ValueError("matrix is singular")
    # rows is now a permutation-free identity in echelon order: rows[r] has
    # leading bit at some column; reorder so rows == identity
    out = [0] * n
    for r in range(n):
        col = rows[r].bit_length() - 1  # the single set bit
        assert rows[r] == 1 << col
        out[n - 1 - col] = aug[r]
    return GF2Matrix(n, out)


def apply_table(G):
    """numpy array t with t[v] = G v for all v in 0..2^n-1."""
    n = G.n
    xs = np.arange(1 << n, dtype=np.uint32)
    out = np.zeros(1 << n, dtype=np.uint32)
    for i, row in enumerate(G.rows):
        bit = np.bitwise_count(xs & np.uint32(row)).astype(np.uint32) & 1
        out |= bit << np.uint32(n - 1 - i)
    return out


def enumerate_gl(n):
    """Yield all invertible n x n matrices in lexicographic row order.

    Intended for n <= 5 (|GL_5| is about 9.96e6).
    """
    assert 1 <= n <= 5, "exhaustive enumeration is limited to n <= 5"
    full = 1 << n
    rows = []
    spans = [frozenset([0])]

    def rec():
        if len(rows) == n:
            yield GF2Matrix(n, rows)
            return
        span = spans[-1]
        for r in range(1, full):
            if r in span:
                continue
            rows.append(r)
            spans.append(span | {s ^ r for s in span})
            yield from rec()
            spans.pop()
            rows.pop()

    yield from rec()


def count_gl(n):
    """|GL_n(F_2)| = prod (2^n - 2^i)."""
    c = 1
    for i in range(n):
        c *= (1 << n) - (1 << i)
    return c


def random_invertible(n, seed):
    """Uniform-ish random invertible matrix; seed is an int or a Generator."""
    if isinstance(seed, np.random.Generator):
        rng = seed
    else:
        rng = np.random.Generator(np.random.PCG64(seed))
    while True:
        rows = [int(x) for x in rng.integers(0, 1 << n, size=n)]
        G = GF2Matrix(n, rows)
        if is_invertible(G):
            return G


def block_diag(A, B):
    """Block-diagonal sum acting on the concatenated coordinates."""
    n = A.n + B.n
    rows = [r << B.n for r in A.rows] + list(B.rows)
    return GF2Matrix(n, rows)
