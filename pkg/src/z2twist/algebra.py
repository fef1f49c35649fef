"""Twisted group algebras on Z_2^n: sign tables and graded-identity checks.

The algebra has basis u_x, x in Z_2^n, with u_x u_y = (-1)^{f(x,y)} u_{x+y}.
Everything here operates on the dense bit table of f.
"""

from dataclasses import dataclass
import itertools

import numpy as np

from . import bitops, gf2
from .forms import CubicForm, anf_from_truth_table

__all__ = [
    "TwistingTable", "GradedAlgebra", "twist_from_form", "twist_standard",
    "multiply_basis", "beta_of", "phi_of", "has_generating_function",
    "extract_generating", "check_generating_axioms",
    "check_graded_commutative", "check_graded_associative",
    "check_graded_alternative", "check_phi_zero", "generator_square",
    "multiplication_table",
    "tsv_lines",
]


class TwistingTable:
    """Dense 2^n x 2^n bit table of a twisting function."""

    __slots__ = ("n", "bits", "_packed", "_packedT")

    def __init__(self, n, bits):
        bits = np.asarray(bits, dtype=np.uint8)
        assert bits.shape == (1 << n, 1 << n)
        assert ((bits == 0) | (bits == 1)).all()
        if bits.flags.writeable:
            bits = bits.copy()
            bits.flags.writeable = False
        self.n = n
        self.bits = bits
        self._packed = None
        self._packedT = None

    def packed(self):
        if self._packed is None:
            self._packed = bitops.pack_rows(self.bits)
        return self._packed

    def packed_t(self):
        if self._packedT is None:
            self._packedT = bitops.pack_rows(np.ascontiguousarray(self.bits.T))
        return self._packedT

    def diag(self):
        return np.ascontiguousarray(np.diagonal(self.bits))

    def is_unital(self):
        return bool((self.bits[0] == 0).all() and (self.bits[:, 0] == 0).all())

    def __eq__(self, other):
        return (isinstance(other, TwistingTable) and self.n == other.n
                and bool((self.bits == other.bits).all()))

    def to_json(self):
        return {"n": self.n,
                "rows": ["".join("01"[b] for b in row) for row in self.bits]}

    @classmethod
    def from_json(cls, obj):
        n = int(obj["n"])
        rows = [[int(c) for c in r] for r in obj["rows"]]
        return cls(n, np.array(rows, dtype=np.uint8))


@dataclass(frozen=True)
class GradedAlgebra:
    """A twisting table with a semantic field label and optional signature."""
    n: int
    twisting: TwistingTable
    field_tag: str = "real"
    signature: tuple = None

    def __post_init__(self):
        assert self.field_tag in ("real", "complex")


def _bit_cols(n):
    xs = np.arange(1 << n, dtype=np.uint32)
    return {i: ((xs >> (n - i)) & 1).astype(np.uint8) for i in range(1, n + 1)}


def _table_from_terms(n, terms):
    """Each term is (x-indices, y-indices); the table is the XOR of the
    corresponding rank-one products of coordinate columns."""
    size = 1 << n
    cols = _bit_cols(n)
    bits = np.zeros((size, size), dtype=np.uint8)
    ones = np.ones(size, dtype=np.uint8)
    for xi, yi in terms:
        cx = ones
        for i in xi:
            cx = cx & cols[i]
        cy = ones
        for i in yi:
            cy = cy & cols[i]
        bits ^= cx[:, None] & cy[None, :]
    return TwistingTable(n, bits)


def _monomial_terms(form):
    terms = []
    for (i, j, k) in sorted(form.cubic):
        terms += [((i, j), (k,)), ((i, k), (j,)), ((j, k), (i,))]
    for (i, j) in sorted(form.quadratic):
        terms.append(((i,), (j,)))
    for i in sorted(form.linear):
        terms.append(((i,), (i,)))
    return terms


def twist_from_form(form):
    """The twisting function whose diagonal is the form, built monomial by
    monomial: x_i x_j x_k -> x_i x_j y_k + x_i y_j x_k + y_i x_j x_k,
    x_i x_j -> x_i y_j, x_i -> x_i y_i."""
    return _table_from_terms(form.n, _monomial_terms(form))


def _upper_terms(n):
    terms = [((i,), (j,)) for i in range(1, n + 1) for j in range(i, n + 1)]
    return terms


def twist_standard(kind, n=None, p=None, q=None):
    """Twisting tables of the named families, from their closed formulas."""
    if kind in ("O_pq", "Cl_pq"):
        assert p is not None and q is not None and p >= 0 and q >= 0
        n = p + q
    if kind == "H":
        return _table_from_terms(2, [((1,), (1,)), ((1,), (2,)), ((2,), (2,))])
    if kind == "O":
        terms = [((1, 2), (3,)), ((1, 3), (2,)), ((2, 3), (1,))] + _upper_terms(3)
        return _table_from_terms(3, terms)
    assert n is not None and n >= 1
    if kind in ("O_n", "O_pq"):
        assert n >= 3, "octonion-like kinds need n >= 3"
        terms = []
        for (i, j, k) in itertools.combinations(range(1, n + 1), 3):
            terms += [((i, j), (k,)), ((i, k), (j,)), ((j, k), (i,))]
        terms += _upper_terms(n)
    elif kind in ("Cl_n", "Cl_pq"):
        terms = _upper_terms(n)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if kind in ("O_pq", "Cl_pq"):
        terms += [((i,), (i,)) for i in range(1, p + 1)]
    return _table_from_terms(n, terms)


def multiply_basis(f, x, y):
    """u_x u_y = (sign, x+y)."""
    assert 0 <= x < (1 << f.n) and 0 <= y < (1 << f.n), "dimension mismatch"
    return (-1 if f.bits[x, y] else 1), x ^ y


def beta_of(f, x, y):
    return int(f.bits[x, y] ^ f.bits[y, x])


def phi_of(f, x, y, z):
    return int(f.bits[x, y] ^ f.bits[x, y ^ z] ^ f.bits[x ^ y, z] ^ f.bits[y, z])


def generator_square(alg, i):
    """(-1)^{f(e_i, e_i)} for the i-th generator."""
    f = alg.twisting if isinstance(alg, GradedAlgebra) else alg
    assert 1 <= i <= f.n, "index out of range"
    e = gf2.basis_vec(i, f.n)
    return -1 if f.bits[e, e] else 1


# ---------------------------------------------------------------------------
# exhaustive checks (packed kernels with naive references in the tests)


def _beta_from_diag(f):
    d = f.diag()
    xs = np.arange(1 << f.n)
    return d[xs[:, None] ^ xs[None, :]] ^ d[:, None] ^ d[None, :]


def check_graded_commutative(f):
    """f(x,y)+f(y,x) must equal the polarization of the diagonal."""
    B = f.bits ^ f.bits.T
    return bool((B == _beta_from_diag(f)).all())


def _phi_slices(f):
    """Yield (z, phi_z) with phi_z[x,y] = (delta f)(x,y,z), packed along y."""
    n = f.n
    P = f.packed()
    size = 1 << n
    xs = np.arange(size)
    for z in range(size):
        colz = bitops.pack_vec(f.bits[:, z])
        t3 = bitops.xor_shuffle_table(colz, n)          # f(x^y, z)
        phi = P ^ bitops.xor_shuffle(P, z) ^ t3
        phi ^= np.broadcast_to(colz, phi.shape)          # f(y, z)
        yield z, phi, t3, colz


def check_phi_symmetric(f):
    """delta f invariant under both adjacent transpositions of (x,y,z)."""
    n = f.n
    P = f.packed()
    PT = f.packed_t()
    xs = np.arange(1 << n)
    for z, phi, t3, colz in _phi_slices(f):
        cz = bitops.col_bytes(f.bits[:, z])
        # (x <-> y): f(y,x) + f(y, x^z) + f(y^x, z) + f(x,z)
        psi = PT ^ PT[xs ^ z] ^ t3 ^ cz
        if not (phi == psi).all():
            return False
        # (y <-> z): f(x,z) + f(x, z^y) + f(x^z, y) + f(z,y)
        chi = cz ^ bitops.xor_shuffle(P, z) ^ P[xs ^ z] ^ np.broadcast_to(P[z], phi.shape)
        if not (phi == chi).all():
            return False
    return True


def has_generating_function(f):
    if f.n < 3:
        return _has_generating_naive(f)
    return check_phi_symmetric(f)


def _has_generating_naive(f):
    size = 1 << f.n
    for x in range(size):
        for y in range(size):
            for z in range(size):
                v = phi_of(f, x, y, z)
                if v != phi_of(f, y, x, z) or v != phi_of(f, x, z, y):
                    return False
    return True


def check_graded_associative(f):
    """delta f must equal the seven-term polarization of the diagonal."""
    if f.n < 3:
        return _check_associative_naive(f)
    n = f.n
    d = f.diag()
    dp = bitops.pack_vec(d)
    D2 = bitops.xor_shuffle_table(dp, n)                # d[x ^ y]
    xs = np.arange(1 << n)
    for z, phi, t3, colz in _phi_slices(f):
        col = bitops.col_bytes(d[xs ^ z] ^ d)            # d[x^z] + d[x]
        row = bitops.xor_shuffle(dp, z) ^ dp             # d[y^z] + d[y]
        if d[z]:
            row = row ^ np.uint8(0xFF)
        target = D2[xs ^ z] ^ D2 ^ col ^ np.broadcast_to(row, phi.shape)
        if not (phi == target).all():
            return False
    return True


def _check_associative_naive(f):
    d = f.diag()
    size = 1 << f.n
    for x in range(size):
        for y in range(size):
            for z in range(size):
                want = (d[x ^ y ^ z] ^ d[x ^ y] ^ d[x ^ z] ^ d[y ^ z]
                        ^ d[x] ^ d[y] ^ d[z])
                if phi_of(f, x, y, z) != want:
                    return False
    return True


def check_phi_zero(f):
    """delta f identically zero (true for bilinear twisting functions)."""
    if f.n < 3:
        size = 1 << f.n
        return all(phi_of(f, x, y, z) == 0
                   for x in range(size) for y in range(size) for z in range(size))
    return all((phi == 0).all() for _, phi, _, _ in _phi_slices(f))


def check_graded_alternative(f):
    """phi(x,x,y) = 0: f(x,x) + f(x,x+y) + f(0,y) + f(x,y) = 0."""
    if f.n < 3:
        size = 1 << f.n
        return all(phi_of(f, x, x, y) == 0
                   for x in range(size) for y in range(size))
    P = f.packed()
    R = bitops.row_self_shuffle(P, f.n)                  # f(x, x^y)
    acc = bitops.col_bytes(f.diag()) ^ R ^ P
    acc ^= np.broadcast_to(P[0], acc.shape)              # f(0, y)
    return bool((acc == 0).all())


def check_generating_axioms(f, form):
    """The three axioms tying f to the form, each exhaustive: the diagonal
    equals the form (2^n points), the symmetrized table equals the two-point
    polarization of the form (4^n pairs), and delta f equals the seven-term
    polarization of the form (8^n triples)."""
    if f.n != form.n:
        raise ValueError("dimension mismatch")
    d = form.truth_table()
    ok_diag = bool((f.diag() == d).all())
    xs = np.arange(1 << f.n)
    beta = f.bits ^ f.bits.T
    polar = d[xs[:, None] ^ xs[None, :]] ^ d[:, None] ^ d[None, :]
    ok_pairs = bool((beta == polar).all())
    ok_triples = True
    if f.n < 3:
        size = 1 << f.n
        for x in range(size):
            for y in range(size):
                for z in range(size):
                    want = (d[x ^ y ^ z] ^ d[x ^ y] ^ d[x ^ z] ^ d[y ^ z]
                            ^ d[x] ^ d[y] ^ d[z])
                    if phi_of(f, x, y, z) != want:
                        ok_triples = False
    else:
        dp = bitops.pack_vec(d)
        D2 = bitops.xor_shuffle_table(dp, f.n)
        for z, phi, t3, colz in _phi_slices(f):
            col = bitops.col_bytes(d[xs ^ z] ^ d)
            row = bitops.xor_shuffle(dp, z) ^ dp
            if d[z]:
                row = row ^ np.uint8(0xFF)
            target = D2[xs ^ z] ^ D2 ^ col ^ np.broadcast_to(row, phi.shape)
            if not (phi == target).all():
                ok_triples = False
                break
    return {"diagonal": ok_diag, "pairs": ok_pairs, "triples": ok_triples}


def extract_generating(f):
    """Interpolate the diagonal into a cubic form and verify the two
    polarization identities exhaustively."""
    if not has_generating_function(f):
        raise ValueError("delta f is not symmetric: no generating function")
    form = anf_from_truth_table(f.diag(), f.n)
    assert check_graded_commutative(f), "diagonal polarization mismatch (pairs)"
    assert check_graded_associative(f), "diagonal polarization mismatch (triples)"
    return form


# ---------------------------------------------------------------------------
# exports


def tsv_lines(f):
    """One line per (x, y): bit strings and the signed product."""
    n = f.n
    for x in range(1 << n):
        sx = format(x, f"0{n}b")
        row = f.bits[x]
        for y in range(1 << n):
            sign = "-" if row[y] else ""
            yield f"{sx}\t{format(y, f'0{n}b')}\t{sign}{format(x ^ y, f'0{n}b')}"


def multiplication_table(alg):
    """The full signed table as TSV text."""
    f = alg.twisting if isinstance(alg, GradedAlgebra) else alg
    return "\n".join(tsv_lines(f)) + "\n"
