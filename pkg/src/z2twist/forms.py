"""Cubic forms on Z_2^n in canonical algebraic normal form.

A form is stored as three sets of 1-based index tuples: triples (degree-3
monomials), pairs (degree-2) and singletons (linear).  Since x_i^2 = x_i over
GF(2), strictly increasing tuples give a canonical normal form: two forms are
equal as functions iff their coefficient sets are equal.
"""

import itertools

import numpy as np

from . import gf2

__all__ = [
    "CubicForm", "anf_from_truth_table", "make_alpha_n", "make_alpha_pq",
    "make_alpha_cl_n", "make_alpha_cl_pq", "make_cl_block_sum",
    "make_block_pattern", "make_tilde",
    "make_cl_plus2_source", "make_cl_minus2_source", "substitute", "embed",
    "add_forms", "x1_multiplier_expand", "zero_count", "invariant_profile",
    "TriGraph", "to_graph", "graph_to_dot", "weight_rule_check",
    "beta_polar", "phi_polar",
]


def _canon(tuples, size, n):
    out = set()
    for t in tuples:
        t = tuple(sorted(int(i) for i in t))
        assert len(t) == size and len(set(t)) == size, f"bad monomial {t}"
        assert all(1 <= i <= n for i in t), f"index out of range in {t}"
        out.add(t)
    return frozenset(out)


def _canon_linear(idxs, n):
    out = set()
    for i in idxs:
        i = int(i)
        assert 1 <= i <= n, f"index {i} out of range 1..{n}"
        out.add(i)
    return frozenset(out)


class CubicForm:
    """A polynomial of degree <= 3 on Z_2^n with zero constant term."""

    __slots__ = ("n", "cubic", "quadratic", "linear", "_tt")

    def __init__(self, n, cubic=(), quadratic=(), linear=()):
        assert 1 <= n <= 16
        self.n = n
        self.cubic = _canon(cubic, 3, n)
        self.quadratic = _canon(quadratic, 2, n)
        self.linear = _canon_linear(linear, n)
        self._tt = None

    def __eq__(self, other):
        return (isinstance(other, CubicForm) and self.n == other.n
                and self.cubic == other.cubic
                and self.quadratic == other.quadratic
                and self.linear == other.linear)

    def __hash__(self):
        return hash((self.n, self.cubic, self.quadratic, self.linear))

    def __repr__(self):
        terms = ["".join(f"x{i}" for i in t) for t in sorted(self.cubic)]
        terms += ["".join(f"x{i}" for i in t) for t in sorted(self.quadratic)]
        terms += [f"x{i}" for i in sorted(self.linear)]
        return f"CubicForm({self.n}: {' + '.join(terms) if terms else '0'})"

    def monomial_count(self):
        return len(self.cubic) + len(self.quadratic) + len(self.linear)

    def eval(self, x):
        """Evaluate at a bit-packed point."""
        assert 0 <= x < (1 << self.n)
        n = self.n
        acc = 0
        for (i, j, k) in self.cubic:
            acc ^= (x >> (n - i)) & (x >> (n - j)) & (x >> (n - k)) & 1
        for (i, j) in self.quadratic:
            acc ^= (x >> (n - i)) & (x >> (n - j)) & 1
        for i in self.linear:
            acc ^= (x >> (n - i)) & 1
        return acc

    def truth_table(self):
        """All 2^n values as a read-only uint8 array indexed by the point."""
        if self._tt is None:
            n = self.n
            xs = np.arange(1 << n, dtype=np.uint32)
            cols = [((xs >> (n - i)) & 1).astype(np.uint8) for i in range(n + 1)]
            tt = np.zeros(1 << n, dtype=np.uint8)
            for (i, j, k) in self.cubic:
                tt ^= cols[i] & cols[j] & cols[k]
            for (i, j) in self.quadratic:
                tt ^= cols[i] & cols[j]
            for i in self.linear:
                tt ^= cols[i]
            tt.flags.writeable = False
            self._tt = tt
        return self._tt

    def degree(self):
        if self.cubic:
            return 3
        if self.quadratic:
            return 2
        return 1 if self.linear else 0

    def to_json(self):
        return {
            "n": self.n,
            "cubic": [list(t) for t in sorted(self.cubic)],
            "quadratic": [list(t) for t in sorted(self.quadratic)],
            "linear": sorted(self.linear),
        }

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["n"]), obj.get("cubic", ()), obj.get("quadratic", ()),
                   obj.get("linear", ()))


def add_forms(a, b):
    """Sum over GF(2): symmetric difference of the coefficient sets."""
    assert a.n == b.n, "dimension mismatch"
    return CubicForm(a.n, a.cubic ^ b.cubic, a.quadratic ^ b.quadratic,
                     a.linear ^ b.linear)


def embed(form, positions, n_total):
    """Rename variables: old variable i becomes positions[i-1] (1-based)."""
    positions = [int(p) for p in positions]
    assert len(positions) == form.n and len(set(positions)) == form.n
    assert all(1 <= p <= n_total for p in positions)

    def m(t):
        return tuple(positions[i - 1] for i in t)

    return CubicForm(n_total, [m(t) for t in form.cubic],
                     [m(t) for t in form.quadratic],
                     [positions[i - 1] for i in form.linear])


def x1_multiplier_expand(block, add_x1):
    """Expand [x1 +] (x1+1) * block into canonical ANF.

    The block must not involve x1; every monomial m contributes m and x1*m.
    """
    assert 1 not in {i for t in block.cubic | block.quadratic for i in t} | set(block.linear)
    assert not block.cubic, "multiplier expansion needs a degree <= 2 block"
    cubic = [(1,) + t for t in block.quadratic]
    quadratic = set(block.quadratic) | {(1, i) for i in block.linear}
    linear = set(block.linear) | ({1} if add_x1 else set())
    return CubicForm(block.n, cubic, quadratic, linear)


def anf_from_truth_table(tt, n, max_degree=3):
    """Interpolate a truth table into ANF; error if degree exceeds max_degree."""
    t = np.array(tt, dtype=np.uint8, copy=True)
    assert t.shape == (1 << n,)
    for i in range(n):
        step = 1 << i
        t = t.reshape(-1, 2 * step)
        t[:, step:] ^= t[:, :step]
        t = t.reshape(-1)
    if t[0]:
        raise ValueError("nonzero constant term")
    cubic, quadratic, linear = [], [], []
    for mask in np.nonzero(t)[0]:
        mask = int(mask)
        idxs = tuple(i for i in range(1, n + 1) if (mask >> (n - i)) & 1)
        if len(idxs) > max_degree:
            raise ValueError(f"interpolated degree {len(idxs)} exceeds {max_degree}")
        (cubic if len(idxs) == 3 else quadratic if len(idxs) == 2 else linear).append(idxs)
    return CubicForm(n, cubic, quadratic, [i for (i,) in linear])


def substitute(form, G):
    """Canonical ANF of x -> form(G x) for invertible G."""
    assert G.n == form.n, "dimension mismatch"
    if not gf2.is_invertible(G):
        raise ValueError("matrix is singular")
    tt = form.truth_table()[gf2.apply_table(G)]
    return anf_from_truth_table(tt, form.n)


def beta_polar(form, x, y):
    """beta(x,y) = form(x+y) + form(x) + form(y)."""
    return form.eval(x ^ y) ^ form.eval(x) ^ form.eval(y)


def phi_polar(form, x, y, z):
    """The full polarization: the seven-term alternating sum."""
    return (form.eval(x ^ y ^ z) ^ form.eval(x ^ y) ^ form.eval(x ^ z)
            ^ form.eval(y ^ z) ^ form.eval(x) ^ form.eval(y) ^ form.eval(z))


# ---------------------------------------------------------------------------
# named families


def make_alpha_n(n):
    """All cubic, all quadratic and all linear coefficients set."""
    assert n >= 3, "needs n >= 3"
    idx = range(1, n + 1)
    return CubicForm(n, itertools.combinations(idx, 3),
                     itertools.combinations(idx, 2), idx)


def make_alpha_pq(p, q):
    """Signature variant: linear terms on 1..p cancel, leaving p+1..n."""
    n = p + q
    assert p >= 0 and q >= 0 and n >= 3
    base = make_alpha_n(n)
    return CubicForm(n, base.cubic, base.quadratic, range(p + 1, n + 1))


def make_alpha_cl_n(n):
    """All quadratic and all linear coefficients set (no cubic part)."""
    assert n >= 1
    idx = range(1, n + 1)
    return CubicForm(n, (), itertools.combinations(idx, 2), idx)


def make_alpha_cl_pq(p, q):
    """Quadratic family with signature: linear part on p+1..n."""
    n = p + q
    assert p >= 0 and q >= 0 and n >= 1
    return CubicForm(n, (), itertools.combinations(range(1, n + 1), 2),
                     range(p + 1, n + 1))


def make_block_pattern(pattern, starting_index=1, n=None):
    """Sum of 2-variable blocks on consecutive pairs, in the given order:
    '+' contributes x_i x_j, '-' contributes x_i x_j + x_i + x_j."""
    total = 2 * len(pattern)
    if n is None:
        n = starting_index - 1 + total
    assert starting_index >= 1 and starting_index - 1 + total <= n, "blocks overflow n"
    quadratic, linear = [], []
    pos = starting_index
    for c in pattern:
        assert c in "+-", f"bad block sign {c!r}"
        quadratic.append((pos, pos + 1))
        if c == "-":
            linear += [pos, pos + 1]
        pos += 2
    return CubicForm(n, (), quadratic, linear)


def make_cl_block_sum(plus_blocks, minus_blocks, starting_index=1, n=None):
    """Disjoint sum of 2-variable blocks: plus blocks x_i x_j, then minus
    blocks x_i x_j + x_i + x_j, on consecutive pairs."""
    total = 2 * (plus_blocks + minus_blocks)
    if n is None:
        n = starting_index - 1 + total
    assert starting_index >= 1 and starting_index - 1 + total <= n, "blocks overflow n"
    quadratic, linear = [], []
    pos = starting_index
    for b in range(plus_blocks + minus_blocks):
        i, j = pos, pos + 1
        quadratic.append((i, j))
        if b >= plus_blocks:
            linear += [i, j]
        pos += 2
    return CubicForm(n, (), quadratic, linear)


def make_cl_plus2_source(p, q):
    """Source form of the plus-2 signature shift: a 2-variable block joined
    with a quadratic family on the remaining window (n+2 variables)."""
    n = p + q
    assert n >= 1
    N = n + 2
    quadratic = [(1, 2)] + list(itertools.combinations(range(3, N + 1), 2))
    return CubicForm(N, (), quadratic, range(3, p + 3))


def make_cl_minus2_source(p, q):
    """Source form of the minus-2 signature shift: quadratic family on the
    first window joined with a trailing minus block (n+2 variables)."""
    n = p + q
    assert n >= 1
    N = n + 2
    quadratic = list(itertools.combinations(range(1, n + 1), 2)) + [(N - 1, N)]
    return CubicForm(N, (), quadratic, list(range(1, p + 1)) + [N - 1, N])


# ---------------------------------------------------------------------------
# the tilde family: sparse representatives built from transcribed base graphs

# base cases, each as (n, cubic, quadratic, linear)
_TILDE_PURE_BASE = {
    3: ((1, 2, 3),), 4: ((1, 3, 4),), 5: ((1, 2, 3), (1, 4, 5)),
    6: ((1, 3, 4), (1, 5, 6)),
}
_TILDE_PURE_QUAD = {
    3: ((1, 2), (1, 3), (2, 3)),
    4: ((1, 3), (1, 4), (3, 4)),
    5: ((2, 3), (1, 4), (1, 5), (4, 5)),
    6: ((1, 2), (3, 4), (1, 5), (1, 6), (5, 6)),
}
_TILDE_PURE_LIN = {3: (1, 2, 3), 4: (1, 3, 4), 5: (1, 4, 5), 6: (1, 2, 5, 6)}

# mixed-signature base graphs, keyed by (p, q) with p <= q
_TILDE_MIXED_BASE = {
    (1, 2): (3, ((1, 2, 3),), ((1, 2), (1, 3), (2, 3)), (1,)),
    (2, 2): (4, ((1, 3, 4),), ((1, 3), (1, 4), (3, 4)), (1,)),
    (1, 3): (4, ((1, 3, 4),), ((1, 3), (1, 4), (3, 4)), (1, 2, 4)),
    (2, 3): (5, ((1, 2, 3), (1, 4, 5)), ((2, 3), (1, 4), (1, 5), (4, 5)), (1,)),
    (1, 4): (5, ((1, 2, 3), (1, 4, 5)), ((2, 3), (1, 4), (1, 5), (4, 5)), (1, 2, 3)),
    (3, 3): (6, ((1, 3, 4), (1, 5, 6)), ((1, 2), (3, 4), (1, 5), (1, 6), (5, 6)), (1,)),
    (2, 4): (6, ((1, 3, 4), (1, 5, 6)), ((1, 2), (3, 4), (1, 5), (1, 6), (5, 6)),
             (1, 2, 3, 4)),
    (1, 5): (6, ((1, 3, 4), (1, 5, 6)), ((1, 2), (3, 4), (1, 5), (1, 6), (5, 6)),
             (1, 5, 6)),
    (2, 5): (7, ((1, 2, 3), (1, 4, 5), (1, 6, 7)),
             ((1, 2), (1, 3), (2, 3), (4, 5), (1, 6), (1, 7), (6, 7)), (1, 6, 7)),
    (2, 6): (8, ((1, 3, 4), (1, 5, 6), (1, 7, 8)),
             ((1, 3), (1, 4), (3, 4), (5, 6), (1, 7), (1, 8), (7, 8)), (1, 7, 8)),
    (3, 6): (9, ((1, 2, 3), (1, 4, 5), (1, 6, 7), (1, 8, 9)),
             ((2, 3), (4, 5), (1, 6), (1, 7), (6, 7), (1, 8), (1, 9), (8, 9)),
             (1, 8, 9)),
}


def _tilde_pure(n):
    """Sparse representative for the all-minus signature (0, n)."""
    assert n >= 3
    m0 = 3 + (n - 3) % 4
    form = CubicForm(n, _TILDE_PURE_BASE[m0], _TILDE_PURE_QUAD[m0],
                     _TILDE_PURE_LIN[m0])
    five = CubicForm(5, _TILDE_PURE_BASE[5], _TILDE_PURE_QUAD[5], _TILDE_PURE_LIN[5])
    x1 = CubicForm(n, (), (), (1,))
    m = m0
    while m < n:
        form = add_forms(form, embed(five, [1, m + 1, m + 2, m + 3, m + 4], n))
        form = add_forms(form, x1)
        m += 4
    return form


def _mixed_orbit(p, q):
    """All signatures reachable by swapping and moving 4 between components
    while keeping both positive."""
    seen = {(p, q)}
    frontier = [(p, q)]
    while frontier:
        a, b = frontier.pop()
        nxt = [(b, a)]
        if a - 4 >= 1:
            nxt.append((a - 4, b + 4))
        if b - 4 >= 1:
            nxt.append((a + 4, b - 4))
        for s in nxt:
            if s not in seen:
                seen.add(s)
                frontier.append(s)
    return seen


def make_tilde(p, q):
    """Sparse representative of the signature (p, q).

    The output depends only on the orbit of (p, q) under swapping and the
    4-step signature moves, so the identities tilde(q,p) = tilde(p,q) and
    tilde(p,q+4) = tilde(p+4,q) hold at the level of coefficient sets.
    """
    assert p >= 0 and q >= 0 and p + q >= 3, "needs p+q >= 3"
    if p == 0:
        return _tilde_pure(q)
    if q == 0:
        return add_forms(_tilde_pure(p), CubicForm(p, (), (), (1,)))
    orbit = _mixed_orbit(p, q)
    bases = sorted(orbit & set(_TILDE_MIXED_BASE))
    assert len(bases) <= 1, f"orbit of {(p, q)} hits several base graphs: {bases}"
    if bases:
        n, cubic, quad, lin = _TILDE_MIXED_BASE[bases[0]]
        return CubicForm(n, cubic, quad, lin)
    # no transcribed base: peel one balanced 5-variable block off the most
    # balanced orbit member
    a, b = max((s for s in orbit if s[0] <= s[1]), key=lambda s: s[0])
    assert a >= 3, f"unexpected shallow orbit member {(a, b)}"
    n = a + b
    core = make_tilde(a - 2, b - 2)
    assert core.n == n - 4
    t23 = make_tilde(2, 3)
    out = add_forms(embed(core, range(1, n - 3), n),
                    embed(t23, [1, n - 3, n - 2, n - 1, n], n))
    return add_forms(out, CubicForm(n, (), (), (1,)))


# ---------------------------------------------------------------------------
# invariants


def zero_count(form):
    return int((1 << form.n) - form.truth_table().sum())


def _phi_slice_matrix(form, a):
    """The n x n GF(2) matrix (i,j) -> polarization(e_i, e_j, a)."""
    n = form.n
    rows = [0] * n
    for (i, j, k) in form.cubic:
        for (u, v, w) in ((i, j, k), (j, k, i), (k, i, j)):
            if (a >> (n - w)) & 1:
                rows[u - 1] ^= gf2.basis_vec(v, n)
                rows[v - 1] ^= gf2.basis_vec(u, n)
    return rows


def invariant_profile(form):
    """A tuple of invariants preserved by invertible substitutions."""
    n = form.n
    tt = form.truth_table()
    size = 1 << n
    xs = np.arange(size, dtype=np.uint32)
    xor2d = xs[:, None] ^ xs[None, :]
    deriv = tt[xor2d] ^ tt[None, :]
    deriv_zeros = tuple(sorted(int(size - s) for s in deriv.sum(axis=1)))
    # radical: kernel of a -> (polarization(e_i, e_j, a))_{i<j}
    trip_rows = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            r = 0
            for (u, v, w) in form.cubic:
                rest = {u, v, w} - {i, j}
                if len(rest) == 1 and {i, j} <= {u, v, w}:
                    r ^= gf2.basis_vec(rest.pop(), n)
            trip_rows.append(r)
    aug = [0] * len(trip_rows)
    rk = gf2._eliminate(trip_rows, n, aug) if trip_rows else 0
    radical_dim = n - rk
    ranks = []
    for a in range(size):
        rows = _phi_slice_matrix(form, a)
        ranks.append(gf2._eliminate(rows, n, [0] * n))
    return (zero_count(form), deriv_zeros, radical_dim, tuple(sorted(ranks)))


PROFILE_PART_NAMES = ("zero_count", "derivative_zero_multiset", "radical_dim",
                      "slice_rank_multiset")


def weight_rule_check(n):
    """True iff the dense cubic family vanishes exactly on weights = 0 mod 4."""
    assert n >= 3
    tt = make_alpha_n(n).truth_table()
    xs = np.arange(1 << n, dtype=np.uint32)
    w = np.bitwise_count(xs)
    return bool(((tt == 0) == (w % 4 == 0)).all())


# ---------------------------------------------------------------------------
# triangulated graphs


class TriGraph:
    """Graph encoding of a form: filled vertices, edges, shaded triangles."""

    __slots__ = ("n", "filled", "edges", "triangles")

    def __init__(self, n, filled, edges, triangles):
        self.n = n
        self.filled = frozenset(filled)
        self.edges = frozenset(tuple(sorted(e)) for e in edges)
        self.triangles = frozenset(tuple(sorted(t)) for t in triangles)

    def __eq__(self, other):
        return (isinstance(other, TriGraph)
                and (self.n, self.filled, self.edges, self.triangles)
                == (other.n, other.filled, other.edges, other.triangles))

    def to_form(self):
        return CubicForm(self.n, self.triangles, self.edges, self.filled)


def to_graph(form):
    return TriGraph(form.n, form.linear, form.quadratic, form.cubic)


def graph_to_dot(g):
    """Deterministic DOT text: filled/empty circles, edges, dotted triangles."""
    lines = ["graph cubic_form {", "  node [shape=circle];"]
    for i in range(1, g.n + 1):
        style = "filled" if i in g.filled else "solid"
        lines.append(f"  v{i} [style={style}];")
    for (i, j) in sorted(g.edges):
        lines.append(f"  v{i} -- v{j};")
    for (i, j, k) in sorted(g.triangles):
        lines.append(f"  // triangle v{i} v{j} v{k}")
        lines.append(f"  v{i} -- v{j} [style=dotted];")
        lines.append(f"  v{i} -- v{k} [style=dotted];")
        lines.append(f"  v{j} -- v{k} [style=dotted];")
        lines.append(f"  {{ rank=same; v{i}; v{j}; v{k}; }}")
    lines.append("}")
    return "\n".join(lines) + "\n"
