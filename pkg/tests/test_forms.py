"""Cubic forms: canonical ANF, named families, graphs, and invariants."""

import itertools
from math import comb

import numpy as np
import pytest

from z2twist import gf2
from z2twist.forms import (
    CubicForm, TriGraph, add_forms, anf_from_truth_table, beta_polar, embed,
    graph_to_dot, invariant_profile, make_alpha_cl_n, make_alpha_cl_pq,
    make_alpha_n, make_alpha_pq, make_block_pattern, make_cl_block_sum,
    make_cl_minus2_source, make_cl_plus2_source, make_tilde, phi_polar,
    substitute, to_graph, weight_rule_check, x1_multiplier_expand, zero_count,
)


def _random_form(n, rng):
    triples = [t for t in itertools.combinations(range(1, n + 1), 3)
               if rng.integers(2)]
    pairs = [t for t in itertools.combinations(range(1, n + 1), 2)
             if rng.integers(2)]
    singles = [i for i in range(1, n + 1) if rng.integers(2)]
    return CubicForm(n, triples, pairs, singles)


def test_monomials_are_canonicalized_as_sets():
    f = CubicForm(3, [(3, 2, 1), (1, 2, 3)], [(2, 1)], [3, 3])
    assert f.cubic == frozenset({(1, 2, 3)})
    assert f.quadratic == frozenset({(1, 2)})
    assert f.linear == frozenset({3})
    with pytest.raises(AssertionError):
        CubicForm(3, [(1, 1, 2)])
    with pytest.raises(AssertionError):
        CubicForm(3, (), (), [4])


def test_eval_matches_truth_table():
    rng = np.random.default_rng(10)
    for n in (3, 4, 5):
        for _ in range(5):
            f = _random_form(n, rng)
            tt = f.truth_table()
            assert tt.shape == (1 << n,)
            for x in range(1 << n):
                assert f.eval(x) == tt[x]


def test_eval_uses_leftmost_bit_for_variable_one():
    f = CubicForm(3, (), (), [1])
    assert f.eval(0b100) == 1 and f.eval(0b001) == 0


def test_anf_interpolation_round_trip():
    rng = np.random.default_rng(11)
    for n in (3, 5):
        for _ in range(10):
            f = _random_form(n, rng)
            assert anf_from_truth_table(f.truth_table(), n) == f


def test_anf_interpolation_rejects_bad_tables():
    xs = np.arange(16, dtype=np.uint32)
    quartic = ((xs >> 3) & (xs >> 2) & (xs >> 1) & xs & 1).astype(np.uint8)
    with pytest.raises(ValueError):
        anf_from_truth_table(quartic, 4)
    with pytest.raises(ValueError):
        anf_from_truth_table(np.ones(8, dtype=np.uint8), 3)


def test_add_forms_is_xor_of_coefficients():
    a = CubicForm(3, [(1, 2, 3)], [(1, 2)], [1])
    b = CubicForm(3, [(1, 2, 3)], [(1, 3)], [1, 2])
    s = add_forms(a, b)
    assert s == CubicForm(3, (), [(1, 2), (1, 3)], [2])
    tt = (a.truth_table() ^ b.truth_table())
    assert (s.truth_table() == tt).all()


def test_substitute_is_right_composition():
    rng = np.random.default_rng(12)
    f = make_alpha_pq(2, 3)
    for _ in range(5):
        A = gf2.random_invertible(5, rng)
        B = gf2.random_invertible(5, rng)
        fa = substitute(f, A)
        for x in range(32):
            assert fa.eval(x) == f.eval(gf2.mat_apply(A, x))
        assert substitute(fa, B) == substitute(f, gf2.mat_mul(A, B))
    assert substitute(f, gf2.identity(5)) == f
    with pytest.raises(ValueError):
        substitute(f, gf2.GF2Matrix(5, (1, 1, 2, 4, 8)))


def test_embed_renames_variables():
    f = CubicForm(3, [(1, 2, 3)], [(1, 2)], [3])
    g = embed(f, [2, 4, 5], 5)
    assert g == CubicForm(5, [(2, 4, 5)], [(2, 4)], [5])
    for x in range(8):
        packed = (gf2.bit_of(x, 1, 3) << 3) | (gf2.bit_of(x, 2, 3) << 1) | \
            gf2.bit_of(x, 3, 3)
        assert g.eval(packed) == f.eval(x)


def test_multiplier_expansion_matches_pointwise_product():
    rng = np.random.default_rng(13)
    n = 5
    for add_x1 in (False, True):
        for _ in range(5):
            pairs = [t for t in itertools.combinations(range(2, n + 1), 2)
                     if rng.integers(2)]
            singles = [i for i in range(2, n + 1) if rng.integers(2)]
            block = CubicForm(n, (), pairs, singles)
            out = x1_multiplier_expand(block, add_x1)
            for x in range(1 << n):
                x1 = gf2.bit_of(x, 1, n)
                want = ((x1 ^ 1) & block.eval(x)) ^ (x1 if add_x1 else 0)
                assert out.eval(x) == want
    with pytest.raises(AssertionError):
        x1_multiplier_expand(CubicForm(3, (), [(1, 2)]), False)


def test_polarizations_are_symmetric_and_consistent():
    f = make_alpha_pq(1, 2)
    for x in range(8):
        for y in range(8):
            assert beta_polar(f, x, y) == beta_polar(f, y, x)
            assert beta_polar(f, x, x) == 0
            for z in range(8):
                v = phi_polar(f, x, y, z)
                assert v == phi_polar(f, y, x, z) == phi_polar(f, x, z, y)
            assert phi_polar(f, x, x, y) == 0


def test_dense_family_structure():
    for n in (3, 4, 5, 6):
        a = make_alpha_n(n)
        assert len(a.cubic) == comb(n, 3)
        assert len(a.quadratic) == comb(n, 2)
        assert a.linear == frozenset(range(1, n + 1))
        assert make_alpha_pq(0, n) == a
    with pytest.raises(AssertionError):
        make_alpha_n(2)


def test_signature_family_linear_parts():
    for p in range(5):
        q = 4 - p
        f = make_alpha_pq(p, q)
        assert f.linear == frozenset(range(p + 1, 5))
        assert f.cubic == make_alpha_n(4).cubic
    with pytest.raises(AssertionError):
        make_alpha_pq(1, 1)


def test_quadratic_family_structure():
    for n in (1, 2, 5):
        f = make_alpha_cl_n(n)
        assert not f.cubic and len(f.quadratic) == comb(n, 2)
        assert f == make_alpha_cl_pq(0, n)
    f = make_alpha_cl_pq(2, 1)
    assert f.linear == frozenset({3})


def test_block_builders():
    f = make_block_pattern("+-")
    assert f == CubicForm(4, (), [(1, 2), (3, 4)], [3, 4])
    assert make_cl_block_sum(1, 1) == f
    g = make_block_pattern("-", starting_index=3, n=5)
    assert g == CubicForm(5, (), [(3, 4)], [3, 4])
    with pytest.raises(AssertionError):
        make_block_pattern("+*")
    with pytest.raises(AssertionError):
        make_block_pattern("++", n=3)


def test_shift_source_forms():
    src = make_cl_plus2_source(2, 1)
    assert src.n == 5
    assert src.quadratic == frozenset({(1, 2)} | set(
        itertools.combinations((3, 4, 5), 2)))
    assert src.linear == frozenset({3, 4})
    src = make_cl_minus2_source(2, 1)
    assert src.quadratic == frozenset(
        set(itertools.combinations((1, 2, 3), 2)) | {(4, 5)})
    assert src.linear == frozenset({1, 2, 4, 5})


def test_tilde_respects_signature_orbit():
    assert make_tilde(2, 3) == make_tilde(3, 2)
    assert make_tilde(1, 6) == make_tilde(5, 2) == make_tilde(2, 5)
    assert make_tilde(2, 6) == make_tilde(6, 2)
    assert make_tilde(0, 5).n == 5 and make_tilde(5, 0).n == 5
    # the two pure columns differ exactly by the shared linear variable
    assert add_forms(make_tilde(0, 5), make_tilde(5, 0)) == \
        CubicForm(5, (), (), (1,))
    with pytest.raises(AssertionError):
        make_tilde(1, 1)


def test_tilde_base_cases_are_sparse():
    t = make_tilde(0, 3)
    assert t == make_alpha_pq(0, 3)
    t = make_tilde(2, 3)
    assert sorted(t.cubic) == [(1, 2, 3), (1, 4, 5)]
    assert sorted(t.quadratic) == [(1, 4), (1, 5), (2, 3), (4, 5)]
    assert sorted(t.linear) == [1]
    for n in range(3, 12):
        for p in range(n + 1):
            assert make_tilde(p, n - p).n == n


def test_zero_count_and_weight_rule():
    for n in (3, 4, 5, 6, 7, 8):
        assert weight_rule_check(n)
        want = sum(comb(n, w) for w in range(0, n + 1, 4))
        assert zero_count(make_alpha_n(n)) == want


def test_profile_is_invariant_and_separating():
    rng = np.random.default_rng(14)
    base = make_alpha_pq(1, 3)
    prof = invariant_profile(base)
    for _ in range(4):
        G = gf2.random_invertible(4, rng)
        assert invariant_profile(substitute(base, G)) == prof
    assert invariant_profile(make_alpha_pq(0, 4)) != prof


def test_graph_round_trip_and_dot_output():
    form = make_tilde(2, 3)
    g = to_graph(form)
    assert g.triangles == form.cubic
    assert g.edges == form.quadratic
    assert g.filled == form.linear
    assert g.to_form() == form
    assert TriGraph(form.n, form.linear, form.quadratic, form.cubic) == g
    dot = graph_to_dot(g)
    assert dot.startswith("graph cubic_form {")
    assert dot.count("// triangle") == len(form.cubic)
    assert dot.count("[style=filled]") == len(form.linear)
    assert dot.count(" -- ") == len(form.quadratic) + 3 * len(form.cubic)


def test_form_json_round_trip():
    f = make_tilde(2, 3)
    obj = f.to_json()
    assert obj["n"] == 5 and obj["cubic"] == [[1, 2, 3], [1, 4, 5]]
    assert CubicForm.from_json(obj) == f
