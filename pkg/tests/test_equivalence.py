"""Transform transcriptions, searches, witness chains, and the stored links."""

import numpy as np
import pytest

from z2twist import gf2
from z2twist.equivalence import (
    Equivalent, Inequivalent, Link, TransformRecipe, Unknown,
    brute_force_search, build_transform, cl_block_equivalences, compose_chain,
    exhaustive_signature_classes, find_stored_witness, heuristic_search,
    load_witness_store, odd_class_rep, profile_screen, reduction_stages,
    tilde_chain, tilde_equivalence, verify_equivalence, witness_key,
)
from z2twist.forms import (
    CubicForm, make_alpha_cl_pq, make_alpha_pq, make_cl_minus2_source,
    make_cl_plus2_source, make_tilde, substitute,
)

# each named transformation at its smallest legal parameters, hand-expanded
# from the closed row patterns into explicit coordinate rows
_GOLDEN_ROWS = {
    ("cliff_plus2", (("p", 1), ("q", 0))): ["101", "011", "001"],
    ("cliff_minus2", (("p", 1), ("q", 0))): ["100", "110", "101"],
    ("lemma_4k", (("k", 1),)): ["1001", "1101", "1011", "0001"],
    ("lemma_4k_even", (("k", 1),)): ["0001", "1101", "1011", "1001"],
    ("lemma_4k2", (("k", 1),)): [
        "000001", "100001", "010001", "001001", "111101", "111011"],
    ("lemma_4k3_odd", (("k", 1),)): [
        "0001100", "0101000", "0011000", "0001000", "1110101", "1110110",
        "1110111"],
    ("lemma_4k3_even", (("k", 1),)): [
        "0001001", "0001100", "0001010", "0001000", "1010111", "1100111",
        "1110111"],
    ("lemma_4k1_odd", (("k", 2),)): [
        "100010000", "110000000", "101000000", "100100000", "111111111",
        "011111101", "011111011", "011110111", "011111110"],
    ("lemma_4k1_even", (("k", 2),)): [
        "100000001", "100000010", "100000100", "100001000", "111111111",
        "001111111", "010111111", "011011111", "011101111"],
    ("post_row2", (("n", 3),)): ["100", "110", "001"],
    ("post_last", (("n", 3),)): ["100", "010", "101"],
    ("o23_flip", ()): ["10000", "00111", "01011", "01101", "01110"],
    ("final_flip", (("p", 1), ("q", 2))): [
        "1000000", "0100000", "0010000", "0000001", "1001101", "1001011",
        "0001000"],
}


def test_recipe_transcriptions_match_goldens():
    for (name, params), rows in _GOLDEN_ROWS.items():
        M = build_transform(name, **dict(params))
        assert M.to_json()["rows"] == rows, f"transcription drifted: {name}"
        assert gf2.is_invertible(M)


def test_recipes_build_invertible_matrices_at_larger_parameters():
    for name, params in (
            ("cliff_plus2", dict(p=3, q=2)), ("cliff_minus2", dict(p=2, q=3)),
            ("lemma_4k", dict(k=2)), ("lemma_4k_even", dict(k=2)),
            ("lemma_4k2", dict(k=2)), ("lemma_4k3_odd", dict(k=2)),
            ("lemma_4k3_even", dict(k=2)), ("lemma_4k1_odd", dict(k=3)),
            ("lemma_4k1_even", dict(k=3)), ("post_row2", dict(n=6)),
            ("post_last", dict(n=6)), ("final_flip", dict(p=2, q=2))):
        assert gf2.is_invertible(build_transform(name, **params))


def test_recipe_parameter_validation():
    with pytest.raises(ValueError):
        TransformRecipe("no_such_recipe")
    with pytest.raises(ValueError):
        build_transform("lemma_4k", k=0)
    with pytest.raises(ValueError):
        build_transform("lemma_4k1_odd", k=1)
    with pytest.raises(ValueError):
        build_transform("post_row2", n=1)


def test_shift_transforms_are_involutions_and_verify():
    for (p, q) in ((1, 0), (0, 1), (2, 1), (2, 2)):
        n = p + q
        M = build_transform("cliff_plus2", p=p, q=q)
        assert gf2.mat_mul(M, M) == gf2.identity(n + 2)
        assert verify_equivalence(make_alpha_cl_pq(p + 2, q),
                                  make_cl_plus2_source(p, q), M)
        M = build_transform("cliff_minus2", p=p, q=q)
        assert gf2.mat_mul(M, M) == gf2.identity(n + 2)
        assert verify_equivalence(make_alpha_cl_pq(p, q + 2),
                                  make_cl_minus2_source(p, q), M)


def test_balanced_flip_statements():
    M = build_transform("o23_flip")
    assert gf2.mat_mul(M, M) == gf2.identity(5)
    base = make_tilde(2, 3)
    image = substitute(base, M)
    assert image == CubicForm(
        5, [(1, 2, 3), (1, 4, 5)], [(1, 2), (1, 3), (2, 3), (4, 5)],
        [1, 2, 3, 4, 5])
    assert verify_equivalence(base, image, M)
    relabeled = CubicForm(
        5, [(1, 2, 3), (1, 4, 5)], [(1, 4), (1, 5), (2, 3), (4, 5)],
        [1, 2, 3, 4, 5])
    swap = gf2.mat_from_rows_1based(5, [[1], [4], [5], [2], [3]])
    assert verify_equivalence(base, relabeled, gf2.mat_mul(swap, M))
    assert not verify_equivalence(base, relabeled, M)


def test_verify_equivalence_input_validation():
    f3, f4 = make_alpha_pq(0, 3), make_alpha_pq(0, 4)
    with pytest.raises(ValueError):
        verify_equivalence(f3, f4, gf2.identity(3))
    with pytest.raises(ValueError):
        verify_equivalence(f3, f3, gf2.GF2Matrix(3, (1, 1, 4)))


def test_witnesses_compose_and_invert():
    rng = np.random.default_rng(30)
    base = make_alpha_pq(1, 3)
    for _ in range(5):
        G1 = gf2.random_invertible(4, rng)
        G2 = gf2.random_invertible(4, rng)
        a = substitute(base, G1)          # a(x) = base(G1 x)
        b = substitute(a, G2)             # b(x) = a(G2 x)
        assert verify_equivalence(a, base, G1)
        assert verify_equivalence(base, a, gf2.mat_invert(G1))
        assert verify_equivalence(b, base, gf2.mat_mul(G1, G2))


def test_profile_screen_and_verdict_serialization():
    v = profile_screen(make_alpha_pq(0, 4), make_alpha_pq(2, 2))
    assert isinstance(v, Inequivalent)
    obj = v.to_json()
    assert obj["verdict"] == "inequivalent" and obj["invariant"] in (
        "zero_count", "derivative_zero_multiset", "radical_dim",
        "slice_rank_multiset")
    assert profile_screen(make_alpha_pq(0, 4), make_alpha_pq(0, 4)) is None
    assert Unknown(17).to_json() == {"verdict": "unknown", "budget_spent": 17}


def test_exhaustive_search_decides_small_dimensions():
    v = brute_force_search(make_alpha_pq(3, 0), make_alpha_pq(1, 2))
    assert isinstance(v, Equivalent)
    assert verify_equivalence(make_alpha_pq(3, 0), make_alpha_pq(1, 2),
                              v.witness)
    v = brute_force_search(make_alpha_pq(0, 3), make_alpha_pq(2, 1))
    assert isinstance(v, Inequivalent)
    with pytest.raises(ValueError):
        brute_force_search(make_alpha_pq(0, 6), make_alpha_pq(1, 5))
    with pytest.raises(ValueError):
        brute_force_search(make_alpha_pq(0, 3), make_alpha_pq(0, 4))


def test_hillclimb_agrees_with_exhaustive_at_small_sizes():
    pairs3 = [((p, 3 - p), (r, 3 - r)) for p in range(4) for r in range(p, 4)]
    for (a, b) in pairs3:
        brute = brute_force_search(make_alpha_pq(*a), make_alpha_pq(*b))
        climb = heuristic_search(make_alpha_pq(*a), make_alpha_pq(*b), seed=5)
        assert type(brute) is type(climb), f"verdicts split at {a} vs {b}"
    for (a, b) in (((2, 2), (4, 0)), ((1, 3), (3, 1)), ((0, 4), (1, 3))):
        brute = brute_force_search(make_alpha_pq(*a), make_alpha_pq(*b))
        climb = heuristic_search(make_alpha_pq(*a), make_alpha_pq(*b), seed=5)
        assert type(brute) is type(climb), f"verdicts split at {a} vs {b}"


def test_hillclimb_budget_exhaustion_returns_unknown():
    v = heuristic_search(make_alpha_pq(2, 2), make_alpha_pq(4, 0), budget=1)
    assert isinstance(v, Unknown) and v.search_budget_spent >= 1


def test_hillclimb_accepts_a_starting_point():
    lhs, rhs = make_alpha_pq(2, 2), make_alpha_pq(4, 0)
    found = heuristic_search(lhs, rhs, seed=0)
    assert isinstance(found, Equivalent)
    again = heuristic_search(lhs, rhs, seed=9, start=found.witness)
    assert isinstance(again, Equivalent) and again.witness == found.witness


def test_signature_partition_at_three_and_four():
    assert exhaustive_signature_classes(3) == [
        [(0, 3)], [(1, 2), (2, 1), (3, 0)]]
    assert exhaustive_signature_classes(4) == [
        [(0, 4)], [(1, 3), (3, 1)], [(2, 2), (4, 0)]]


def test_stage_routing_labels():
    assert reduction_stages(0, 3) == [] and reduction_stages(2, 3) == []
    for (p, q), want in (
            ((0, 6), ["recipe:lemma_4k2(k=1)"]),
            ((0, 7), ["recipe:lemma_4k3_odd(k=1)"]),
            ((0, 8), ["recipe:lemma_4k(k=2)",
                      "recipe:lemma_4k3_odd(k=1)|fixed_last"]),
            ((2, 6), ["recipe:lemma_4k_even(k=2)",
                      "recipe:lemma_4k3_odd(k=1)|fixed_last"]),
            ((0, 9), ["recipe:lemma_4k1_even(k=2)"]),
            ((4, 5), ["recipe:lemma_4k1_even(k=2)+post_row2"]),
            ((2, 7), ["recipe:lemma_4k1_odd(k=2)+post_last"]),
            ((0, 10), ["recipe:lemma_4k2(k=2)",
                       "recipe:lemma_4k1_even(k=2)|fixed_last"]),
            ((0, 11), ["recipe:lemma_4k3_even(k=2)"])):
        assert [l for l, _ in reduction_stages(p, q)] == want, f"at {(p, q)}"


def test_stages_produce_multiplier_shaped_cubic_parts():
    # after the staged substitutions every remaining cubic monomial contains
    # variable 1, which is what the final stored hops rely on
    for n in range(6, 12):
        for (p, q) in [(0, n), (1, n - 1), (n // 2, n - n // 2)]:
            current = make_alpha_pq(p, q)
            for _, M in reduction_stages(p, q):
                current = substitute(current, M)
            assert all(1 in t for t in current.cubic), f"stage shape {(p, q)}"


def test_odd_class_representatives():
    assert odd_class_rep(0, 7) == (0, 7)
    assert odd_class_rep(3, 4) == (3, 4)
    assert odd_class_rep(0, 9) == (0, 9)
    assert odd_class_rep(1, 8) == (4, 5)
    assert odd_class_rep(2, 7) == (2, 7)
    assert odd_class_rep(4, 5) == (4, 5)


def test_identity_chain_for_coinciding_forms():
    links = tilde_chain(0, 3)
    assert len(links) == 1 and links[0].provenance == "recipe:identity"
    assert links[0].witness == gf2.identity(3)


def test_chains_verify_and_compose():
    for (p, q) in ((0, 5), (2, 3), (0, 7), (1, 7), (4, 5)):
        links = tilde_chain(p, q)
        for link in links:
            assert link.verify()
        G = compose_chain(links)
        assert verify_equivalence(make_alpha_pq(p, q), make_tilde(p, q), G)
        assert tilde_equivalence(p, q) == G
    with pytest.raises(ValueError):
        tilde_chain(1, 1)


def test_final_hops_use_stored_search_witnesses():
    links = tilde_chain(0, 7)
    assert links[-1].provenance.startswith("search:")
    stored = find_stored_witness(links[-1].lhs, links[-1].rhs)
    assert stored is not None and stored[0] == links[-1].witness


def test_compose_chain_rejects_broken_chains():
    a = tilde_chain(0, 5)[0]
    b = tilde_chain(0, 6)[0]
    with pytest.raises(AssertionError):
        compose_chain([a, b])


def test_witness_store_keys_and_misses():
    lhs, rhs = make_alpha_pq(0, 5), make_tilde(0, 5)
    assert witness_key(lhs, rhs) == witness_key(lhs, rhs)
    assert witness_key(lhs, rhs) != witness_key(rhs, lhs)
    assert find_stored_witness(lhs, make_alpha_pq(0, 5)) is None
    store = load_witness_store()
    assert len(store) >= 70
    for entry in store.values():
        assert set(entry) == {"lhs", "rhs", "witness", "provenance"}


def test_stored_witnesses_all_verify():
    for key, entry in load_witness_store().items():
        link = Link(CubicForm.from_json(entry["lhs"]),
                    CubicForm.from_json(entry["rhs"]),
                    gf2.GF2Matrix.from_json(entry["witness"]),
                    entry["provenance"])
        assert link.verify(), f"stored witness {key} failed"
        assert witness_key(link.lhs, link.rhs) == key


def test_block_decompositions():
    links = cl_block_equivalences(1)
    assert [l.provenance for l in links] == ["recipe:identity"] * 2
    for k in (2, 3):
        links = cl_block_equivalences(k)
        assert len(links) == 2
        for link in links:
            assert link.provenance.startswith("search:")
            assert link.verify()
    with pytest.raises(ValueError):
        cl_block_equivalences(4)
