"""Labeled self-check battery covering every verified statement family.

Each check is named by the statement it verifies and freezes independently
derived values (sign tables, counts, stage labels) as literals, so a silent
regression in any construction fails the matching check by name.  Levels:
"quick" runs every check at small sizes in a few seconds; "full" re-runs the
battery at the sizes the test suite uses.
"""

import itertools
import time
from math import comb

import numpy as np

from . import gf2
from .algebra import (
    GradedAlgebra, TwistingTable, check_generating_axioms,
    check_graded_alternative, check_graded_associative,
    check_graded_commutative, check_phi_zero, extract_generating,
    generator_square, multiply_basis, twist_from_form, twist_standard,
)
from .equivalence import (
    Equivalent, Inequivalent, brute_force_search, build_transform,
    cl_block_equivalences, exhaustive_signature_classes, heuristic_search,
    profile_screen, reduction_stages, tilde_equivalence, verify_equivalence,
)
from .forms import (
    CubicForm, graph_to_dot, invariant_profile, make_alpha_cl_n,
    make_alpha_cl_pq, make_alpha_n, make_alpha_pq, make_cl_block_sum,
    make_cl_minus2_source, make_cl_plus2_source, make_tilde, substitute,
    to_graph, weight_rule_check, zero_count,
)
from .periodicity import (
    EXCLUDED_MIXED, GlueSpec, classify_signature, glue_algebras, glue_forms,
    is_simple, r2_factor_link, r2_glue_factor, verify_complex_periodicity,
    verify_o23_tensor_lemma, verify_real_periodicity,
)

# frozen sign tables of the two smallest named algebras (rows indexed by x,
# columns by y, bit = 1 for a negative product)
_H_ROWS = ("0000", "0101", "0110", "0011")
_O_ROWS = ("00000000", "01010101", "01100110", "00111100",
           "01101001", "00001111", "01011010", "00110011")

# signatures with a non-simple algebra, total dimension up to 8
_NON_SIMPLE = frozenset(
    {(0, 4), (2, 2), (4, 0), (0, 8), (2, 6), (4, 4), (6, 2), (8, 0)})


def _table_rows(f):
    return tuple("".join("01"[b] for b in row) for row in f.bits)


def _signatures(n):
    return [(p, n - p) for p in range(n + 1)]


# ---------------------------------------------------------------------------
# the checks; each takes the level and returns a one-line detail


def _check_construction(level):
    O = twist_standard("O")
    assert _table_rows(O) == _O_ROWS, "octonion sign table drifted"
    assert O.is_unital(), "twisting not unital"
    assert multiply_basis(O, 0, 5) == (1, 5), "unit row broken"
    assert multiply_basis(O, 4, 4) == (-1, 0), "first generator square"
    assert multiply_basis(O, 4, 2) == (-1, 6), "generator product sign"
    assert multiply_basis(O, 2, 4) == (1, 6), "anticommuting pair"
    alg = GradedAlgebra(3, O, "real", (0, 3))
    assert generator_square(alg, 1) == -1
    # every single-cell corruption of the frozen table is visible
    mutants = 0
    for x in range(8):
        for y in range(8):
            bits = O.bits.copy()
            bits[x, y] ^= 1
            if _table_rows(TwistingTable(3, bits)) != _O_ROWS:
                mutants += 1
    assert mutants == 64, "frozen table misses mutations"
    return "8x8 sign table frozen; 64/64 cell mutations visible"


def _check_graded_laws(level):
    totals = (3, 4) if level == "quick" else (3, 4, 6)
    checked = 0
    for n in totals:
        for (p, q) in _signatures(n):
            f = twist_from_form(make_alpha_pq(p, q))
            assert check_graded_commutative(f), f"commutativity at {(p, q)}"
            assert check_graded_associative(f), f"associativity at {(p, q)}"
            assert check_graded_alternative(f), f"alternativity at {(p, q)}"
            assert not check_phi_zero(f), f"cubic family has zero phi {(p, q)}"
            checked += 1
    cl = twist_standard("Cl_pq", p=1, q=2)
    assert check_phi_zero(cl), "bilinear twisting must have zero phi"
    assert check_graded_commutative(cl) and check_graded_associative(cl)
    bad = twist_from_form(make_alpha_pq(0, 3)).bits.copy()
    bad[4, 2] ^= 1
    assert not check_graded_commutative(TwistingTable(3, bad)), \
        "corrupted table passed commutativity"
    return f"{checked} signatures pass all graded laws; corruption caught"


def _check_uniqueness(level):
    form = make_alpha_pq(0, 3)
    f = twist_from_form(form)
    assert extract_generating(f) == form, "round-trip lost the form"
    caught = 0
    for x in range(8):
        for y in range(8):
            bits = f.bits.copy()
            bits[x, y] ^= 1
            axioms = check_generating_axioms(TwistingTable(3, bits), form)
            if not all(axioms.values()):
                caught += 1
    assert caught == 64, f"axioms missed {64 - caught} single-cell mutations"
    return "table rigid: 64/64 single-cell mutations break an axiom"


def _check_classification(level):
    assert classify_signature(2, 2) == [(2, 2), (4, 0)]
    assert classify_signature(1, 2) == [(1, 2), (2, 1), (3, 0)]
    assert classify_signature(0, 3) == [(0, 3)]
    assert not is_simple(2, 2)
    for n in (3,) if level == "quick" else (3, 4):
        want = exhaustive_signature_classes(n)
        got = sorted({tuple(classify_signature(p, q))
                      for (p, q) in _signatures(n)})
        got = [list(c) for c in got]
        assert got == want, f"partition mismatch at n={n}: {got} vs {want}"
    return "orbit classes match the exhaustive GL sweep"


def _check_simplicity(level):
    top = 6 if level == "quick" else 8
    for n in range(3, top + 1):
        for (p, q) in _signatures(n):
            assert is_simple(p, q) == ((p, q) not in _NON_SIMPLE), \
                f"simplicity flag drifted at {(p, q)}"
            cls = classify_signature(p, q)
            assert len({is_simple(*s) for s in cls}) == 1, \
                f"simplicity not constant on the class of {(p, q)}"
    try:
        is_simple(1, 1)
        raise AssertionError("dimension guard missing")
    except ValueError:
        pass
    return f"frozen flags and class constancy up to dimension {top}"


def _check_axioms(level):
    totals = (3, 4, 5) if level == "quick" else (3, 4, 5, 9)
    last = None
    for n in totals:
        for (p, q) in _signatures(n):
            form = make_alpha_pq(p, q)
            axioms = check_generating_axioms(twist_from_form(form), form)
            assert all(axioms.values()), f"axiom failed at {(p, q)}: {axioms}"
            last = (p, q)
    cl = make_alpha_cl_pq(2, 3)
    assert all(check_generating_axioms(twist_from_form(cl), cl).values())
    # targeted corruptions are caught by the expected named axioms
    form = make_alpha_pq(0, 3)
    f = twist_from_form(form)
    outcomes = {
        ((5, 5),): {"diagonal": False, "pairs": True, "triples": False},
        ((4, 2),): {"diagonal": True, "pairs": False, "triples": False},
        ((3, 5), (5, 3)): {"diagonal": True, "pairs": True, "triples": False},
    }
    for cells, want in outcomes.items():
        bits = f.bits.copy()
        for (x, y) in cells:
            bits[x, y] ^= 1
        got = check_generating_axioms(TwistingTable(3, bits), form)
        assert got == want, f"corruption {cells} gave {got}"
    return f"all three axioms hold through {last}; corruptions named correctly"


def _check_monomial_procedure(level):
    assert _table_rows(twist_standard("H")) == _H_ROWS
    assert twist_standard("H") == twist_from_form(make_alpha_cl_pq(0, 2))
    assert twist_standard("O") == twist_from_form(make_alpha_pq(0, 3))
    assert twist_standard("O_n", n=4) == twist_from_form(make_alpha_n(4))
    assert twist_standard("O_pq", p=1, q=2) == twist_from_form(make_alpha_pq(1, 2))
    assert twist_standard("Cl_n", n=3) == twist_from_form(make_alpha_cl_n(3))
    assert twist_standard("Cl_pq", p=2, q=1) == twist_from_form(make_alpha_cl_pq(2, 1))
    n, rounds = (5, 10) if level == "quick" else (6, 25)
    rng = np.random.default_rng(20260815)
    triples = list(itertools.combinations(range(1, n + 1), 3))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for _ in range(rounds):
        form = CubicForm(
            n,
            [t for t in triples if rng.integers(2)],
            [t for t in pairs if rng.integers(2)],
            [i for i in range(1, n + 1) if rng.integers(2)])
        assert extract_generating(twist_from_form(form)) == form, \
            f"round-trip failed for {form}"
    return f"{rounds} random degree-3 forms round-trip at n={n}"


def _check_standard_forms(level):
    for n in range(3, 7):
        a = make_alpha_n(n)
        c = n * (n - 1) * (n - 2) // 6 + n * (n - 1) // 2 + n
        assert a.monomial_count() == c and a.degree() == 3
        assert make_alpha_pq(0, n) == a
        assert make_alpha_cl_pq(0, n) == make_alpha_cl_n(n)
        assert make_alpha_cl_n(n).degree() == 2
    for (p, q) in _signatures(4) if level == "quick" else _signatures(7):
        n = p + q
        assert make_alpha_pq(p, q).linear == frozenset(range(p + 1, n + 1))
        f = twist_from_form(make_alpha_pq(p, q))
        for i in range(1, n + 1):
            want = 1 if i <= p else -1
            assert generator_square(f, i) == want, f"square at {(p, q)}, {i}"
    src = make_cl_plus2_source(1, 2)
    assert (src.n, sorted(src.quadratic), sorted(src.linear)) == \
        (5, [(1, 2), (3, 4), (3, 5), (4, 5)], [3])
    src = make_cl_minus2_source(1, 2)
    assert (src.n, sorted(src.quadratic), sorted(src.linear)) == \
        (5, [(1, 2), (1, 3), (2, 3), (4, 5)], [1, 4, 5])
    assert make_cl_block_sum(1, 1) == CubicForm(
        4, (), [(1, 2), (3, 4)], [3, 4])
    return "family structure, signature squares and block sums frozen"


def _check_weight_rule(level):
    top = 8 if level == "quick" else 11
    for n in range(3, top + 1):
        assert weight_rule_check(n), f"weight rule fails at n={n}"
        want = sum(comb(n, w) for w in range(0, n + 1, 4))
        assert zero_count(make_alpha_n(n)) == want, f"zero count at n={n}"
    return f"dense family vanishes exactly on weight 0 mod 4 up to n={top}"


def _check_form_equivalence(level):
    rng = np.random.default_rng(7)
    rounds = 3 if level == "quick" else 6
    base = make_alpha_pq(2, 3)
    for _ in range(rounds):
        G = gf2.random_invertible(5, rng)
        moved = substitute(base, G)
        assert verify_equivalence(moved, base, G), "substitution witness"
        assert invariant_profile(moved) == invariant_profile(base), \
            "profile not invariant under substitution"
    v = brute_force_search(make_alpha_pq(0, 3), make_alpha_pq(1, 2))
    assert isinstance(v, Inequivalent), "exhaustive sweep missed a split"
    v = heuristic_search(make_alpha_pq(2, 2), make_alpha_pq(4, 0), seed=0)
    assert isinstance(v, Equivalent), "hill-climb missed a known witness"
    assert v.to_json()["verdict"] == "equivalent"
    v = heuristic_search(make_alpha_pq(2, 3), make_alpha_pq(0, 5), seed=0)
    assert isinstance(v, Inequivalent), "screen missed an invariant split"
    if level == "full":
        v = brute_force_search(make_alpha_pq(0, 4), make_alpha_pq(1, 3))
        assert isinstance(v, Inequivalent), "exhaustive sweep missed a split"
    screen = profile_screen(make_alpha_pq(0, 3), make_alpha_pq(0, 3))
    assert screen is None, "screen separated a form from itself"
    return "witness checks, invariance, and both search verdicts agree"


def _check_complex_periodicity(level):
    totals = (3,) if level == "quick" else (3, 4, 5, 6, 7)
    for n in totals:
        report = verify_complex_periodicity(n)
        assert report["final_composed_check"] is True
        assert report["statements"][0]["sparse_glue_syntactic"] is True
    return f"composed chains verified at total dimension {list(totals)}"


def _check_real_periodicity(level):
    sigs = ((0, 3), (1, 2)) if level == "quick" else (
        (0, 3), (3, 0), (1, 2), (2, 1), (0, 4), (4, 0), (2, 2), (1, 3))
    for (p, q) in sigs:
        report = verify_real_periodicity(p, q)
        assert report["final_composed_check"] is True
        want = 1 if p == 0 or q == 0 else 2
        assert len(report["statements"]) == want, f"statement count {(p, q)}"
    for (p, q) in EXCLUDED_MIXED:
        try:
            verify_real_periodicity(p, q)
            raise AssertionError("excluded signature accepted")
        except ValueError:
            pass
    return f"{len(sigs)} signatures verified; excluded pair rejected"


def _check_tensor_subalgebra(level):
    assert glue_forms(make_tilde(2, 3), make_tilde(2, 3)) == make_tilde(4, 5)
    assert glue_forms(make_tilde(0, 3), make_tilde(0, 5)) == make_tilde(0, 7)
    assert glue_forms(make_tilde(3, 0), make_tilde(5, 0),
                      corrected=False) == make_tilde(7, 0)
    for (p, q) in ((1, 2), (2, 1), (2, 2), (1, 3)):
        c = glue_forms(make_tilde(p, q), make_tilde(2, 3))
        r = glue_forms(make_tilde(p, q), r2_glue_factor(), corrected=False)
        assert c == r == make_tilde(p + 2, q + 2), f"glue split at {(p, q)}"
    factor = r2_glue_factor()
    assert generator_square(twist_from_form(factor), 1) == 1
    assert generator_square(twist_from_form(make_tilde(2, 3)), 1) == -1
    assert r2_factor_link().verify()
    detail = "both glue conventions reproduce the targets syntactically"
    if level == "full":
        spec = GlueSpec(make_alpha_pq(0, 3), make_alpha_pq(0, 5))
        plain = glue_algebras(spec, "plain")
        braided = glue_algebras(spec, "braided")
        assert not plain.well_defined and not braided.well_defined
        assert plain.diagnostics["zero_count"] == 100
        assert braided.diagnostics["zero_count"] == 68
        assert zero_count(make_alpha_pq(0, 7)) == 36
        detail += "; section-product diagnostics frozen"
    return detail


def _check_cliff_transforms(level):
    sigs = ((1, 0), (0, 1), (1, 1), (1, 2)) if level == "quick" else (
        (1, 0), (0, 1), (1, 1), (1, 2), (2, 1), (2, 2), (0, 3), (3, 2), (3, 3))
    for (p, q) in sigs:
        n = p + q
        M = build_transform("cliff_plus2", p=p, q=q)
        assert gf2.mat_mul(M, M) == gf2.identity(n + 2), "plus-2 involution"
        assert verify_equivalence(make_alpha_cl_pq(p + 2, q),
                                  make_cl_plus2_source(p, q), M), \
            f"plus-2 shift failed at {(p, q)}"
        M = build_transform("cliff_minus2", p=p, q=q)
        assert gf2.mat_mul(M, M) == gf2.identity(n + 2), "minus-2 involution"
        assert verify_equivalence(make_alpha_cl_pq(p, q + 2),
                                  make_cl_minus2_source(p, q), M), \
            f"minus-2 shift failed at {(p, q)}"
    return f"both shift transforms verified at {len(sigs)} signatures"


def _check_graphs(level):
    form = make_tilde(0, 5)
    g = to_graph(form)
    assert len(g.triangles) == 2, "triangle count drifted"
    assert g.filled == frozenset({1, 4, 5})
    assert g.to_form() == form, "graph round-trip lost the form"
    dot = graph_to_dot(g)
    assert dot.count("// triangle") == 2
    assert "v1 [style=filled];" in dot and "v2 [style=solid];" in dot
    assert to_graph(g.to_form()) == g
    return "graph encoding round-trips; DOT output frozen"


def _check_tilde_family(level):
    assert make_tilde(2, 3) == make_tilde(3, 2)
    assert make_tilde(1, 6) == make_tilde(5, 2)
    assert make_tilde(2, 6) == make_tilde(6, 2)
    assert zero_count(make_tilde(2, 3)) == 18
    assert zero_count(make_tilde(0, 5)) == 6
    for (p, q) in ((3, 4), (4, 5), (3, 5)):
        assert make_tilde(p, q) == glue_forms(make_tilde(p - 2, q - 2),
                                              make_tilde(2, 3)), \
            f"mixed recursion failed at {(p, q)}"
    for q in (7, 8, 9):
        assert make_tilde(0, q) == glue_forms(make_tilde(0, q - 4),
                                              make_tilde(0, 5)), \
            f"pure recursion failed at {(0, q)}"
    top = 7 if level == "quick" else 11
    count = 0
    for n in range(3, top + 1):
        for (p, q) in _signatures(n):
            tilde_equivalence(p, q)
            count += 1
    return f"recursions hold; {count} composed normal-form witnesses verified"


def _check_reduction_4k(level):
    assert [l for l, _ in reduction_stages(0, 8)] == [
        "recipe:lemma_4k(k=2)", "recipe:lemma_4k3_odd(k=1)|fixed_last"]
    assert [l for l, _ in reduction_stages(2, 6)] == [
        "recipe:lemma_4k_even(k=2)", "recipe:lemma_4k3_odd(k=1)|fixed_last"]
    sigs = ((0, 8),) if level == "quick" else ((0, 8), (2, 6), (4, 4), (1, 7))
    for (p, q) in sigs:
        tilde_equivalence(p, q)
    for k in (1, 2):
        assert gf2.is_invertible(build_transform("lemma_4k", k=k))
        assert gf2.is_invertible(build_transform("lemma_4k_even", k=k))
    return f"stage labels frozen; chains verified at {list(sigs)}"


def _check_reduction_4k2(level):
    assert [l for l, _ in reduction_stages(0, 6)] == ["recipe:lemma_4k2(k=1)"]
    assert [l for l, _ in reduction_stages(0, 10)] == [
        "recipe:lemma_4k2(k=2)", "recipe:lemma_4k1_even(k=2)|fixed_last"]
    assert [l for l, _ in reduction_stages(2, 8)] == [
        "recipe:lemma_4k2(k=2)",
        "recipe:lemma_4k1_even(k=2)+post_row2|fixed_last"]
    sigs = ((0, 6), (3, 3)) if level == "quick" else (
        (0, 6), (3, 3), (0, 10), (2, 8), (5, 5))
    for (p, q) in sigs:
        tilde_equivalence(p, q)
    return f"stage labels frozen; chains verified at {list(sigs)}"


def _check_reduction_4k3(level):
    assert [l for l, _ in reduction_stages(0, 7)] == [
        "recipe:lemma_4k3_odd(k=1)"]
    assert [l for l, _ in reduction_stages(0, 11)] == [
        "recipe:lemma_4k3_even(k=2)"]
    sigs = ((0, 7), (3, 4)) if level == "quick" else (
        (0, 7), (3, 4), (0, 11), (5, 6))
    for (p, q) in sigs:
        tilde_equivalence(p, q)
    return f"stage labels frozen; chains verified at {list(sigs)}"


def _check_reduction_4k1(level):
    assert [l for l, _ in reduction_stages(0, 9)] == [
        "recipe:lemma_4k1_even(k=2)"]
    assert [l for l, _ in reduction_stages(4, 5)] == [
        "recipe:lemma_4k1_even(k=2)+post_row2"]
    assert [l for l, _ in reduction_stages(2, 7)] == [
        "recipe:lemma_4k1_odd(k=2)+post_last"]
    sigs = ((0, 9),) if level == "quick" else ((0, 9), (4, 5), (2, 7), (1, 8))
    for (p, q) in sigs:
        tilde_equivalence(p, q)
    return f"stage labels frozen; chains verified at {list(sigs)}"


def _check_cl_blocks(level):
    ks = (1, 2) if level == "quick" else (1, 2, 3)
    for k in ks:
        links = cl_block_equivalences(k)
        assert len(links) == 2, f"link count at k={k}"
        for link in links:
            assert link.verify(), f"block link failed at k={k}"
        want = "recipe:identity" if k == 1 else "search:"
        assert all(l.provenance.startswith(want) for l in links), \
            f"provenance drifted at k={k}"
    return f"block decompositions verified for k in {list(ks)}"


def _check_balanced_flip(level):
    M = build_transform("o23_flip")
    assert gf2.mat_mul(M, M) == gf2.identity(5), "flip is not an involution"
    base = make_tilde(2, 3)
    image = substitute(base, M)
    assert image == CubicForm(
        5, [(1, 2, 3), (1, 4, 5)], [(1, 2), (1, 3), (2, 3), (4, 5)],
        [1, 2, 3, 4, 5]), "flip image drifted"
    assert verify_equivalence(base, image, M), "flip statement (direct)"
    figure = CubicForm(
        5, [(1, 2, 3), (1, 4, 5)], [(1, 4), (1, 5), (2, 3), (4, 5)],
        [1, 2, 3, 4, 5])
    swap = gf2.mat_from_rows_1based(5, [[1], [4], [5], [2], [3]])
    assert verify_equivalence(base, figure, gf2.mat_mul(swap, M)), \
        "flip statement (relabeled)"
    assert not verify_equivalence(base, figure, M), \
        "the two flip targets must differ without the relabeling"
    return "involution, image form, and both flip statements verified"


def _check_tensor_comparison(level):
    report = verify_o23_tensor_lemma()
    assert report["tensor_square_syntactic"] is True
    checks = report["flip_checks"]
    assert [c["signature"] for c in checks] == [[1, 2], [2, 2], [1, 3]]
    assert all(c["glued_forms_match"] and c["fixes_head_coordinates"]
               for c in checks)
    assert report["alternative_points"] == 512
    return "three glued flips, the tensor square, and the 9-variable route"


CHECKS = (
    ("twisted-group-algebra-construction", _check_construction),
    ("graded-commutativity-and-associativity", _check_graded_laws),
    ("generators-relations-uniqueness", _check_uniqueness),
    ("signature-classification", _check_classification),
    ("simplicity-criterion", _check_simplicity),
    ("generating-function-axioms", _check_axioms),
    ("monomial-to-twisting-procedure", _check_monomial_procedure),
    ("standard-cubic-forms", _check_standard_forms),
    ("weight-rule", _check_weight_rule),
    ("form-equivalence", _check_form_equivalence),
    ("complex-periodicity", _check_complex_periodicity),
    ("real-periodicity", _check_real_periodicity),
    ("tensor-over-2dim-subalgebra", _check_tensor_subalgebra),
    ("clifford-signature-shift-transforms", _check_cliff_transforms),
    ("triangulated-graphs", _check_graphs),
    ("tilde-forms-and-recursions", _check_tilde_family),
    ("dimension-4k-reduction", _check_reduction_4k),
    ("dimension-4k2-reduction", _check_reduction_4k2),
    ("dimension-4k3-reduction", _check_reduction_4k3),
    ("dimension-4k1-reduction", _check_reduction_4k1),
    ("clifford-block-lemma", _check_cl_blocks),
    ("balanced-flip-lemma", _check_balanced_flip),
    ("tensor-convention-comparison", _check_tensor_comparison),
)


def anchor_labels():
    """The check labels, in battery order (each appears exactly once)."""
    return tuple(label for label, _ in CHECKS)


def run_selftest(level="quick", labels=None):
    """Run the battery and return one row dict per check.

    AssertionError marks the row FAIL; other exceptions propagate, since they
    indicate a broken harness rather than a failed verification.
    """
    assert level in ("quick", "full"), "level must be quick|full"
    rows = []
    for label, fn in CHECKS:
        if labels is not None and label not in labels:
            continue
        start = time.perf_counter()
        try:
            detail = fn(level)
            status = "PASS"
        except AssertionError as exc:
            status = "FAIL"
            detail = str(exc) or "assertion failed"
        rows.append({"label": label, "status": status,
                     "seconds": round(time.perf_counter() - start, 3),
                     "detail": detail})
    return rows


def format_table(rows, level):
    width = max(len(r["label"]) for r in rows)
    lines = [f"{'check':<{width}}  status  seconds  detail"]
    lines.append("-" * (width + 26))
    for r in rows:
        lines.append(f"{r['label']:<{width}}  {r['status']:<6}  "
                     f"{r['seconds']:7.3f}  {r['detail']}")
    passed = sum(r["status"] == "PASS" for r in rows)
    lines.append(f"{passed} passed, {len(rows) - passed} failed "
                 f"(level={level})")
    return "\n".join(lines)
