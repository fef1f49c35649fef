"""Twisting tables and graded-identity checks against naive loops."""

import itertools

import numpy as np
import pytest

from z2twist.algebra import (
    GradedAlgebra, TwistingTable, beta_of, check_generating_axioms,
    check_graded_alternative, check_graded_associative,
    check_graded_commutative, check_phi_zero, extract_generating,
    generator_square, has_generating_function, multiplication_table,
    multiply_basis, phi_of, tsv_lines, twist_from_form, twist_standard,
)
from z2twist.forms import (
    CubicForm, beta_polar, make_alpha_cl_pq, make_alpha_n, make_alpha_pq,
    phi_polar,
)


def _random_form(n, rng):
    triples = [t for t in itertools.combinations(range(1, n + 1), 3)
               if rng.integers(2)]
    pairs = [t for t in itertools.combinations(range(1, n + 1), 2)
             if rng.integers(2)]
    singles = [i for i in range(1, n + 1) if rng.integers(2)]
    return CubicForm(n, triples, pairs, singles)


def test_table_validation_and_json():
    bits = np.zeros((4, 4), dtype=np.uint8)
    bits[1, 1] = 1
    f = TwistingTable(2, bits)
    assert f.is_unital()
    obj = f.to_json()
    assert TwistingTable.from_json(obj) == f
    with pytest.raises(AssertionError):
        TwistingTable(2, np.zeros((4, 3), dtype=np.uint8))
    with pytest.raises(AssertionError):
        TwistingTable(1, np.full((2, 2), 2, dtype=np.uint8))


def test_monomial_rule_on_single_monomials():
    # one quadratic monomial x1 x2 twists as f(x, y) = x1 y2
    f = twist_from_form(CubicForm(2, (), [(1, 2)], ()))
    for x in range(4):
        for y in range(4):
            assert f.bits[x, y] == ((x >> 1) & y & 1)
    # one linear monomial x1 twists as f(x, y) = x1 y1
    f = twist_from_form(CubicForm(2, (), (), (1,)))
    for x in range(4):
        for y in range(4):
            assert f.bits[x, y] == ((x >> 1) & (y >> 1) & 1)
    # one cubic monomial spreads over the three split positions
    f = twist_from_form(CubicForm(3, [(1, 2, 3)], (), ()))
    for x in range(8):
        for y in range(8):
            x1, x2, x3 = (x >> 2) & 1, (x >> 1) & 1, x & 1
            y1, y2, y3 = (y >> 2) & 1, (y >> 1) & 1, y & 1
            want = (x1 & x2 & y3) ^ (x1 & y2 & x3) ^ (y1 & x2 & x3)
            assert f.bits[x, y] == want


def test_diagonal_reproduces_the_form():
    rng = np.random.default_rng(20)
    for n in (3, 4, 5):
        for _ in range(4):
            form = _random_form(n, rng)
            f = twist_from_form(form)
            assert (f.diag() == form.truth_table()).all()
            assert f.is_unital()


def test_multiply_basis_and_unit():
    f = twist_standard("O")
    for x in range(8):
        assert multiply_basis(f, 0, x) == (1, x)
        assert multiply_basis(f, x, 0) == (1, x)
    sign, prod = multiply_basis(f, 0b100, 0b100)
    assert (sign, prod) == (-1, 0)
    with pytest.raises(AssertionError):
        multiply_basis(f, 8, 0)


def test_generator_squares_follow_signature():
    for (p, q) in ((0, 3), (1, 2), (2, 2), (3, 1)):
        f = twist_from_form(make_alpha_pq(p, q))
        alg = GradedAlgebra(p + q, f, "real", (p, q))
        for i in range(1, p + q + 1):
            assert generator_square(alg, i) == (1 if i <= p else -1)
    with pytest.raises(AssertionError):
        generator_square(twist_standard("H"), 3)
    with pytest.raises(AssertionError):
        GradedAlgebra(2, twist_standard("H"), "quaternionic")


def test_packed_checks_agree_with_naive_loops():
    rng = np.random.default_rng(21)
    for n in (3, 4):
        size = 1 << n
        for _ in range(3):
            form = _random_form(n, rng)
            f = twist_from_form(form)
            comm = all(beta_of(f, x, y) == beta_polar(form, x, y)
                       for x in range(size) for y in range(size))
            assert check_graded_commutative(f) == comm is True
            assoc = all(phi_of(f, x, y, z) == phi_polar(form, x, y, z)
                        for x in range(size) for y in range(size)
                        for z in range(size))
            assert check_graded_associative(f) == assoc is True
            alt = all(phi_of(f, x, x, y) == 0
                      for x in range(size) for y in range(size))
            assert check_graded_alternative(f) == alt is True
            zero = all(phi_of(f, x, y, z) == 0
                       for x in range(size) for y in range(size)
                       for z in range(size))
            assert check_phi_zero(f) == zero
            assert has_generating_function(f)


def test_bilinear_twistings_have_zero_phi():
    for (p, q) in ((0, 3), (2, 2)):
        cl = twist_standard("Cl_pq", p=p, q=q)
        assert check_phi_zero(cl)
        assert check_graded_commutative(cl)
        assert check_graded_associative(cl)
    assert not check_phi_zero(twist_standard("O"))


def test_corrupted_tables_fail_the_checks():
    f = twist_from_form(make_alpha_pq(0, 3))
    bits = f.bits.copy()
    bits[4, 2] ^= 1
    bad = TwistingTable(3, bits)
    assert not check_graded_commutative(bad)
    assert not check_graded_associative(bad)
    bits = f.bits.copy()
    bits[3, 5] ^= 1
    bits[5, 3] ^= 1
    sym_bad = TwistingTable(3, bits)
    assert check_graded_commutative(sym_bad)
    assert not has_generating_function(sym_bad)
    with pytest.raises(ValueError):
        extract_generating(sym_bad)


def test_generating_axioms_report_and_mismatch():
    form = make_alpha_pq(1, 2)
    f = twist_from_form(form)
    assert check_generating_axioms(f, form) == {
        "diagonal": True, "pairs": True, "triples": True}
    other = make_alpha_pq(0, 3)
    assert not check_generating_axioms(f, other)["diagonal"]
    with pytest.raises(ValueError):
        check_generating_axioms(f, make_alpha_n(4))


def test_extract_generating_round_trip():
    rng = np.random.default_rng(22)
    for n in (3, 5):
        for _ in range(5):
            form = _random_form(n, rng)
            assert extract_generating(twist_from_form(form)) == form


def test_standard_kinds_match_the_form_construction():
    assert twist_standard("H") == twist_from_form(make_alpha_cl_pq(0, 2))
    assert twist_standard("O") == twist_from_form(make_alpha_pq(0, 3))
    assert twist_standard("O_n", n=5) == twist_from_form(make_alpha_n(5))
    assert twist_standard("O_pq", p=2, q=1) == \
        twist_from_form(make_alpha_pq(2, 1))
    assert twist_standard("Cl_pq", p=1, q=3) == \
        twist_from_form(make_alpha_cl_pq(1, 3))
    with pytest.raises(ValueError):
        twist_standard("R4", n=2)
    with pytest.raises(AssertionError):
        twist_standard("O_n", n=2)


def test_table_export_format():
    f = twist_standard("H")
    lines = list(tsv_lines(f))
    assert len(lines) == 16
    assert lines[0] == "00\t00\t00"
    assert lines[5] == "01\t01\t-00", "e2 squared must be -1"
    text = multiplication_table(GradedAlgebra(2, f))
    assert text == "\n".join(lines) + "\n"
