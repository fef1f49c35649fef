"""Bit-packed GF(2) linear algebra against naive reference computations."""

import numpy as np
import pytest

from z2twist import gf2


def test_vec_string_round_trip():
    assert gf2.vec_from_str("101") == 0b101
    assert gf2.vec_to_str(0b101, 3) == "101"
    for n in (1, 3, 7):
        for v in range(1 << n):
            assert gf2.vec_from_str(gf2.vec_to_str(v, n)) == v


def test_vec_helpers():
    assert gf2.vec_add(0b101, 0b011) == 0b110
    assert gf2.weight(0b10110) == 3
    assert gf2.basis_vec(1, 3) == 0b100, "variable 1 must be the leftmost bit"
    assert gf2.basis_vec(3, 3) == 0b001
    assert gf2.bit_of(0b100, 1, 3) == 1
    assert gf2.bit_of(0b100, 3, 3) == 0


def test_matrix_rows_are_coordinate_expressions():
    # row i lists the variables whose sum gives the new coordinate x'_i
    M = gf2.mat_from_rows_1based(3, [[1, 2], [2], [3]])
    assert M.rows == (0b110, 0b010, 0b001)
    assert M.entry(1, 2) == 1 and M.entry(2, 1) == 0
    # applying to e_2 picks column 2
    assert gf2.mat_apply(M, gf2.basis_vec(2, 3)) == 0b110


def test_apply_matches_naive_bit_arithmetic():
    rng = np.random.default_rng(1)
    n = 5
    for _ in range(10):
        M = gf2.random_invertible(n, rng)
        for v in range(1 << n):
            want = 0
            for i in range(1, n + 1):
                bit = 0
                for j in range(1, n + 1):
                    bit ^= M.entry(i, j) & gf2.bit_of(v, j, n)
                want |= bit << (n - i)
            assert gf2.mat_apply(M, v) == want


def test_mul_is_composition_and_associative():
    rng = np.random.default_rng(2)
    n = 5
    for _ in range(20):
        A = gf2.random_invertible(n, rng)
        B = gf2.random_invertible(n, rng)
        C = gf2.random_invertible(n, rng)
        AB = gf2.mat_mul(A, B)
        for v in (0, 1, 0b10101, (1 << n) - 1):
            assert gf2.mat_apply(AB, v) == gf2.mat_apply(A, gf2.mat_apply(B, v))
        assert gf2.mat_mul(gf2.mat_mul(A, B), C) == gf2.mat_mul(A, gf2.mat_mul(B, C))


def test_inverse_and_rank():
    rng = np.random.default_rng(3)
    n = 6
    I = gf2.identity(n)
    for _ in range(10):
        M = gf2.random_invertible(n, rng)
        assert gf2.is_invertible(M) and gf2.rank(M) == n
        assert gf2.mat_mul(M, gf2.mat_invert(M)) == I
        assert gf2.mat_mul(gf2.mat_invert(M), M) == I
    singular = gf2.GF2Matrix(3, (0b110, 0b110, 0b001))
    assert not gf2.is_invertible(singular)
    assert gf2.rank(singular) == 2
    with pytest.raises(ValueError):
        gf2.mat_invert(singular)


def test_apply_table_agrees_pointwise():
    rng = np.random.default_rng(4)
    M = gf2.random_invertible(4, rng)
    table = gf2.apply_table(M)
    assert table.shape == (16,)
    for v in range(16):
        assert table[v] == gf2.mat_apply(M, v)


def test_gl_enumeration_count_and_distinctness():
    assert gf2.count_gl(3) == 168
    assert gf2.count_gl(4) == 20160
    assert gf2.count_gl(5) == 9999360
    seen = set()
    for M in gf2.enumerate_gl(3):
        assert gf2.is_invertible(M)
        seen.add(M.rows)
    assert len(seen) == 168


def test_random_invertible_deterministic_in_seed():
    assert gf2.random_invertible(5, 42) == gf2.random_invertible(5, 42)
    M = gf2.random_invertible(7, 42)
    assert gf2.is_invertible(M)


def test_block_diag_acts_on_concatenated_coordinates():
    A = gf2.mat_from_rows_1based(2, [[1, 2], [2]])
    B = gf2.mat_from_rows_1based(3, [[3], [2], [1]])
    D = gf2.block_diag(A, B)
    assert D.n == 5
    for u in range(4):
        for v in range(8):
            packed = (u << 3) | v
            want = (gf2.mat_apply(A, u) << 3) | gf2.mat_apply(B, v)
            assert gf2.mat_apply(D, packed) == want


def test_matrix_json_round_trip():
    M = gf2.mat_from_rows_1based(3, [[1, 3], [2], [3]])
    obj = M.to_json()
    assert obj == {"n": 3, "rows": ["101", "010", "001"]}
    assert gf2.GF2Matrix.from_json(obj) == M
