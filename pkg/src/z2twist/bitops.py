"""Bit-packed kernels for exhaustive pair/triple scans.

Tables over Z_2^n x Z_2^n are packed 8 columns per byte (np.packbits order:
first column in the most significant bit).  The XOR-shuffle y -> v[y ^ z]
then splits into a byte permutation (high bits of z) and an in-byte bit
permutation (low 3 bits), the latter done with precomputed 256-entry
translation tables.  This keeps the 8^n triple scans at n = 9 well under the
time budget on one core.
"""

import numpy as np


def _build_trans():
    T = np.zeros((8, 256), dtype=np.uint8)
    for b in range(8):
        for byte in range(256):
            out = 0
            for j in range(8):
                bit = (byte >> (7 - (j ^ b))) & 1
                out |= bit << (7 - j)
            T[b, byte] = out
    return T


_TRANS = _build_trans()


def pack_vec(bits):
    """Pack a 0/1 vector of length 2^n (n >= 3) into bytes."""
    assert bits.shape[0] % 8 == 0
    return np.packbits(bits)


def pack_rows(table):
    return np.packbits(table, axis=1)


def xor_shuffle(packed, z):
    """Packed v[y] -> packed v[y ^ z]; works on the last axis."""
    hi, lo = z >> 3, z & 7
    idx = np.arange(packed.shape[-1]) ^ hi
    out = packed[..., idx]
    if lo:
        out = _TRANS[lo][out]
    return out


def xor_shuffle_table(packed, n):
    """All shuffles at once: row x of the result is v[y ^ x]."""
    nb = packed.shape[0]
    xs = np.arange(1 << n)
    out = packed[(xs[:, None] >> 3) ^ np.arange(nb)[None, :]]
    lo = xs & 7
    for b in range(1, 8):
        rows = lo == b
        if rows.any():
            out[rows] = _TRANS[b][out[rows]]
    return out


def row_self_shuffle(packed_table, n):
    """Row x of the result is row x of the table shuffled by x: F[x, x^y]."""
    nb = packed_table.shape[1]
    xs = np.arange(1 << n)
    out = packed_table[xs[:, None], (xs[:, None] >> 3) ^ np.arange(nb)[None, :]]
    lo = xs & 7
    for b in range(1, 8):
        rows = lo == b
        if rows.any():
            out[rows] = _TRANS[b][out[rows]]
    return out


def packed_transpose(packed_table, n):
    table = np.unpackbits(packed_table, axis=1, count=1 << n)
    return np.packbits(table.T, axis=1)


def col_bytes(bits):
    """Per-row constant bits (over x) as 0x00/0xFF bytes for broadcasting."""
    return (bits.astype(np.uint8) * np.uint8(0xFF))[:, None]
