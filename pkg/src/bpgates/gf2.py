"""Small GF(2) row-reduction toolkit for classical code handling."""

from __future__ import annotations

import numpy as np


def as_gf2(rows) -> np.ndarray:
    A = np.asarray(rows, dtype=np.uint8) & 1
    if A.ndim != 2:
        raise ValueError("expected a 2-D binary matrix")
    return A


def rref(A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Row-reduced echelon form over GF(2); returns (R, pivot columns).
    Zero rows are dropped."""
    R = as_gf2(A).copy()
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        rows = np.where(R[r:, c] == 1)[0]
        if rows.size == 0:
            continue
        p = r + int(rows[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        ones = np.where(R[:, c] == 1)[0]
        ones = ones[ones != r]
        if ones.size:
            R[ones] ^= R[r]
        pivots.append(c)
        r += 1
    return R[: len(pivots)], pivots


def rank(A: np.ndarray) -> int:
    return len(rref(A)[1])


def reduce_against(v: np.ndarray, R: np.ndarray, pivots: list[int]) -> np.ndarray:
    """Canonical coset representative of v modulo rowspace(R), R in RREF."""
    w = (np.asarray(v, dtype=np.uint8) & 1).copy()
    for row, c in zip(R, pivots):
        if w[c]:
            w ^= row
    return w


def in_rowspace(v: np.ndarray, R: np.ndarray, pivots: list[int]) -> bool:
    return not reduce_against(v, R, pivots).any()


def codewords(G: np.ndarray) -> list[np.ndarray]:
    """All 2^k codewords of the row space of a k x n generator matrix."""
    G = as_gf2(G)
    k, n = G.shape
    words = []
    for m in range(1 << k):
        w = np.zeros(n, dtype=np.uint8)
        for i in range(k):
            if (m >> (k - 1 - i)) & 1:
                w ^= G[i]
        words.append(w)
    return words


def vec_to_int(v: np.ndarray) -> int:
    """Big-endian integer value of a binary vector."""
    out = 0
    for b in np.asarray(v, dtype=np.uint8) & 1:
        out = (out << 1) | int(b)
    return out


def int_to_vec(x: int, n: int) -> np.ndarray:
    return np.array([(x >> (n - 1 - i)) & 1 for i in range(n)], dtype=np.uint8)
