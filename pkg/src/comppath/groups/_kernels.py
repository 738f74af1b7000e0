"""Batched word kernels over int8-encoded words.

Encoding: generator i (0-based) is code i+1, its inverse -(i+1), 0 pads.
Each kernel has an @njit version and a numpy version with the same
signature; COMPPATH_DISABLE_NUMBA=1 (or numba missing) selects numpy.
"""
import os

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("COMPPATH_DISABLE_NUMBA", "") not in ("1", "true", "yes")


def encode(words, gens, width=None) -> np.ndarray:
    idx = {g: i + 1 for i, g in enumerate(gens)}
    width = max((len(w) for w in words), default=0) if width is None else width
    out = np.zeros((len(words), width), dtype=np.int8)
    for r, w in enumerate(words):
        for c, (g, e) in enumerate(w):
            out[r, c] = idx[g] * e
    return out


def decode(row, gens):
    return tuple((gens[abs(int(c)) - 1], 1 if c > 0 else -1) for c in row if c != 0)


# ---------------------------------------------------------------------------
# numpy


def klein_eval_np(codes: np.ndarray) -> np.ndarray:
    """(m, n) in the semidirect model for each row; a=code 1, b=code 2."""
    n_rows = codes.shape[0]
    m = np.zeros(n_rows, dtype=np.int64)
    n = np.zeros(n_rows, dtype=np.int64)
    for col in range(codes.shape[1]):
        c = codes[:, col]
        is_a = np.abs(c) == 1
        # right-multiplying by a^{+-1} flips the sign of n
        n = np.where(is_a, -n, n)
        m = m + np.where(is_a, np.sign(c), 0)
        n = n + np.where(np.abs(c) == 2, np.sign(c), 0)
    return np.stack([m, n], axis=1)


def exponent_sums_np(codes: np.ndarray, n_gens: int) -> np.ndarray:
    out = np.zeros((codes.shape[0], n_gens), dtype=np.int64)
    sign = np.sign(codes).astype(np.int64)
    for g in range(n_gens):
        out[:, g] = np.where(np.abs(codes) == g + 1, sign, 0).sum(axis=1)
    return out


def enumerate_words_np(length: int, n_gens: int) -> np.ndarray:
    """All (2*n_gens)**length words of exactly this length, lexicographic in letter order."""
    letters = np.array([s * (g + 1) for g in range(n_gens) for s in (1, -1)], dtype=np.int8)
    k = len(letters)
    if length == 0:
        return np.zeros((1, 0), dtype=np.int8)
    grid = np.indices((k,) * length).reshape(length, -1).T
    return letters[grid]


# ---------------------------------------------------------------------------
# numba

if HAVE_NUMBA:
    @njit(cache=False)
    def _klein_eval_nb(codes):
        rows, cols = codes.shape
        out = np.zeros((rows, 2), dtype=np.int64)
        for r in range(rows):
            m = 0
            n = 0
            for c in range(cols):
                x = codes[r, c]
                if x == 1 or x == -1:
                    m += x
                    n = -n
                elif x == 2 or x == -2:
                    n += x // 2
            out[r, 0] = m
            out[r, 1] = n
        return out

    @njit(cache=False)
    def _exponent_sums_nb(codes, n_gens):
        rows, cols = codes.shape
        out = np.zeros((rows, n_gens), dtype=np.int64)
        for r in range(rows):
            for c in range(cols):
                x = codes[r, c]
                if x > 0:
                    out[r, x - 1] += 1
                elif x < 0:
                    out[r, -x - 1] -= 1
        return out

    @njit(cache=False)
    def _enumerate_words_nb(length, n_gens):
        k = 2 * n_gens
        total = k ** length
        out = np.zeros((total, length), dtype=np.int8)
        for i in range(total):
            rem = i
            for c in range(length - 1, -1, -1):
                d = rem % k
                rem //= k
                g = d // 2 + 1
                out[i, c] = g if d % 2 == 0 else -g
        return out


def klein_eval(codes: np.ndarray) -> np.ndarray:
    if USE_NUMBA:
        return _klein_eval_nb(np.ascontiguousarray(codes, dtype=np.int8))
    return klein_eval_np(codes)


def exponent_sums(codes: np.ndarray, n_gens: int) -> np.ndarray:
    if USE_NUMBA:
        return _exponent_sums_nb(np.ascontiguousarray(codes, dtype=np.int8), n_gens)
    return exponent_sums_np(codes, n_gens)


def enumerate_words(length: int, n_gens: int) -> np.ndarray:
    if USE_NUMBA:
        return _enumerate_words_nb(length, n_gens)
    return enumerate_words_np(length, n_gens)


def all_words_upto(max_len: int, n_gens: int) -> list[np.ndarray]:
    """One array per length 0..max_len."""
    return [enumerate_words(L, n_gens) for L in range(max_len + 1)]
