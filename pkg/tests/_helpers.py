"""Shared oracles and generators for the test suite.

Oracles here are deliberately naive (explicit loops over indices) so
they stay independent of the vectorized implementations they check.
"""

import numpy as np

from mapcones.linalg import Dims


def rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def brute_kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Four-loop Kronecker product under the composite index convention."""
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=np.complex128)
    for i in range(ra):
        for j in range(ca):
            for r in range(rb):
                for s in range(cb):
                    out[i * rb + r, j * cb + s] = a[i, j] * b[r, s]
    return out


def brute_partial_transpose(x: np.ndarray, d: Dims) -> np.ndarray:
    """Entry permutation oracle for the second-factor transpose."""
    n, m = d
    out = np.zeros_like(x)
    for i in range(n):
        for j in range(n):
            for r in range(m):
                for s in range(m):
                    out[i * m + r, j * m + s] = x[i * m + s, j * m + r]
    return out


def brute_full_transpose_via_factors(x: np.ndarray, d: Dims) -> np.ndarray:
    """Transpose both factors by explicit index swaps."""
    n, m = d
    out = np.zeros_like(x)
    for i in range(n):
        for j in range(n):
            for r in range(m):
                for s in range(m):
                    out[j * m + s, i * m + r] = x[i * m + r, j * m + s]
    return out


def random_hermitian(g: np.random.Generator, k: int) -> np.ndarray:
    a = g.normal(size=(k, k)) + 1j * g.normal(size=(k, k))
    return (a + a.conj().T) / 2


def random_psd(g: np.random.Generator, k: int, rank: int = 0) -> np.ndarray:
    r = rank if rank else k
    a = g.normal(size=(k, r)) + 1j * g.normal(size=(k, r))
    return a @ a.conj().T


def random_complex(g: np.random.Generator, shape) -> np.ndarray:
    return g.normal(size=shape) + 1j * g.normal(size=shape)
