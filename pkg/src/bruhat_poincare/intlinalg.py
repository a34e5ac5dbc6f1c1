"""Exact integer/rational linear algebra on small dense matrices."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

import numpy as np

Vector = tuple[int, ...]


def rank(rows) -> int:
    """Rank over Q by fraction Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                factor = m[i][c] / m[r][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def det(matrix) -> int:
    """Integer determinant by Bareiss elimination."""
    m = [list(map(int, r)) for r in matrix]
    k = len(m)
    if k == 0:
        return 1
    sign, prev = 1, 1
    for c in range(k - 1):
        if m[c][c] == 0:
            swap = next((i for i in range(c + 1, k) if m[i][c] != 0), None)
            if swap is None:
                return 0
            m[c], m[swap] = m[swap], m[c]
            sign = -sign
        for i in range(c + 1, k):
            for j in range(c + 1, k):
                m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) // prev
        prev = m[c][c]
    return sign * m[k - 1][k - 1]


def primitive(vec) -> Vector:
    """Divide an integer vector by the gcd of its entries."""
    vec = [int(x) for x in vec]
    g = 0
    for x in vec:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(vec)
    return tuple(x // g for x in vec)


def maximal_minor_gcd(vectors) -> int:
    """gcd of the k x k minors of the n x k matrix with the given columns.

    For independent integer vectors this is the index of the lattice they
    span inside its saturation (lattice points of their real span); the
    vectors are a lattice basis of that saturation exactly when it is 1.
    """
    vectors = [tuple(v) for v in vectors]
    k = len(vectors)
    if k == 0:
        return 1
    n = len(vectors[0])
    g = 0
    for rows in itertools.combinations(range(n), k):
        g = gcd(g, det([[v[r] for v in vectors] for r in rows]))
        if g == 1:
            return 1
    return g


def det_batch(mats: np.ndarray) -> np.ndarray:
    """Exact determinants of a stack (N, k, k) of small int64 matrices.

    Laplace expansion along the first row; only used for k <= 5.
    """
    n, k, _ = mats.shape
    if k == 0:
        return np.ones(n, dtype=np.int64)
    if k == 1:
        return mats[:, 0, 0].copy()
    if k == 2:
        return mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]
    total = np.zeros(n, dtype=np.int64)
    rest = mats[:, 1:, :]
    for c in range(k):
        cols = [x for x in range(k) if x != c]
        minor = det_batch(rest[:, :, cols])
        term = mats[:, 0, c] * minor
        total = total + term if c % 2 == 0 else total - term
    return total


def normals_batch(diffs: np.ndarray) -> np.ndarray:
    """Cofactor normals for a stack (N, d-1, d) of spanning differences.

    Entry c is (-1)^c times the minor with column c deleted, so each row
    is orthogonal to all d-1 difference vectors.
    """
    n, km1, d = diffs.shape
    out = np.empty((n, d), dtype=np.int64)
    for c in range(d):
        cols = [x for x in range(d) if x != c]
        minor = det_batch(diffs[:, :, cols])
        out[:, c] = minor if c % 2 == 0 else -minor
    return out
