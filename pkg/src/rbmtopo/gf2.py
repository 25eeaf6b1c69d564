"""Linear algebra over GF(2) on numpy uint8 matrices."""

from __future__ import annotations

import numpy as np


def as_gf2(a) -> np.ndarray:
    return np.asarray(a, dtype=np.uint8) & 1


def rref(a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2).

    Returns the reduced matrix (zero rows dropped) and its pivot columns.
    """
    m = as_gf2(a).copy()
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(m[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        m[others] ^= m[r]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a) -> int:
    a = as_gf2(a)
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def row_basis(a) -> np.ndarray:
    a = as_gf2(a)
    if a.size == 0:
        return np.zeros((0, a.shape[1] if a.ndim == 2 else 0), dtype=np.uint8)
    return rref(a)[0]


def nullspace(a) -> np.ndarray:
    """Basis (as rows) of {x : a @ x = 0 mod 2}."""
    a = as_gf2(a)
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.uint8)
    red, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, p in enumerate(pivots):
            basis[k, p] = red[row, f]
    return basis


def solve(a, b) -> np.ndarray | None:
    """One solution x of a @ x = b over GF(2), free variables set to zero.

    Returns None when the system is inconsistent.
    """
    a = as_gf2(a)
    b = as_gf2(b).reshape(-1, 1)
    aug, pivots = rref(np.hstack([a, b]))
    n = a.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.uint8)
    for row, p in enumerate(pivots):
        x[p] = aug[row, n]
    return x


def in_rowspace(v, a) -> bool:
    a = as_gf2(a)
    if a.shape[0] == 0:
        return not as_gf2(v).any()
    return rank(np.vstack([a, as_gf2(v)])) == rank(a)
