"""Lattice geometry on tori: qubit indexing for the named models.

All lattices are periodic. Index conventions are fixed here and shared by the
compiled networks and their oracles.
"""

from __future__ import annotations

import itertools

import numpy as np


class UnionFind:
    """Disjoint sets over 0..n-1 with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def _need(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


# -- square torus (toric code) --------------------------------------------------------


def toric_checks(lx: int, ly: int) -> tuple[np.ndarray, np.ndarray]:
    """Star (X) and plaquette (Z) supports on an lx x ly square torus.

    Qubits live on edges: 2*(y*lx + x) is the horizontal edge leaving vertex
    (x, y) to the right, 2*(y*lx + x) + 1 the vertical edge leaving it upward.
    """
    _need(lx >= 2 and ly >= 2, "toric code needs lx, ly >= 2")
    n = 2 * lx * ly

    def h(x, y):
        return 2 * ((y % ly) * lx + (x % lx))

    def v(x, y):
        return h(x, y) + 1

    stars = np.zeros((lx * ly, n), dtype=np.uint8)
    plaqs = np.zeros((lx * ly, n), dtype=np.uint8)
    for y in range(ly):
        for x in range(lx):
            r = y * lx + x
            stars[r, [h(x, y), h(x - 1, y), v(x, y), v(x, y - 1)]] = 1
            plaqs[r, [h(x, y), h(x, y + 1), v(x, y), v(x + 1, y)]] = 1
    return stars, plaqs


# -- cubic torus (Haah's code) -------------------------------------------------------

# Cube-corner offsets for the two qubits of each site, as polynomials in the
# translations x, y, z. With f = 1 + x + y + z and g = 1 + xy + yz + zx the
# Z cube is (g, f) and the X cube xyz * (conj f, conj g); the symplectic
# product g*f + f*g vanishes, so the two commute on every torus.
_HAAH_Z = (((0, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1)), ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)))
_HAAH_X = (((1, 1, 1), (0, 1, 1), (1, 0, 1), (1, 1, 0)), ((1, 1, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1)))


def haah_checks(L: int) -> tuple[np.ndarray, np.ndarray]:
    """X-cube and Z-cube supports; qubit 2*site + t, site = x + L*(y + L*z)."""
    _need(L >= 2, "Haah's code needs L >= 2")
    n = 2 * L**3

    def q(x, y, z, t):
        return 2 * ((x % L) + L * ((y % L) + L * (z % L))) + t

    xs = np.zeros((L**3, n), dtype=np.uint8)
    zs = np.zeros((L**3, n), dtype=np.uint8)
    for r, (x, y, z) in enumerate(itertools.product(range(L), repeat=3)):
        for t in (0, 1):
            for dx, dy, dz in _HAAH_X[t]:
                xs[r, q(x + dx, y + dy, z + dz, t)] ^= 1
            for dx, dy, dz in _HAAH_Z[t]:
                zs[r, q(x + dx, y + dy, z + dz, t)] ^= 1
    return xs, zs


# -- honeycomb torus (double semion) -------------------------------------------------


def honeycomb(lx: int, ly: int) -> tuple[int, list[tuple[int, int]], list[list[int]]]:
    """Brick-wall honeycomb torus with lx x ly two-vertex cells.

    Vertices: A(x,y) = 2*(y*lx + x), B(x,y) = A(x,y) + 1. Edge 3*(y*lx + x) + t
    joins A(x,y) to B(x,y), B(x-1,y), B(x,y-1) for t = 0, 1, 2. Returns
    (vertex count, edge endpoints, hexagon edge lists).
    """
    _need(lx >= 2 and ly >= 2, "honeycomb torus needs lx, ly >= 2")

    def cell(x, y):
        return (y % ly) * lx + (x % lx)

    edges = []
    for y in range(ly):
        for x in range(lx):
            a = 2 * cell(x, y)
            edges += [(a, 2 * cell(x, y) + 1), (a, 2 * cell(x - 1, y) + 1), (a, 2 * cell(x, y - 1) + 1)]

    def e(x, y, t):
        return 3 * cell(x, y) + t

    hexes = [
        [e(x + 1, y, 1), e(x, y + 1, 2), e(x, y + 1, 0), e(x + 1, y + 1, 1), e(x + 1, y + 1, 2), e(x + 1, y, 0)]
        for y in range(ly)
        for x in range(lx)
    ]
    return 2 * lx * ly, edges, hexes


def incidence(n_vertices: int, edges) -> np.ndarray:
    m = np.zeros((n_vertices, len(edges)), dtype=np.uint8)
    for k, (a, b) in enumerate(edges):
        m[a, k] ^= 1
        m[b, k] ^= 1
    return m


def count_loops(config, n_vertices: int, edges) -> int:
    """Connected components spanned by the occupied edges."""
    uf = UnionFind(n_vertices)
    touched = set()
    for occ, (a, b) in zip(config, edges):
        if occ:
            uf.union(a, b)
            touched.update((a, b))
    return len({uf.find(a) for a in touched})


# -- triangular torus (CCZ model) ----------------------------------------------------


def triangles(lx: int, ly: int) -> list[tuple[int, int, int]]:
    """Up and down triangles of an lx x ly triangular torus, vertex y*lx + x.

    Triangles that coincide on small tori cancel in pairs (CCZ squares to 1).
    """
    _need(lx >= 2 and ly >= 2, "triangular torus needs lx, ly >= 2")

    def p(x, y):
        return (y % ly) * lx + (x % lx)

    out: dict[tuple[int, ...], int] = {}
    for y in range(ly):
        for x in range(lx):
            for tri in ((p(x, y), p(x + 1, y), p(x, y + 1)), (p(x + 1, y), p(x + 1, y + 1), p(x, y + 1))):
                key = tuple(sorted(tri))
                if len(set(key)) == 3:
                    out[key] = out.get(key, 0) ^ 1
    return [k for k, v in out.items() if v]


# -- CZX plaquettes ---------------------------------------------------------------------


def czx_plaquettes(lx: int, ly: int) -> list[tuple[int, int, int, int]]:
    """Four-qubit plaquettes of the CZX model on an lx x ly torus of sites.

    Each site holds qubits 4*site + c with corners c = 0 (lower left),
    1 (lower right), 2 (upper right), 3 (upper left); a plaquette collects
    the corners meeting at one dual vertex.
    """
    _need(lx >= 1 and ly >= 1, "CZX tiling needs lx, ly >= 1")

    def s(x, y):
        return (y % ly) * lx + (x % lx)

    return [
        (4 * s(x, y) + 2, 4 * s(x + 1, y) + 3, 4 * s(x + 1, y + 1) + 0, 4 * s(x, y + 1) + 1)
        for y in range(ly)
        for x in range(lx)
    ]
