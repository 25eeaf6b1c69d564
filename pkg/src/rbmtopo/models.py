"""Named model builders. Each returns the compiled RBM with an independent oracle."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import gf2, lattices
from .clifford import (
    CNOT, CZ, POSTPLUS, CliffordCircuit, Gate, H, S, StabilizerGenerators, circuit_to_rbm, projector_state,
)
from .errors import FitError, ParseError, ResourceError
from .gadgets import hyperedge_phase, indicator_weight, parity_gadget, two_body_phase
from .phase_poly import AffineParity, ClosedFormState, compile_to_rbm, fit_cubic_phase
from .rbm import DenseState, RbmNetwork, compose, compose_all, dense_cap, index_bits

BOUND_FACTOR = 8


@dataclass(frozen=True)
class Hypergraph:
    n: int
    hyperedges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        edges = tuple(tuple(sorted(int(i) for i in e)) for e in self.hyperedges)
        for e in edges:
            if not e:
                raise ValueError("empty hyperedge")
            if len(set(e)) != len(e) or e[0] < 0 or e[-1] >= self.n:
                raise ValueError(f"invalid hyperedge {e} for n={self.n}")
        if len(set(edges)) != len(edges):
            raise ValueError("duplicate hyperedge")
        object.__setattr__(self, "hyperedges", edges)


def parse_hypergraph(text: str) -> Hypergraph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            if toks[0] == "n":
                n = int(toks[1])
            elif n is None:
                raise ValueError("hyperedge before 'n <int>' header")
            else:
                e = tuple(int(t) for t in toks)
                if any(not 0 <= i < n for i in e):
                    raise ValueError(f"vertex out of range in {e}")
                edges.append(e)
        except (ValueError, IndexError) as exc:
            raise ParseError(str(exc) or "malformed line", lineno) from None
    if n is None:
        raise ParseError("missing 'n <int>' header")
    try:
        return Hypergraph(n, tuple(edges))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_hypergraph(hg: Hypergraph) -> str:
    return "\n".join([f"n {hg.n}"] + [" ".join(map(str, e)) for e in hg.hyperedges]) + "\n"


@dataclass(frozen=True, eq=False)
class ModelBundle:
    """Compiled network, its oracle(s), and bookkeeping.

    ``oracle_dense`` builds the full reference state; ``oracle_amplitude``
    gives single amplitudes for spot checks beyond the dense cap. Both share
    the network's bit order. ``sample_support`` draws configurations with
    nonzero amplitude, so spot checks of sparse states are not all zeros.
    """

    name: str
    rbm: RbmNetwork
    oracle_dense: Callable[[], DenseState] | None = None
    oracle_amplitude: Callable[[Sequence[int]], complex] | None = None
    metadata: dict = field(default_factory=dict)
    sample_support: Callable[[np.random.Generator, int], np.ndarray] | None = None

    @property
    def n(self) -> int:
        return self.rbm.n_visible


def _meta(params: dict, n: int, n_terms: int, **extra) -> dict:
    return {"params": params, "n": n, "n_terms": n_terms, "bound": BOUND_FACTOR * (n_terms + n), **extra}


def _all_configs(n: int) -> np.ndarray:
    cap = dense_cap()
    if n > cap:
        raise ResourceError(f"{n} qubits exceed the dense cap {cap}")
    return index_bits(np.arange(1 << n), n).astype(np.int64)


def _product_formula(n: int, edges) -> Callable[[np.ndarray], np.ndarray]:
    def signs(v: np.ndarray) -> np.ndarray:
        v = np.atleast_2d(v)
        par = np.zeros(v.shape[0], dtype=np.int64)
        for e in edges:
            par ^= np.bitwise_and.reduce(v[:, list(e)], axis=1)
        return (1 - 2 * par).astype(complex)

    return signs


def _bundle_from_signs(name, rbm, n, sign_fn, meta) -> ModelBundle:
    return ModelBundle(
        name,
        rbm,
        lambda: DenseState(n, sign_fn(_all_configs(n))),
        lambda v: complex(sign_fn(np.asarray(v, dtype=np.int64))[0]),
        meta,
    )


def graph_state(n: int, edges, name: str = "graph", params: dict | None = None) -> ModelBundle:
    edges = [tuple(sorted(e)) for e in edges]
    if len(set(edges)) != len(edges) or any(len(set(e)) != 2 for e in edges):
        raise ValueError("graph must be simple")
    rbm = compose_all(n, (two_body_phase(i, j, math.pi).network(n) for i, j in edges))
    meta = _meta(params or {"n": n}, n, len(edges), edges=len(edges))
    return _bundle_from_signs(name, rbm, n, _product_formula(n, edges), meta)


def hypergraph_state(hg: Hypergraph, name: str = "hypergraph", params: dict | None = None) -> ModelBundle:
    n = hg.n
    rbm = compose_all(n, (hyperedge_phase(e, math.pi).network(n) for e in hg.hyperedges))
    meta = _meta(
        params or {"n": n}, n, len(hg.hyperedges),
        gadget_bound=sum(2 * len(e) + 4 for e in hg.hyperedges),
    )
    return _bundle_from_signs(name, rbm, n, _product_formula(n, hg.hyperedges), meta)


def cluster_state(lx: int, ly: int = 1) -> ModelBundle:
    """Graph state on an open lx x ly grid, qubit y*lx + x."""
    if lx * ly < 2:
        raise ValueError("cluster state needs at least two qubits")
    edges = [(y * lx + x, y * lx + x + 1) for y in range(ly) for x in range(lx - 1)]
    edges += [(y * lx + x, (y + 1) * lx + x) for y in range(ly - 1) for x in range(lx)]
    return graph_state(lx * ly, edges, "cluster", {"lx": lx, "ly": ly})


def ccz_model(lx: int | None = None, ly: int | None = None, triples=None, n: int | None = None) -> ModelBundle:
    """CCZ on every triangle of a triangular torus, or on an explicit triple list."""
    if triples is None:
        triples = lattices.triangles(lx, ly)
        n = lx * ly
        params = {"lx": lx, "ly": ly}
    else:
        triples = [tuple(t) for t in triples]
        if any(len(t) != 3 for t in triples):
            raise ValueError("CCZ model takes 3-vertex hyperedges")
        if n is None:
            n = 1 + max((max(t) for t in triples), default=-1)
        params = {"n": n, "triples": [list(t) for t in triples]}
    return hypergraph_state(Hypergraph(n, tuple(triples)), "ccz", params)


# -- CSS codes ---------------------------------------------------------------------


def _span_sampler(basis: np.ndarray):
    def sample(rng, m):
        coeffs = rng.integers(0, 2, size=(m, basis.shape[0]))
        return (coeffs @ basis.astype(np.int64)) % 2

    return sample


def css_bundle(name: str, x_checks: np.ndarray, z_checks: np.ndarray, params: dict) -> ModelBundle:
    """Ground state reached by projecting |0...0> with all stabilizers.

    Its amplitudes are the indicator of the X-stabilizer row space, so the
    network is one parity gadget per row of a basis of the dual code.
    """
    n = x_checks.shape[1]
    x_basis = gf2.row_basis(x_checks)
    checks = gf2.nullspace(x_basis)
    rbm = compose_all(n, (parity_gadget(np.nonzero(row)[0]).network(n) for row in checks))
    gens = StabilizerGenerators(
        np.vstack([x_checks, np.zeros_like(z_checks)]),
        np.vstack([np.zeros_like(x_checks), z_checks]),
        np.zeros(x_checks.shape[0] + z_checks.shape[0]),
    )

    def dense() -> DenseState:
        if n > dense_cap():
            raise ResourceError(f"{n} qubits exceed the dense cap {dense_cap()}")
        start = np.zeros(1 << n, dtype=complex)
        start[0] = 1
        return DenseState(n, projector_state(gens, start))

    def amp(v) -> complex:
        return 1.0 + 0j if gf2.in_rowspace(v, x_basis) else 0j

    rank_x = x_basis.shape[0]
    meta = _meta(params, n, checks.shape[0], rank_x=rank_x, n_checks=checks.shape[0], support_size=2**rank_x)
    return ModelBundle(name, rbm, dense, amp, meta, _span_sampler(x_basis))


def css_generators(x_checks: np.ndarray) -> StabilizerGenerators:
    """Complete generator set of the |0>-projected CSS state: X basis plus dual Z checks."""
    xb = gf2.row_basis(x_checks)
    zb = gf2.nullspace(xb)
    n = x_checks.shape[1]
    return StabilizerGenerators(
        np.vstack([xb, np.zeros((zb.shape[0], n), dtype=np.uint8)]),
        np.vstack([np.zeros((xb.shape[0], n), dtype=np.uint8), zb]),
        np.zeros(n),
    )


def toric_code(lx: int, ly: int) -> ModelBundle:
    stars, plaqs = lattices.toric_checks(lx, ly)
    return css_bundle("toric", stars, plaqs, {"lx": lx, "ly": ly})


def haah_code(L: int) -> ModelBundle:
    xs, zs = lattices.haah_checks(L)
    return css_bundle("haah", xs, zs, {"l": L})


# -- double semion --------------------------------------------------------------------


def loop_configurations(n_vertices: int, edges) -> np.ndarray:
    """All even-degree edge sets, enumerated from a cycle-space basis."""
    basis = gf2.nullspace(lattices.incidence(n_vertices, edges))
    k = basis.shape[0]
    coeffs = index_bits(np.arange(1 << k), k)
    return (coeffs.astype(np.int64) @ basis.astype(np.int64)) % 2


def double_semion(lx: int, ly: int) -> ModelBundle:
    n_vertices, edges, hexes = lattices.honeycomb(lx, ly)
    n = len(edges)
    loops = loop_configurations(n_vertices, edges)
    signs = [(-1) ** lattices.count_loops(c, n_vertices, edges) for c in loops]
    try:
        phase = fit_cubic_phase(loops, signs, n)
    except FitError as exc:
        raise FitError(f"double semion {lx}x{ly}: {exc}") from None
    vertex_parities = []
    for vtx in range(n_vertices):
        vertex_parities.append(AffineParity(frozenset(k for k, e in enumerate(edges) if vtx in e)))
    state = ClosedFormState(n, phase, tuple(vertex_parities))
    rbm = compile_to_rbm(state)
    inc = lattices.incidence(n_vertices, edges)

    def amp(v) -> complex:
        v = np.asarray(v, dtype=np.int64)
        if ((inc.astype(np.int64) @ v) % 2).any():
            return 0j
        return complex((-1) ** lattices.count_loops(v, n_vertices, edges))

    def dense() -> DenseState:
        configs = _all_configs(n)
        deg = (configs @ inc.T.astype(np.int64)) % 2
        out = np.zeros(1 << n, dtype=complex)
        for idx in np.nonzero(~deg.any(axis=1))[0]:
            out[idx] = (-1) ** lattices.count_loops(configs[idx], n_vertices, edges)
        return DenseState(n, out)

    n_terms = n_vertices + len(phase.quadratic) + len(phase.cubic)
    meta = _meta(
        {"lx": lx, "ly": ly}, n, n_terms,
        vertices=n_vertices, loop_configs=len(loops), hexagons=hexes,
        closed_form=state,
    )
    return ModelBundle("double_semion", rbm, dense, amp, meta, _span_sampler(gf2.nullspace(inc)))


# -- AKLT chain -------------------------------------------------------------------------

PAULI_A = {
    -1: np.array([[0, 1], [1, 0]], dtype=complex),
    0: np.array([[0, -1j], [1j, 0]], dtype=complex),
    1: np.array([[1, 0], [0, -1]], dtype=complex),
}
UNARY = {-1: (1, 0, 0), 0: (0, 1, 0), 1: (0, 0, 1)}


def aklt_trace(spins: Sequence[int]) -> complex:
    m = np.eye(2, dtype=complex)
    for a in spins:
        m = m @ PAULI_A[a]
    return complex(np.trace(m))


def aklt_projection_block(left: int, right: int, free: int, out: Sequence[int]) -> list[Gate]:
    """Clifford gates realizing the site projection on the unary subspace.

    With virtual bits (a, b) summed through a free bit f, outputs are
    u1 = f, u2 = f + a + b, u3 = 1 + a + b (mod 2) and the phase is
    i^(a + 3b + f) (-1)^(ab + af). Restricted to one-hot outputs this maps
    |01>+|10> -> |100>, i(|01>-|10>) -> |010>, |00>-|11> -> |001> (times 2).
    Output wires must start in |0>; the caller projects left/right/free on <+|.
    """
    u1, u2, u3 = out
    gates = [S(left)] + [S(right)] * 3 + [S(free), CZ(left, right), CZ(left, free)]
    gates += [CNOT(free, u1), CNOT(free, u2), CNOT(left, u2), CNOT(right, u2)]
    gates += [H(u3), S(u3), S(u3), H(u3), CNOT(left, u3), CNOT(right, u3)]
    return gates


def aklt_circuit(n_sites: int) -> CliffordCircuit:
    """EPR pairs between neighbouring sites, then the projection block per site.

    Wires per site i: 6i (left virtual), 6i+1 (right virtual), 6i+2 (free),
    6i+3..6i+5 (unary outputs).
    """
    n = 6 * n_sites
    inputs = []
    for _ in range(n_sites):
        inputs += ["zero", "plus", "plus", "zero", "zero", "zero"]
    gates: list[Gate] = []
    for i in range(n_sites):
        gates.append(CNOT(6 * i + 1, 6 * ((i + 1) % n_sites)))
    for i in range(n_sites):
        base = 6 * i
        gates += aklt_projection_block(base, base + 1, base + 2, (base + 3, base + 4, base + 5))
    for i in range(n_sites):
        gates += [POSTPLUS(6 * i), POSTPLUS(6 * i + 1), POSTPLUS(6 * i + 2)]
    return CliffordCircuit(n, tuple(gates), tuple(inputs))


def aklt_chain(n_sites: int, periodic: bool = True) -> ModelBundle:
    if not periodic:
        raise NotImplementedError("only periodic AKLT chains are built")
    if n_sites < 3:
        raise ValueError("periodic AKLT chain needs at least 3 sites")
    n = 3 * n_sites
    stab = circuit_to_rbm(aklt_circuit(n_sites))
    unary = [indicator_weight((3 * i, 3 * i + 1, 3 * i + 2), 1).network(n) for i in range(n_sites)]
    rbm = compose_all(n, [stab] + unary)

    def amp(v) -> complex:
        v = tuple(int(b) for b in v)
        spins = []
        for i in range(n_sites):
            trip = v[3 * i: 3 * i + 3]
            if sum(trip) != 1:
                return 0j
            spins.append(trip.index(1) - 1)
        return aklt_trace(spins)

    def dense() -> DenseState:
        if n > dense_cap():
            raise ResourceError(f"{n} qubits exceed the dense cap {dense_cap()}")
        out = np.zeros(1 << n, dtype=complex)
        for spins in itertools.product((-1, 0, 1), repeat=n_sites):
            bits = [b for a in spins for b in UNARY[a]]
            idx = int("".join(map(str, bits)), 2)
            out[idx] = aklt_trace(spins)
        return DenseState(n, out)

    n_terms = (stab.n_hidden) + n_sites
    def sample(rng, m):
        hot = rng.integers(0, 3, size=(m, n_sites))
        return np.eye(3, dtype=np.int64)[hot].reshape(m, n)

    return ModelBundle("aklt", rbm, dense, amp, _meta({"sites": n_sites}, n, n_terms, sites=n_sites), sample)


# -- CZX and Dicke ------------------------------------------------------------------------


def czx_ground(lx: int, ly: int) -> ModelBundle:
    plaqs = lattices.czx_plaquettes(lx, ly)
    n = 4 * lx * ly
    parts = []
    for p in plaqs:
        parts += [parity_gadget((p[k], p[k + 1])).network(n) for k in range(3)]
    rbm = compose_all(n, parts)

    def dense() -> DenseState:
        if n > dense_cap():
            raise ResourceError(f"{n} qubits exceed the dense cap {dense_cap()}")
        ghz = np.zeros((2, 2, 2, 2), dtype=complex)
        ghz[0, 0, 0, 0] = ghz[1, 1, 1, 1] = 1
        psi = np.ones(())
        for _ in plaqs:
            psi = np.multiply.outer(psi, ghz)
        order = [q for p in plaqs for q in p]
        psi = np.transpose(psi, np.argsort(order))
        return DenseState(n, psi.reshape(-1))

    def amp(v) -> complex:
        return 1.0 + 0j if all(len({int(v[q]) for q in p}) == 1 for p in plaqs) else 0j

    def sample(rng, m):
        out = np.zeros((m, n), dtype=np.int64)
        bits = rng.integers(0, 2, size=(m, len(plaqs)))
        for p, plaq in enumerate(plaqs):
            out[:, list(plaq)] = bits[:, [p]]
        return out

    meta = _meta({"lx": lx, "ly": ly}, n, 3 * len(plaqs), plaquettes=plaqs)
    return ModelBundle("czx", rbm, dense, amp, meta, sample)


def dicke_state(n: int, k: int) -> ModelBundle:
    if not 0 <= k <= n or n < 1:
        raise ValueError("Dicke state needs 0 <= k <= n, n >= 1")
    rbm = indicator_weight(range(n), k).network(n)

    def weights(v):
        return np.atleast_2d(v).sum(axis=1) == k

    return ModelBundle(
        "dicke",
        rbm,
        lambda: DenseState(n, weights(_all_configs(n)).astype(complex)),
        lambda v: complex(bool(weights(np.asarray(v))[0])),
        _meta({"n": n, "k": k}, n, 1),
        lambda rng, m: np.array([rng.permutation([1] * k + [0] * (n - k)) for _ in range(m)], dtype=np.int64),
    )


# -- registry -------------------------------------------------------------------------------


@dataclass(frozen=True)
class ModelSpec:
    builder: Callable[..., ModelBundle]
    params: tuple[str, ...]
    smallest: dict
    summary: str


MODELS: dict[str, ModelSpec] = {
    "toric": ModelSpec(toric_code, ("lx", "ly"), {"lx": 2, "ly": 2}, "toric code on an lx x ly square torus"),
    "haah": ModelSpec(haah_code, ("l",), {"l": 2}, "Haah's cubic code on an L^3 torus"),
    "double_semion": ModelSpec(double_semion, ("lx", "ly"), {"lx": 2, "ly": 2},
                               "double semion loop gas on a honeycomb torus"),
    "aklt": ModelSpec(aklt_chain, ("sites",), {"sites": 3}, "periodic spin-1 AKLT chain in unary encoding"),
    "czx": ModelSpec(czx_ground, ("lx", "ly"), {"lx": 1, "ly": 1}, "CZX model: GHZ plaquettes"),
    "ccz": ModelSpec(ccz_model, ("lx", "ly"), {"lx": 3, "ly": 3}, "CCZ hypergraph state on a triangular torus"),
    "dicke": ModelSpec(dicke_state, ("n", "k"), {"n": 3, "k": 1}, "Dicke state W_{n,k}"),
    "cluster": ModelSpec(cluster_state, ("lx", "ly"), {"lx": 2, "ly": 2}, "cluster (graph) state on an open grid"),
}


def build_model(name: str, **params) -> ModelBundle:
    try:
        spec = MODELS[name]
    except KeyError:
        raise KeyError(f"unknown model {name!r}; known: {', '.join(sorted(MODELS))}") from None
    args = {**spec.smallest, **{k: v for k, v in params.items() if v is not None and k in spec.params}}
    if name == "haah":
        return spec.builder(args["l"])
    if name == "aklt":
        return spec.builder(args["sites"])
    return spec.builder(**args)
