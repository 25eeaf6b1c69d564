"""Stabilizer front-end: circuits, their Boltzmann-machine lowering, and the
hidden-variable elimination that turns a circuit into a closed-form state.

Every wire starts in |+> (or |0>). A circuit then reads as a sum over one
binary variable per wire segment: H opens a new segment and couples old and
new values by (-1)^{x y}, S contributes i^x, CZ (-1)^{x y}, CCZ (-1)^{x y z}.
Variables retired by H, or summed by a terminal <+| projection, are hidden.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import gf2
from .errors import DimensionError, ParseError, ResourceError, StructureError
from .phase_poly import AffineParity, ClosedFormState, PhasePolynomial, compile_to_rbm
from .rbm import DenseState, RbmNetwork, dense_cap, index_bits

ARITY = {"H": 1, "S": 1, "CZ": 2, "CNOT": 2, "CCZ": 3, "POSTPLUS": 1}
LN2 = math.log(2)


@dataclass(frozen=True)
class Gate:
    kind: str
    wires: tuple[int, ...]

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "wires", tuple(int(w) for w in self.wires))
        if kind not in ARITY:
            raise ValueError(f"unknown gate {kind!r}")
        if len(self.wires) != ARITY[kind]:
            raise ValueError(f"{kind} acts on {ARITY[kind]} wire(s), got {self.wires}")
        if len(set(self.wires)) != len(self.wires):
            raise ValueError(f"{kind} needs distinct wires, got {self.wires}")

    def __str__(self) -> str:
        return " ".join([self.kind] + [str(w) for w in self.wires])


def H(q):
    return Gate("H", (q,))


def S(q):
    return Gate("S", (q,))


def CZ(a, b):
    return Gate("CZ", (a, b))


def CNOT(c, t):
    return Gate("CNOT", (c, t))


def CCZ(a, b, c):
    return Gate("CCZ", (a, b, c))


def POSTPLUS(q):
    return Gate("POSTPLUS", (q,))


@dataclass(frozen=True)
class CliffordCircuit:
    n_wires: int
    gates: tuple[Gate, ...] = ()
    inputs: tuple[str, ...] = None

    def __post_init__(self):
        n = int(self.n_wires)
        inputs = ("plus",) * n if self.inputs is None else tuple(self.inputs)
        if len(inputs) != n or any(x not in ("plus", "zero") for x in inputs):
            raise ValueError("inputs must give 'plus' or 'zero' for every wire")
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "gates", tuple(self.gates))
        closed: set[int] = set()
        for g in self.gates:
            if any(not 0 <= w < n for w in g.wires):
                raise ValueError(f"{g} references a wire outside [0, {n})")
            if closed.intersection(g.wires):
                raise ValueError(f"{g} acts on a wire after its POSTPLUS")
            if g.kind == "POSTPLUS":
                closed.add(g.wires[0])

    @property
    def projected(self) -> tuple[int, ...]:
        return tuple(sorted(g.wires[0] for g in self.gates if g.kind == "POSTPLUS"))

    @property
    def output_wires(self) -> tuple[int, ...]:
        proj = set(self.projected)
        return tuple(w for w in range(self.n_wires) if w not in proj)

    def expanded(self) -> list[Gate]:
        """Gate list with CNOT rewritten as H(t) CZ(c,t) H(t)."""
        out = []
        for g in self.gates:
            if g.kind == "CNOT":
                c, t = g.wires
                out += [H(t), CZ(c, t), H(t)]
            else:
                out.append(g)
        return out


# -- Boltzmann-machine lowering ---------------------------------------------------


@dataclass(frozen=True)
class DbmNetwork:
    """Sum over hidden variables of alpha^phase * i^L * (-1)^(Q + C), with parities.

    ``linear`` holds i-power coefficients mod 4, ``quadratic`` and ``cubic``
    the variable pairs/triples with coefficient 1 mod 2. ``phase`` is a
    constant in units of alpha = e^{i pi/4}; ``log_norm`` a real log-magnitude.
    """

    n_vars: int
    visible: tuple[int, ...]
    hidden: tuple[int, ...]
    linear: dict = field(default_factory=dict)
    quadratic: frozenset = frozenset()
    cubic: frozenset = frozenset()
    parities: tuple = ()
    phase: int = 0
    log_norm: float = 0.0

    @property
    def live(self) -> tuple[int, ...]:
        return self.visible + self.hidden


def circuit_to_dbm(circuit: CliffordCircuit) -> DbmNetwork:
    counter = itertools.count()
    cur = [next(counter) for _ in range(circuit.n_wires)]
    parities = [(frozenset([cur[w]]), 0) for w in range(circuit.n_wires) if circuit.inputs[w] == "zero"]
    hidden: list[int] = []
    lin: dict[int, int] = {}
    quad: set = set()
    cub: set = set()
    post: set[int] = set()
    for g in circuit.expanded():
        w = g.wires
        if g.kind == "H":
            old, new = cur[w[0]], next(counter)
            hidden.append(old)
            quad ^= {(old, new)}
            cur[w[0]] = new
        elif g.kind == "S":
            lin[cur[w[0]]] = (lin.get(cur[w[0]], 0) + 1) % 4
        elif g.kind == "CZ":
            quad ^= {tuple(sorted((cur[w[0]], cur[w[1]])))}
        elif g.kind == "CCZ":
            cub ^= {tuple(sorted(cur[q] for q in w))}
        elif g.kind == "POSTPLUS":
            post.add(w[0])
    visible = tuple(cur[w] for w in range(circuit.n_wires) if w not in post)
    hidden += [cur[w] for w in sorted(post)]
    return DbmNetwork(
        next(counter),
        visible,
        tuple(sorted(hidden)),
        {k: c for k, c in lin.items() if c},
        frozenset(quad),
        frozenset(cub),
        tuple(parities),
    )


def dbm_amplitudes(dbm: DbmNetwork, max_vars: int = 20) -> np.ndarray:
    """Brute-force hidden sum for every visible assignment (big-endian)."""
    live = dbm.live
    if len(live) > max_vars:
        raise ResourceError(f"{len(live)} variables exceed the brute-force limit {max_vars}")
    pos = {v: i for i, v in enumerate(live)}
    x = index_bits(np.arange(1 << len(live)), len(live)).astype(np.int64)
    e = np.full(x.shape[0], dbm.phase, dtype=np.int64)
    for v, c in dbm.linear.items():
        e += 2 * c * x[:, pos[v]]
    for a, b in dbm.quadratic:
        e += 4 * (x[:, pos[a]] & x[:, pos[b]])
    for a, b, c in dbm.cubic:
        e += 4 * (x[:, pos[a]] & x[:, pos[b]] & x[:, pos[c]])
    ok = np.ones(x.shape[0], dtype=bool)
    for sup, const in dbm.parities:
        tot = np.full(x.shape[0], const, dtype=np.int64)
        for v in sup:
            tot += x[:, pos[v]]
        ok &= tot % 2 == 0
    alpha = np.exp(1j * np.pi / 4)
    vals = np.where(ok, alpha ** (e % 8), 0) * math.exp(dbm.log_norm)
    return vals.reshape(1 << len(dbm.visible), 1 << len(dbm.hidden)).sum(axis=1)


class _Work:
    """Mutable copy of a DBM used while eliminating."""

    def __init__(self, dbm: DbmNetwork):
        self.n_vars = dbm.n_vars
        self.visible = list(dbm.visible)
        self.hidden = list(dbm.hidden)
        self.lin = dict(dbm.linear)
        self.quad = set(dbm.quadratic)
        self.cub = set(dbm.cubic)
        self.parities = list(dbm.parities)
        self.phase = dbm.phase
        self.log_norm = dbm.log_norm

    def snapshot(self) -> DbmNetwork:
        return DbmNetwork(
            self.n_vars,
            tuple(self.visible),
            tuple(self.hidden),
            {k: c % 4 for k, c in self.lin.items() if c % 4},
            frozenset(self.quad),
            frozenset(self.cub),
            tuple(self.parities),
            self.phase % 8,
            self.log_norm,
        )

    def add_lin(self, v: int, c: int):
        self.lin[v] = (self.lin.get(v, 0) + c) % 4

    def toggle(self, a: int, b: int):
        if a == b:
            self.add_lin(a, 2)  # (-1)^{x x} = (-1)^x = i^{2x}
        else:
            self.quad ^= {(min(a, b), max(a, b))}

    def pop_partners(self, v: int) -> list[int]:
        pairs = [p for p in self.quad if v in p]
        self.quad.difference_update(pairs)
        return sorted(a if b == v else b for a, b in pairs)

    def substitute(self, j: int, terms: list[int], c0: int):
        """Replace variable j by (sum(terms) + c0) mod 2 everywhere."""
        a_j = self.lin.pop(j, 0) % 4
        for k in self.pop_partners(j):
            for m in terms:
                self.toggle(m, k)
            if c0:
                self.add_lin(k, 2)
        # i^{a_j h_j} = i^{a_j L^2}, L^2 = sum x_m + 2 sum_{m<m'} x_m x_m' + 2 c0 sum x_m + c0
        for m in terms:
            self.add_lin(m, a_j * (1 + 2 * c0))
        if a_j % 2:
            for m, m2 in itertools.combinations(terms, 2):
                self.toggle(m, m2)
        self.phase += 2 * a_j * c0
        self.hidden.remove(j)


def _lift_hidden_parities(w: _Work) -> bool:
    """delta(l mod 2) = (1/2) sum_g (-1)^{g l}: move hidden-touching parities into new hidden variables."""
    hidden = set(w.hidden)
    keep, fresh = [], []
    for sup, const in w.parities:
        if sup & hidden:
            g = w.n_vars
            w.n_vars += 1
            for v in sup:
                w.toggle(g, v)
            if const:
                w.add_lin(g, 2)
            w.log_norm -= LN2
            fresh.append(g)
        else:
            keep.append((sup, const))
    w.parities = keep
    w.hidden = fresh + w.hidden
    return bool(fresh)


def eliminate_steps(dbm: DbmNetwork) -> Iterator[tuple[dict, DbmNetwork]]:
    """Eliminate hidden variables one at a time, yielding (info, network) after each step.

    The yielded networks all have the same hidden-sum amplitudes as ``dbm``.
    """
    hidden = set(dbm.hidden)
    for tri in dbm.cubic:
        if hidden.intersection(tri):
            raise StructureError(f"cubic term {tri} touches a hidden variable")
    w = _Work(dbm)
    if _lift_hidden_parities(w):
        yield {"case": "lift", "var": None}, w.snapshot()
    while w.hidden:
        h = w.hidden[0]
        a = w.lin.pop(h, 0) % 4
        partners = w.pop_partners(h)
        if a % 2 == 0:
            c0 = a // 2
            w.log_norm += LN2
            hidden_partners = [p for p in w.hidden if p in partners and p != h]
            if not hidden_partners:
                case = "1.1"
                if partners:
                    w.parities.append((frozenset(partners), c0))
                elif c0:
                    w.parities.append((frozenset(), 1))
                w.hidden.remove(h)
            else:
                case = "1.2"
                j = hidden_partners[0]
                w.hidden.remove(h)
                w.substitute(j, [p for p in partners if p != j], c0)
            info = {"case": case, "var": h}
        else:
            # sum_h (-1)^{h y} i^{a h} = (1 + i^a) i^{-a y^2}
            w.log_norm += LN2 / 2
            w.phase += 1 if a == 1 else 7
            for p in partners:
                w.add_lin(p, -a)
            for p, p2 in itertools.combinations(partners, 2):
                w.toggle(p, p2)
            w.hidden.remove(h)
            info = {"case": "2", "var": h}
        yield info, w.snapshot()


def dbm_to_closed_form(dbm: DbmNetwork) -> ClosedFormState:
    """Read off the closed form of a DBM with no hidden variables left."""
    if dbm.hidden:
        raise StructureError("hidden variables remain")
    pos = {v: i for i, v in enumerate(dbm.visible)}
    lin = {pos[v]: 2 * c for v, c in dbm.linear.items()}
    quad = {(pos[a], pos[b]): 2 for a, b in dbm.quadratic}
    cub = {tuple(pos[v] for v in t): 1 for t in dbm.cubic}
    parities = tuple(AffineParity(frozenset(pos[v] for v in sup), c) for sup, c in dbm.parities)
    return ClosedFormState(len(dbm.visible), PhasePolynomial(lin, quad, cub, dbm.phase), parities)


def eliminate(dbm: DbmNetwork) -> ClosedFormState:
    last = dbm
    for _, last in eliminate_steps(dbm):
        pass
    return dbm_to_closed_form(last)


def circuit_to_rbm(circuit: CliffordCircuit) -> RbmNetwork:
    return compile_to_rbm(eliminate(circuit_to_dbm(circuit)))


# -- dense statevector oracle --------------------------------------------------------

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_S = np.array([1, 1j])
_PLUS = np.array([1, 1], dtype=complex) / math.sqrt(2)
_ZERO = np.array([1, 0], dtype=complex)


def apply_gates(psi: np.ndarray, gates: Sequence[Gate]) -> np.ndarray:
    """Apply unitary gates to a rank-n tensor of shape (2,)*n (wire 0 first)."""
    psi = np.array(psi, dtype=complex)
    for g in gates:
        w = g.wires
        if g.kind == "H":
            psi = np.moveaxis(np.tensordot(_H, psi, axes=([1], [w[0]])), 0, w[0])
        elif g.kind == "S":
            idx = [slice(None)] * psi.ndim
            idx[w[0]] = 1
            psi[tuple(idx)] *= 1j
        elif g.kind in ("CZ", "CCZ"):
            idx = [slice(None)] * psi.ndim
            for q in w:
                idx[q] = 1
            psi[tuple(idx)] *= -1
        elif g.kind == "CNOT":
            psi = apply_gates(psi, [H(w[1]), CZ(*w), H(w[1])])
        else:
            raise ValueError(f"{g.kind} is not a unitary gate")
    return psi


def dense_simulate(circuit: CliffordCircuit, cap: int | None = None) -> DenseState:
    cap = dense_cap() if cap is None else cap
    n = circuit.n_wires
    if n > cap:
        raise ResourceError(f"{n} wires exceed the dense cap {cap}")
    psi = np.ones((1,), dtype=complex)
    for x in circuit.inputs:
        psi = np.multiply.outer(psi, _PLUS if x == "plus" else _ZERO)
    psi = psi.reshape((2,) * n) if n else psi.reshape(())
    psi = apply_gates(psi, [g for g in circuit.gates if g.kind != "POSTPLUS"])
    for q in reversed(circuit.projected):
        psi = np.tensordot(psi, _PLUS.conj(), axes=([q], [0]))
    return DenseState(len(circuit.output_wires), psi.reshape(-1))


# -- stabilizer generators and synthesis -----------------------------------------------

_PAULI_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1), "_": (0, 0)}


@dataclass(frozen=True)
class StabilizerGenerators:
    """Signed Pauli strings as X/Z bit matrices; ``signs[r] == 1`` means a minus sign."""

    x: np.ndarray
    z: np.ndarray
    signs: np.ndarray

    def __post_init__(self):
        x, z = gf2.as_gf2(self.x), gf2.as_gf2(self.z)
        if x.ndim != 2 or x.shape != z.shape:
            raise DimensionError("X and Z parts must be matrices of the same shape")
        s = gf2.as_gf2(self.signs).reshape(-1)
        if s.shape[0] != x.shape[0]:
            raise DimensionError("one sign per generator")
        for name, arr in (("x", x), ("z", z), ("signs", s)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def k(self) -> int:
        return self.x.shape[0]

    @property
    def n(self) -> int:
        return self.x.shape[1]

    @classmethod
    def from_strings(cls, paulis: Sequence[str]) -> StabilizerGenerators:
        rows_x, rows_z, signs = [], [], []
        for p in paulis:
            p = p.strip()
            sign = 0
            if p and p[0] in "+-":
                sign, p = int(p[0] == "-"), p[1:]
            try:
                bits = [_PAULI_BITS[ch] for ch in p.upper()]
            except KeyError as exc:
                raise ValueError(f"bad Pauli letter {exc.args[0]!r} in {p!r}") from None
            rows_x.append([b[0] for b in bits])
            rows_z.append([b[1] for b in bits])
            signs.append(sign)
        if len({len(r) for r in rows_x}) > 1:
            raise ValueError("Pauli strings have different lengths")
        return cls(np.array(rows_x), np.array(rows_z), np.array(signs))

    def to_strings(self) -> list[str]:
        letters = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
        return [
            ("-" if s else "+") + "".join(letters[(int(a), int(b))] for a, b in zip(xr, zr))
            for xr, zr, s in zip(self.x, self.z, self.signs)
        ]

    def commutes(self) -> bool:
        sym = (self.x.astype(int) @ self.z.T.astype(int) + self.z.astype(int) @ self.x.T.astype(int)) % 2
        return not sym.any()

    def rank(self) -> int:
        return gf2.rank(np.hstack([self.x, self.z]))


def apply_pauli(vec: np.ndarray, n: int, x, z, sign: int = 0) -> np.ndarray:
    """(-1)^sign * P applied to a flat big-endian vector; Y = iXZ per qubit."""
    x = np.asarray(x, dtype=np.int64)
    z = np.asarray(z, dtype=np.int64)
    weights = 1 << np.arange(n - 1, -1, -1, dtype=np.int64)
    xmask = int((x * weights).sum())
    idx = np.arange(1 << n, dtype=np.int64)
    bits = index_bits(idx, n).astype(np.int64)
    zsign = (-1.0) ** ((bits @ z) % 2)
    phase = (1j) ** int((x & z).sum()) * (-1) ** int(sign)
    out = np.zeros_like(vec, dtype=complex)
    out[idx ^ xmask] = phase * zsign * vec
    return out


def projector_state(gens: StabilizerGenerators, start: np.ndarray) -> np.ndarray:
    """prod (1 + g)/2 applied to ``start``."""
    vec = np.array(start, dtype=complex)
    for r in range(gens.k):
        vec = (vec + apply_pauli(vec, gens.n, gens.x[r], gens.z[r], gens.signs[r])) / 2
    return vec


class _Tableau:
    """Aaronson-Gottesman style rows (x, z, r) with conjugation updates."""

    def __init__(self, gens: StabilizerGenerators):
        self.x = gens.x.astype(np.uint8).copy()
        self.z = gens.z.astype(np.uint8).copy()
        self.r = gens.signs.astype(np.uint8).copy()

    def h(self, a):
        self.r ^= self.x[:, a] & self.z[:, a]
        self.x[:, a], self.z[:, a] = self.z[:, a].copy(), self.x[:, a].copy()

    def s(self, a):
        self.r ^= self.x[:, a] & self.z[:, a]
        self.z[:, a] ^= self.x[:, a]

    def cnot(self, a, b):
        self.r ^= self.x[:, a] & self.z[:, b] & (self.x[:, b] ^ self.z[:, a] ^ 1)
        self.x[:, b] ^= self.x[:, a]
        self.z[:, a] ^= self.z[:, b]

    def cz(self, a, b):
        self.h(b)
        self.cnot(a, b)
        self.h(b)

    def swap_rows(self, i, j):
        for arr in (self.x, self.z, self.r):
            arr[[i, j]] = arr[[j, i]]

    def rowsum(self, h, i):
        """Row h <- row i * row h, with the sign tracked exactly."""
        x1, z1 = self.x[i].astype(int), self.z[i].astype(int)
        x2, z2 = self.x[h].astype(int), self.z[h].astype(int)
        g = np.where(
            (x1 == 0) & (z1 == 0), 0,
            np.where((x1 == 1) & (z1 == 1), z2 - x2,
                     np.where(x1 == 1, z2 * (2 * x2 - 1), x2 * (1 - 2 * z2))))
        tot = (2 * int(self.r[h]) + 2 * int(self.r[i]) + int(g.sum())) % 4
        self.r[h] = tot // 2
        self.x[h] ^= self.x[i]
        self.z[h] ^= self.z[i]

    def reduce(self, part: np.ndarray, rows: range) -> list[int]:
        """Gauss-Jordan on ``part`` restricted to ``rows``; returns pivot columns."""
        pivots = []
        top = rows.start
        for c in range(part.shape[1]):
            if top == rows.stop:
                break
            hits = [r for r in range(top, rows.stop) if part[r, c]]
            if not hits:
                continue
            if hits[0] != top:
                self.swap_rows(hits[0], top)
            for r in rows:
                if r != top and part[r, c]:
                    self.rowsum(r, top)
            pivots.append(c)
            top += 1
        return pivots


def synthesize_circuit(gens: StabilizerGenerators) -> CliffordCircuit:
    """A circuit on |+>^n preparing the state stabilized by ``gens``.

    The tableau is conjugated to +-Z_i by H on a set T, S on the qubits left
    with a Y, CZ along the resulting graph, and H everywhere; the preparation
    circuit is that sequence inverted: diagonal phases and CZs, then H on T.
    """
    n = gens.n
    if gens.k != n:
        raise ValueError(f"need {n} generators for a stabilizer state, got {gens.k}")
    if not gens.commutes():
        raise ValueError("generators do not commute")
    if gens.rank() != n:
        raise ValueError("generators are not independent")
    t = _Tableau(gens)
    kx = len(t.reduce(t.x, range(n)))
    targets = [c for c in t.reduce(t.z, range(kx, n))]
    for q in targets:
        t.h(q)
    if len(t.reduce(t.x, range(n))) != n:
        raise AssertionError("X block not invertible after Hadamards")
    ydiag = [q for q in range(n) if t.z[q, q]]
    for q in ydiag:
        t.s(q)
    if (t.z != t.z.T).any():
        raise AssertionError("graph part is not symmetric")
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if t.z[a, b]]
    for a, b in edges:
        t.cz(a, b)
    for q in range(n):
        t.h(q)
    signs = t.r.copy()
    gates: list[Gate] = [CZ(a, b) for a, b in edges]
    for q in range(n):
        power = (2 * int(signs[q]) + 3 * (q in ydiag)) % 4
        gates += [S(q)] * power
    gates += [H(q) for q in targets]
    return CliffordCircuit(n, tuple(gates))


def stabilizer_state_to_rbm(gens: StabilizerGenerators) -> RbmNetwork:
    return circuit_to_rbm(synthesize_circuit(gens))


# -- text formats ---------------------------------------------------------------------


def format_circuit(circuit: CliffordCircuit) -> str:
    lines = [f"wires {circuit.n_wires}"]
    if len(set(circuit.inputs)) <= 1:
        lines.append(f"inputs {circuit.inputs[0] if circuit.inputs else 'plus'}")
    else:
        lines.append("inputs " + " ".join(circuit.inputs))
    lines += [str(g) for g in circuit.gates]
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> CliffordCircuit:
    n = None
    inputs = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head.lower() == "wires":
                n = int(rest[0])
            elif head.lower() == "inputs":
                if n is None:
                    raise ValueError("inputs given before wires")
                inputs = tuple(rest) * n if len(rest) == 1 else tuple(rest)
                if len(inputs) != n or any(x not in ("plus", "zero") for x in inputs):
                    raise ValueError("inputs must be 'plus', 'zero' or one of those per wire")
            else:
                if n is None:
                    raise ValueError("gate before 'wires' header")
                g = Gate(head, tuple(int(r) for r in rest))
                if any(not 0 <= q < n for q in g.wires):
                    raise ValueError(f"wire out of range in {g}")
                gates.append(g)
        except (ValueError, IndexError) as exc:
            raise ParseError(str(exc) or "malformed line", lineno) from None
    if n is None:
        raise ParseError("missing 'wires <n>' header")
    try:
        return CliffordCircuit(n, tuple(gates), inputs)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_stabilizers(text: str) -> StabilizerGenerators:
    """One signed Pauli string per line, e.g. ``+XXI`` or ``-ZIZ``."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        rows.append((lineno, line))
    if not rows:
        raise ParseError("no generators")
    for lineno, line in rows:
        try:
            StabilizerGenerators.from_strings([line])
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    try:
        return StabilizerGenerators.from_strings([line for _, line in rows])
    except ValueError as exc:
        raise ParseError(str(exc)) from None
