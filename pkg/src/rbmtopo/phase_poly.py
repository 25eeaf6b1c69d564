"""Closed-form stabilizer-type states: a phase polynomial times parity checks.

Amplitude of ``v`` is ``prod_j delta(L_j(v) mod 2) * alpha**E(v)`` with
``alpha = exp(i*pi/4)`` and

    E(v) = sum_i l_i v_i + 2 sum_{i<j} q_ij v_i v_j + 4 sum c_ijk v_i v_j v_k + const  (mod 8).

Linear coefficients live mod 8, quadratic mod 4, cubic mod 2.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import gf2
from .errors import DimensionError, FitError, ParseError, ResourceError
from .gadgets import hyperedge_phase, parity_gadget, two_body_phase
from .rbm import DenseState, HiddenUnit, RbmNetwork, compose, dense_cap, index_bits

ALPHA = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))


def _key(idx: Iterable[int], size: int) -> tuple[int, ...]:
    key = tuple(sorted(int(i) for i in idx))
    if len(key) != size or len(set(key)) != size:
        raise ValueError(f"expected {size} distinct indices, got {key}")
    return key


def _reduced(terms: Mapping, size: int, modulus: int) -> dict:
    out: dict = {}
    for idx, c in terms.items():
        key = (int(idx),) if size == 1 and not isinstance(idx, tuple) else _key(idx, size)
        out[key] = (out.get(key, 0) + int(c)) % modulus
    return {k: c for k, c in sorted(out.items()) if c}


@dataclass(frozen=True)
class PhasePolynomial:
    linear: dict = field(default_factory=dict)
    quadratic: dict = field(default_factory=dict)
    cubic: dict = field(default_factory=dict)
    constant: int = 0

    def __post_init__(self):
        lin = _reduced(self.linear, 1, 8)
        object.__setattr__(self, "linear", {k[0]: c for k, c in lin.items()})
        object.__setattr__(self, "quadratic", _reduced(self.quadratic, 2, 4))
        object.__setattr__(self, "cubic", _reduced(self.cubic, 3, 2))
        object.__setattr__(self, "constant", int(self.constant) % 8)

    def max_index(self) -> int:
        idx = [i for i in self.linear]
        idx += [i for key in self.quadratic for i in key]
        idx += [i for key in self.cubic for i in key]
        return max(idx, default=-1)

    def exponent(self, configs) -> np.ndarray:
        """E(v) mod 8 for each row of ``configs``."""
        v = np.atleast_2d(np.asarray(configs, dtype=np.int64))
        e = np.full(v.shape[0], self.constant, dtype=np.int64)
        for i, c in self.linear.items():
            e += c * v[:, i]
        for (i, j), c in self.quadratic.items():
            e += 2 * c * (v[:, i] & v[:, j])
        for (i, j, k) in self.cubic:
            e += 4 * (v[:, i] & v[:, j] & v[:, k])
        return e % 8

    def is_pauli(self) -> bool:
        """True when the phases stay in {+-1, +-i}."""
        return not self.cubic and all(c % 2 == 0 for c in self.linear.values()) and self.constant % 2 == 0


@dataclass(frozen=True)
class AffineParity:
    """Constraint ``(sum(v[support]) + constant) mod 2 == 0``."""

    support: frozenset
    constant: int = 0

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(int(i) for i in self.support))
        object.__setattr__(self, "constant", int(self.constant) & 1)

    def holds(self, configs) -> np.ndarray:
        v = np.atleast_2d(np.asarray(configs, dtype=np.int64))
        total = np.full(v.shape[0], self.constant, dtype=np.int64)
        for i in self.support:
            total += v[:, i]
        return total % 2 == 0


@dataclass(frozen=True)
class ClosedFormState:
    n: int
    phase: PhasePolynomial = field(default_factory=PhasePolynomial)
    parities: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "parities", tuple(self.parities))
        top = max([self.phase.max_index()] + [max(p.support, default=-1) for p in self.parities])
        if top >= self.n:
            raise DimensionError(f"index {top} out of range for n={self.n}")

    def parity_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        rows = np.zeros((len(self.parities), self.n), dtype=np.uint8)
        consts = np.zeros(len(self.parities), dtype=np.uint8)
        for r, p in enumerate(self.parities):
            rows[r, list(p.support)] = 1
            consts[r] = p.constant
        return rows, consts

    def support_size(self) -> int:
        """Number of configurations satisfying every parity (0 if inconsistent)."""
        rows, consts = self.parity_matrix()
        if not len(self.parities):
            return 1 << self.n
        if gf2.solve(rows, consts) is None:
            return 0
        return 1 << (self.n - gf2.rank(rows))


def eval_many(state: ClosedFormState, configs) -> np.ndarray:
    v = np.atleast_2d(np.asarray(configs, dtype=np.int64))
    if v.shape[1] != state.n:
        raise DimensionError(f"configuration length {v.shape[1]} != n {state.n}")
    ok = np.ones(v.shape[0], dtype=bool)
    for p in state.parities:
        ok &= p.holds(v)
    vals = ALPHA ** state.phase.exponent(v)
    return np.where(ok, vals, 0)


def eval_closed_form(state: ClosedFormState, v: Sequence[int]) -> complex:
    if len(v) != state.n:
        raise DimensionError(f"configuration length {len(v)} != n {state.n}")
    return complex(eval_many(state, [list(v)])[0])


def closed_form_dense(state: ClosedFormState, cap: int | None = None) -> DenseState:
    cap = dense_cap() if cap is None else cap
    if state.n > cap:
        raise ResourceError(f"{state.n} qubits exceed the dense cap {cap}")
    return DenseState(state.n, eval_many(state, index_bits(np.arange(1 << state.n), state.n)))


def compile_to_rbm(state: ClosedFormState) -> RbmNetwork:
    """Emit an RBM whose amplitudes equal the closed form exactly."""
    n = state.n
    net = RbmNetwork.empty(n)
    for p in state.parities:
        if p.support:
            net = compose(net, parity_gadget(sorted(p.support), p.constant).network(n))
        elif p.constant:
            # always-false constraint: a bare unit with factor 1 + e^{i pi} = 0
            net = compose(net, RbmNetwork(n, None, (HiddenUnit(1j * math.pi),)))
    biases = [0j] * n
    for i, c in state.phase.linear.items():
        biases[i] = 1j * math.pi * c / 4
    net = compose(net, RbmNetwork(n, tuple(biases), (), 1j * math.pi * state.phase.constant / 4))
    for (i, j), c in state.phase.quadratic.items():
        net = compose(net, two_body_phase(i, j, math.pi * c / 2).network(n))
    for key in state.phase.cubic:
        net = compose(net, hyperedge_phase(key, math.pi).network(n))
    return net


def monomials(n: int, degree: int = 3) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for d in range(degree + 1):
        out.extend(itertools.combinations(range(n), d))
    return out


def fit_cubic_phase(support: Sequence[Sequence[int]], signs: Sequence[int], n: int) -> PhasePolynomial:
    """Find a mod-2 polynomial of degree <= 3 whose (-1)**c(v) matches ``signs``.

    Columns are ordered by degree, so the returned solution (free variables
    zero) prefers low-degree monomials.
    """
    rows = np.asarray(support, dtype=np.uint8).reshape(len(support), -1)
    if rows.shape[1] != n:
        raise DimensionError(f"support rows have length {rows.shape[1]}, expected {n}")
    signs = list(signs)
    if len(signs) != rows.shape[0] or any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be +1/-1, one per support element")
    monos = monomials(n)
    design = np.ones((rows.shape[0], len(monos)), dtype=np.uint8)
    for c, mono in enumerate(monos):
        for i in mono:
            design[:, c] &= rows[:, i]
    rhs = np.array([s == -1 for s in signs], dtype=np.uint8)
    x = gf2.solve(design, rhs)
    if x is None:
        r = gf2.rank(design)
        ra = gf2.rank(np.hstack([design, rhs[:, None]]))
        raise FitError(f"no cubic phase fits: rank {r} vs augmented rank {ra} over {len(monos)} monomials")
    lin, quad, cub, const = {}, {}, {}, 0
    for c in np.nonzero(x)[0]:
        mono = monos[c]
        if len(mono) == 0:
            const = 4
        elif len(mono) == 1:
            lin[mono[0]] = 4
        elif len(mono) == 2:
            quad[mono] = 2
        else:
            cub[mono] = 1
    return PhasePolynomial(lin, quad, cub, const)


# -- text format ----------------------------------------------------------------


def format_closed_form(state: ClosedFormState) -> str:
    lines = [f"n={state.n}"]
    for p in state.parities:
        tail = " +1" if p.constant else ""
        lines.append("parity: " + " ".join(str(i) for i in sorted(p.support)) + tail)
    if state.phase.constant:
        lines.append(f"const: {state.phase.constant}")
    lines += [f"lin: {i} {c}" for i, c in state.phase.linear.items()]
    lines += [f"quad: {i} {j} {c}" for (i, j), c in state.phase.quadratic.items()]
    lines += [f"cub: {i} {j} {k} {c}" for (i, j, k), c in state.phase.cubic.items()]
    return "\n".join(lines) + "\n"


def parse_closed_form(text: str) -> ClosedFormState:
    n = None
    parities: list[AffineParity] = []
    lin: dict = {}
    quad: dict = {}
    cub: dict = {}
    const = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("n="):
                n = int(line[2:])
                continue
            tag, _, rest = line.partition(":")
            toks = rest.split()
            if tag == "parity":
                constant = 0
                if toks and toks[-1] == "+1":
                    constant, toks = 1, toks[:-1]
                parities.append(AffineParity(frozenset(int(t) for t in toks), constant))
            elif tag == "const":
                const += int(toks[0])
            elif tag in ("lin", "quad", "cub"):
                size = {"lin": 1, "quad": 2, "cub": 3}[tag]
                if len(toks) != size + 1:
                    raise ValueError(f"{tag} expects {size} indices and a coefficient")
                idx = tuple(int(t) for t in toks[:size])
                c = int(toks[size])
                table = {"lin": lin, "quad": quad, "cub": cub}[tag]
                key = idx[0] if size == 1 else _key(idx, size)
                table[key] = table.get(key, 0) + c
            else:
                raise ValueError(f"unknown record {tag!r}")
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if n is None:
        raise ParseError("missing n=<int> header")
    return ClosedFormState(n, PhasePolynomial(lin, quad, cub, const), tuple(parities))
