"""Hidden-neuron gadgets: small RBM fragments realizing one correlation factor.

All gadgets act on {0,1} visibles. Symmetric factors depend only on the sum
``s`` of the support bits and are built from ``cos_pair`` blocks: two hidden
units whose product, with a constant log-scale, equals
``2A cos(omega*s + phi0) + B``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import SynthesisError
from .rbm import HiddenUnit, RbmNetwork, dense_state

KINDS = ("parity", "two_body_phase", "hyperedge_phase", "cos_pair", "indicator")

IPI = 1j * math.pi


@dataclass(frozen=True, eq=False)
class Gadget:
    """A synthesized factor: hidden units plus visible-bias and scale shifts."""

    kind: str
    support: tuple[int, ...]
    params: dict = field(default_factory=dict)
    visible_biases: tuple[tuple[int, complex], ...] = ()
    hidden: tuple[HiddenUnit, ...] = ()
    log_scale: complex = 0j

    @property
    def n_hidden(self) -> int:
        return len(self.hidden)

    def network(self, n: int) -> RbmNetwork:
        biases = [0j] * n
        for k, a in self.visible_biases:
            biases[k] += a
        return RbmNetwork(n, tuple(biases), self.hidden, self.log_scale)

    def local_network(self) -> RbmNetwork:
        """The gadget alone, with its support relabelled 0..k-1."""
        pos = {q: i for i, q in enumerate(self.support)}
        biases = [0j] * len(self.support)
        for k, a in self.visible_biases:
            biases[pos[k]] += a
        hidden = tuple(HiddenUnit(h.bias, tuple((pos[k], x) for k, x in h.weights)) for h in self.hidden)
        return RbmNetwork(len(self.support), tuple(biases), hidden, self.log_scale)

    def factor_table(self) -> np.ndarray:
        """Factor values over all 2**k support assignments, big-endian."""
        return dense_state(self.local_network(), cap=max(24, len(self.support))).amplitudes


def _support(indices: Iterable[int]) -> tuple[int, ...]:
    sup = tuple(int(i) for i in indices)
    if len(set(sup)) != len(sup):
        raise ValueError(f"repeated index in support {sup}")
    if any(i < 0 for i in sup):
        raise ValueError("negative index in support")
    return sup


def merge(kind: str, support, params: dict, parts: Iterable[Gadget], extra_biases=(), extra_scale=0j) -> Gadget:
    """Concatenate the hidden units and shifts of several gadgets."""
    biases: dict[int, complex] = {}
    hidden: list[HiddenUnit] = []
    scale = complex(extra_scale)
    for k, a in extra_biases:
        biases[k] = biases.get(k, 0j) + a
    for g in parts:
        for k, a in g.visible_biases:
            biases[k] = biases.get(k, 0j) + a
        hidden.extend(g.hidden)
        scale += g.log_scale
    return Gadget(kind, tuple(support), params, tuple(sorted(biases.items())), tuple(hidden), scale)


def parity_gadget(support, target_parity: int = 0) -> Gadget:
    """Factor 1 when sum(v[support]) + target_parity is even, exactly 0 otherwise."""
    sup = _support(support)
    if not sup:
        raise ValueError("parity gadget needs a nonempty support")
    p = int(target_parity) & 1
    unit = HiddenUnit(IPI * p, tuple((k, IPI) for k in sup))
    return Gadget("parity", sup, {"target_parity": p}, (), (unit,), -math.log(2))


def _reduce_angle(phi: float) -> float:
    """Representative of phi modulo 2*pi in (-pi, pi]."""
    r = math.remainder(phi, 2 * math.pi)
    return math.pi if math.isclose(r, -math.pi) else r


def two_body_phase(i: int, j: int, phi: float) -> Gadget:
    """Factor exp(i*phi*v_i*v_j) with one hidden unit."""
    sup = _support((i, j))
    if sup[0] == sup[1]:
        raise ValueError("two_body_phase needs distinct indices")
    phi_r = _reduce_angle(phi)
    params = {"phi": phi}
    if math.isclose(phi_r, 0.0, abs_tol=1e-15):
        return Gadget("two_body_phase", sup, params)
    if math.isclose(phi_r, math.pi):
        # H-gate coupling i*pi*v*h - i*pi*v/2 - i*pi*h/4 + i*pi/8 - ln2/2 per visible;
        # the extra ln2/2 turns (-1)^{v_i v_j}/sqrt(2) into (-1)^{v_i v_j}.
        unit = HiddenUnit(-IPI / 2, ((sup[0], IPI), (sup[1], IPI)))
        biases = ((sup[0], -IPI / 2), (sup[1], -IPI / 2))
        scale = IPI / 4 - math.log(2) + math.log(2) / 2
        return Gadget("two_body_phase", sup, params, biases, (unit,), scale)
    # hidden weight i*pi: factor (1 + x(-1)^s) with x = i tan(phi/4) solves
    # e^c(1+x) = 1, e^{c+a}(1-x) = 1, e^{c+2a}(1+x) = e^{i phi}
    x = 1j * math.tan(phi_r / 4)
    unit = HiddenUnit(cmath.log(x), ((sup[0], IPI), (sup[1], IPI)))
    a = 1j * phi_r / 2
    return Gadget("two_body_phase", sup, params, ((sup[0], a), (sup[1], a)), (unit,), -cmath.log(1 + x))


def cos_pair(support, omega: float, phi0: float, A: complex, B: complex, branch: int = 1) -> Gadget:
    """Two hidden units realizing 2A*cos(omega*sum(v) + phi0) + B.

    With e^{c+b} = A and e^c (1 + e^{2b}) = B the product
    e^c (1 + e^{b + i x})(1 + e^{b - i x}) expands to the target. ``branch``
    picks the sign of the square root; the other branch is tried if the
    requested one is singular.
    """
    sup = _support(support)
    A, B = complex(A), complex(B)
    if A == 0:
        raise ValueError("cos_pair needs A != 0")
    disc = cmath.sqrt(B * B - 4 * A * A)
    # the two roots of A r^2 - B r + A multiply to 1; take the larger one
    # directly and the other as its reciprocal to avoid cancellation
    plus, minus = (B + disc) / (2 * A), (B - disc) / (2 * A)
    if abs(plus) >= abs(minus):
        minus = 1 / plus if plus != 0 else minus
    else:
        plus = 1 / minus
    roots = {1: plus, -1: minus}
    b = None
    for sign in (branch, -branch):
        root = roots[sign]
        if root != 0 and math.isfinite(abs(root)):
            b = cmath.log(root)
            break
    if b is None:
        raise SynthesisError(f"cos_pair: no finite branch for A={A}, B={B}")
    w = 1j * omega
    h1 = HiddenUnit(b + 1j * phi0, tuple((k, w) for k in sup))
    h2 = HiddenUnit(b - 1j * phi0, tuple((k, -w) for k in sup))
    params = {"omega": omega, "phi0": phi0, "A": A, "B": B, "branch": branch}
    return Gadget("cos_pair", sup, params, (), (h1, h2), cmath.log(A) - b)


def level_values(k: int) -> list[float]:
    """Distinct values of cos(2*pi*d/(k+1)) over the nonzero level offsets d."""
    return [math.cos(2 * math.pi * d / (k + 1)) for d in range(1, (k + 1) // 2 + 1)]


def _polish(coeffs: np.ndarray, roots: np.ndarray, iters: int = 4) -> np.ndarray:
    deriv = P.polyder(coeffs)
    for _ in range(iters):
        d = P.polyval(roots, deriv)
        step = np.where(d != 0, P.polyval(roots, coeffs) / np.where(d != 0, d, 1), 0)
        roots = roots - step
    return roots


def _linear_factors(coeffs: np.ndarray, label: str) -> tuple[complex, np.ndarray]:
    """Leading coefficient and roots of a complex polynomial (low order first)."""
    coeffs = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    lead = coeffs[-1]
    if len(coeffs) == 1:
        return complex(lead), np.zeros(0, dtype=complex)
    roots = _polish(coeffs, P.polyroots(coeffs))
    resid = np.abs(P.polyval(roots, coeffs)) / np.abs(coeffs).sum()
    if resid.max() > 1e-12:
        raise SynthesisError(f"{label}: root polish did not converge (residuals {resid.tolist()})")
    return complex(lead), roots


def hyperedge_phase(support, phi: float = math.pi, branch: int = 1) -> Gadget:
    """Factor exp(i*phi*prod(v[support]))."""
    sup = _support(support)
    k = len(sup)
    if k == 0:
        raise ValueError("hyperedge needs at least one vertex")
    params = {"phi": phi}
    phi_r = _reduce_angle(phi)
    if math.isclose(phi_r, 0.0, abs_tol=1e-15):
        return Gadget("hyperedge_phase", sup, params)
    if k == 1:
        return Gadget("hyperedge_phase", sup, params, ((sup[0], 1j * phi_r),))
    if k == 2:
        g = two_body_phase(sup[0], sup[1], phi_r)
        return merge("hyperedge_phase", sup, params, [g])
    if k == 3 and math.isclose(phi_r, math.pi):
        return _ccz_gadget(sup, branch)
    # Lagrange-style top indicator in t(s) = cos(2 pi (s - k)/(k + 1)), which is
    # 1 only at s = k; g(t) = 1 + (e^{i phi} - 1) f_top(t) is factored into
    # linear terms, each one a cos_pair.
    omega = 2 * math.pi / (k + 1)
    phi0 = -omega * k
    u = np.array(level_values(k))
    f_top = P.polyfromroots(u) / np.prod(1 - u)
    g = np.zeros(len(f_top), dtype=complex)
    g[0] = 1
    g = g + (cmath.exp(1j * phi_r) - 1) * f_top
    lead, roots = _linear_factors(g, f"hyperedge_phase(k={k}, phi={phi})")
    parts = [cos_pair(sup, omega, phi0, 0.5, -r, branch) for r in roots]
    return merge("hyperedge_phase", sup, params, parts, extra_scale=cmath.log(lead))


def _ccz_gadget(sup, branch: int) -> Gadget:
    # (-1)^{v1 v2 v3} = e^{i pi s} (1/3 + (4/3) cos(4 pi s/3 - pi/3)), with
    # w = i on the angle, b = ln((1 +- i sqrt 15)/4), c = ln(2/3) - b
    b = cmath.log((1 + branch * 1j * math.sqrt(15)) / 4)
    c = math.log(2 / 3) - b
    omega, phi0 = 4 * math.pi / 3, -math.pi / 3
    h1 = HiddenUnit(b + 1j * phi0, tuple((k, 1j * omega) for k in sup))
    h2 = HiddenUnit(b - 1j * phi0, tuple((k, -1j * omega) for k in sup))
    biases = tuple((k, IPI) for k in sup)
    return Gadget("hyperedge_phase", sup, {"phi": math.pi, "branch": branch}, biases, (h1, h2), c)


def indicator_weight(support, m: int, branch: int = 1) -> Gadget:
    """Factor 1 when exactly m support bits are set, 0 otherwise."""
    sup = _support(support)
    k = len(sup)
    if not 0 <= m <= k:
        raise ValueError(f"target weight {m} outside [0, {k}]")
    params = {"m": m}
    if k == 0:
        return Gadget("indicator", sup, params)
    if k == 3 and m == 1:
        # h = (-1)^s (-1/3 + (2/3) cos(4 pi s/3 - pi/3))
        cp = cos_pair(sup, 4 * math.pi / 3, -math.pi / 3, 1 / 3, -1 / 3, branch)
        return merge("indicator", sup, params, [cp], extra_biases=[(q, IPI) for q in sup])
    omega = 2 * math.pi / (k + 1)
    phi0 = -omega * m
    u = level_values(k)
    parts = [cos_pair(sup, omega, phi0, 0.5, -x, branch) for x in u]
    scale = -sum(math.log(1 - x) for x in u)
    return merge("indicator", sup, params, parts, extra_scale=scale)
