"""Complex RBM wave functions over {0,1} visibles.

The amplitude of a visible configuration ``v`` is

    exp(log_scale + sum_i a_i v_i) * prod_j (1 + exp(theta_j)),
    theta_j = b_j + sum_k W_kj v_k,

so every hidden unit contributes one multiplicative factor. Basis states are
indexed big-endian: visible 0 is the most significant bit.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionError, ResourceError

DEFAULT_DENSE_CAP = 24
ZERO_THRESHOLD = 1e-12
LOG_ZERO = complex(-math.inf, 0.0)
BIT_ORDER = "big_endian"

_CHUNK = 1 << 15


def dense_cap() -> int:
    """Dense enumeration cap, overridable through RBMTOPO_DENSE_CAP."""
    raw = os.environ.get("RBMTOPO_DENSE_CAP")
    return int(raw) if raw else DEFAULT_DENSE_CAP


def is_zero_log(x: complex) -> bool:
    return math.isinf(x.real) and x.real < 0


def index_bits(indices, n: int) -> np.ndarray:
    """Big-endian bit rows for the given basis indices."""
    idx = np.asarray(indices, dtype=np.int64).reshape(-1, 1)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx >> shifts) & 1).astype(np.uint8)


def bits_index(bits: Sequence[int]) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | int(b)
    return out


def parse_bits(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text or any(ch not in "01" for ch in text):
        raise ValueError(f"not a bitstring: {text!r}")
    return tuple(int(ch) for ch in text)


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


@dataclass(frozen=True)
class HiddenUnit:
    """One hidden neuron: complex bias and sparse visible couplings."""

    bias: complex
    weights: tuple[tuple[int, complex], ...] = ()

    def __post_init__(self):
        w = self.weights
        if isinstance(w, Mapping):
            w = w.items()
        merged: dict[int, complex] = {}
        for k, val in w:
            merged[int(k)] = merged.get(int(k), 0j) + complex(val)
        object.__setattr__(self, "weights", tuple(sorted(merged.items())))
        object.__setattr__(self, "bias", complex(self.bias))
        if not _finite(self.bias) or not all(_finite(x) for _, x in self.weights):
            raise ValueError("hidden unit has non-finite parameters")
        if any(k < 0 for k, _ in self.weights):
            raise ValueError("negative visible index")

    def shifted(self, offset: int) -> HiddenUnit:
        return HiddenUnit(self.bias, tuple((k + offset, x) for k, x in self.weights))


@dataclass(frozen=True)
class RbmNetwork:
    n_visible: int
    visible_biases: tuple[complex, ...] = None
    hidden: tuple[HiddenUnit, ...] = ()
    log_scale: complex = 0j

    def __post_init__(self):
        n = int(self.n_visible)
        if n < 0:
            raise ValueError("n_visible must be non-negative")
        a = self.visible_biases
        a = (0j,) * n if a is None else tuple(complex(x) for x in a)
        if len(a) != n:
            raise DimensionError(f"expected {n} visible biases, got {len(a)}")
        object.__setattr__(self, "visible_biases", a)
        object.__setattr__(self, "hidden", tuple(self.hidden))
        object.__setattr__(self, "log_scale", complex(self.log_scale))
        if not all(_finite(x) for x in a) or not _finite(self.log_scale):
            raise ValueError("network has non-finite parameters")
        for h in self.hidden:
            if any(k >= n for k, _ in h.weights):
                raise DimensionError("hidden unit references a visible index out of range")

    @classmethod
    def empty(cls, n: int) -> RbmNetwork:
        return cls(n)

    @property
    def n_hidden(self) -> int:
        return len(self.hidden)

    @property
    def n_weights(self) -> int:
        return sum(len(h.weights) for h in self.hidden)

    @cached_property
    def weight_matrix(self) -> np.ndarray:
        w = np.zeros((self.n_visible, self.n_hidden), dtype=complex)
        for j, h in enumerate(self.hidden):
            for k, x in h.weights:
                w[k, j] += x
        return w

    @cached_property
    def hidden_biases(self) -> np.ndarray:
        return np.array([h.bias for h in self.hidden], dtype=complex)

    @cached_property
    def visible_bias_vector(self) -> np.ndarray:
        return np.array(self.visible_biases, dtype=complex)


@dataclass(frozen=True)
class DenseState:
    """Unnormalized amplitude vector over 2**n big-endian basis states."""

    n: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.n,):
            raise DimensionError(f"expected {1 << self.n} amplitudes, got shape {amps.shape}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def support(self, atol: float = 0.0) -> np.ndarray:
        return np.nonzero(np.abs(self.amplitudes) > atol)[0]

    def __getitem__(self, bits) -> complex:
        if isinstance(bits, str):
            bits = parse_bits(bits)
        return complex(self.amplitudes[bits_index(bits)])


def _log_factors(theta: np.ndarray, zero_threshold: float):
    """ln(1 + e^theta) elementwise plus a mask of exact zeros."""
    if not np.all(np.isfinite(theta)):
        raise FloatingPointError("non-finite effective angle")
    flip = theta.real > 0
    z = np.where(flip, -theta, theta)
    ez = np.exp(z)
    f = 1.0 + ez
    zero = np.abs(f) < zero_threshold * (1.0 + np.abs(ez))
    logs = np.log(np.where(zero, 1.0, f)) + np.where(flip, theta, 0.0)
    return logs, zero


def log_amplitudes(net: RbmNetwork, configs, zero_threshold: float = ZERO_THRESHOLD) -> np.ndarray:
    """Vectorized log-amplitudes for rows of ``configs``; zeros map to LOG_ZERO."""
    v = np.asarray(configs)
    if v.ndim == 1:
        v = v.reshape(1, -1)
    if v.shape[1] != net.n_visible:
        raise DimensionError(f"configuration length {v.shape[1]} != n_visible {net.n_visible}")
    v = v.astype(float)
    out = net.log_scale + v @ net.visible_bias_vector
    if net.n_hidden:
        theta = net.hidden_biases + v @ net.weight_matrix
        logs, zero = _log_factors(theta, zero_threshold)
        out = out + logs.sum(axis=1)
        out = np.where(zero.any(axis=1), LOG_ZERO, out)
    return np.asarray(out, dtype=complex)


def amplitudes(net: RbmNetwork, configs, zero_threshold: float = ZERO_THRESHOLD) -> np.ndarray:
    logs = log_amplitudes(net, configs, zero_threshold)
    out = np.zeros(logs.shape, dtype=complex)
    live = ~np.isneginf(logs.real)
    out[live] = np.exp(logs[live])
    return out


def log_amplitude(net: RbmNetwork, v: Sequence[int], zero_threshold: float = ZERO_THRESHOLD) -> complex:
    """Log of the amplitude, or LOG_ZERO when a hidden factor vanishes."""
    if len(v) != net.n_visible:
        raise DimensionError(f"configuration length {len(v)} != n_visible {net.n_visible}")
    return complex(log_amplitudes(net, [list(v)], zero_threshold)[0])


def amplitude(net: RbmNetwork, v: Sequence[int], zero_threshold: float = ZERO_THRESHOLD) -> complex:
    x = log_amplitude(net, v, zero_threshold)
    return 0j if is_zero_log(x) else complex(np.exp(x))


def dense_state(net: RbmNetwork, cap: int | None = None) -> DenseState:
    cap = dense_cap() if cap is None else cap
    n = net.n_visible
    if n > cap:
        raise ResourceError(f"{n} visibles exceed the dense cap {cap}")
    total = 1 << n
    out = np.empty(total, dtype=complex)
    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        out[start:stop] = amplitudes(net, index_bits(np.arange(start, stop), n))
    return DenseState(n, out)


def compose(net1: RbmNetwork, net2: RbmNetwork) -> RbmNetwork:
    """Pointwise product of two wave functions on the same visibles."""
    if net1.n_visible != net2.n_visible:
        raise DimensionError("compose needs equal visible counts")
    biases = tuple(x + y for x, y in zip(net1.visible_biases, net2.visible_biases))
    return RbmNetwork(net1.n_visible, biases, net1.hidden + net2.hidden, net1.log_scale + net2.log_scale)


def compose_all(n: int, nets: Iterable[RbmNetwork]) -> RbmNetwork:
    out = RbmNetwork.empty(n)
    for net in nets:
        out = compose(out, net)
    return out


def tensor(net1: RbmNetwork, net2: RbmNetwork) -> RbmNetwork:
    """Product state: net2's visibles are appended after net1's."""
    shift = net1.n_visible
    return RbmNetwork(
        net1.n_visible + net2.n_visible,
        net1.visible_biases + net2.visible_biases,
        net1.hidden + tuple(h.shifted(shift) for h in net2.hidden),
        net1.log_scale + net2.log_scale,
    )


def permute_visible(net: RbmNetwork, perm: Sequence[int]) -> RbmNetwork:
    """Relabel visible ``k`` as ``perm[k]``."""
    perm = list(perm)
    if sorted(perm) != list(range(net.n_visible)):
        raise ValueError("not a permutation of the visible indices")
    biases = [0j] * net.n_visible
    for k, a in enumerate(net.visible_biases):
        biases[perm[k]] = a
    hidden = tuple(HiddenUnit(h.bias, tuple((perm[k], x) for k, x in h.weights)) for h in net.hidden)
    return RbmNetwork(net.n_visible, tuple(biases), hidden, net.log_scale)


def fidelity(s1: DenseState, s2: DenseState) -> float:
    if s1.n != s2.n:
        raise DimensionError("fidelity needs states on the same number of qubits")
    n1 = np.vdot(s1.amplitudes, s1.amplitudes).real
    n2 = np.vdot(s2.amplitudes, s2.amplitudes).real
    if n1 == 0 or n2 == 0:
        raise ZeroDivisionError("fidelity of a zero-norm state")
    return float(abs(np.vdot(s1.amplitudes, s2.amplitudes)) ** 2 / (n1 * n2))


# -- JSON export ---------------------------------------------------------------


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def network_to_dict(net: RbmNetwork, meta: Mapping | None = None) -> dict:
    out = {
        "n": net.n_visible,
        "visible_biases": [_pair(a) for a in net.visible_biases],
        "hidden": [
            {"bias": _pair(h.bias), "weights": [[k, x.real, x.imag] for k, x in h.weights]}
            for h in net.hidden
        ],
        "log_scale": _pair(net.log_scale),
        "bit_order": BIT_ORDER,
    }
    if meta:
        out["meta"] = dict(meta)
    return out


def network_from_dict(d: Mapping) -> RbmNetwork:
    if d.get("bit_order", BIT_ORDER) != BIT_ORDER:
        raise ValueError(f"unsupported bit order {d.get('bit_order')!r}")
    hidden = tuple(
        HiddenUnit(complex(*h["bias"]), tuple((int(k), complex(re, im)) for k, re, im in h["weights"]))
        for h in d["hidden"]
    )
    return RbmNetwork(
        int(d["n"]),
        tuple(complex(re, im) for re, im in d["visible_biases"]),
        hidden,
        complex(*d["log_scale"]),
    )


def dumps(net: RbmNetwork, meta: Mapping | None = None) -> str:
    # float repr is the shortest string that round-trips bit-exactly
    return json.dumps(network_to_dict(net, meta), indent=1, sort_keys=True) + "\n"


def loads(text: str) -> tuple[RbmNetwork, dict]:
    d = json.loads(text)
    return network_from_dict(d), dict(d.get("meta") or {})
