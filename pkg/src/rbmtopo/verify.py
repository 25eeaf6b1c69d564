"""Differential checks of compiled networks against their oracles."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass

import numpy as np

from .clifford import DbmNetwork, dbm_amplitudes, eliminate_steps
from .errors import ResourceError
from .models import BOUND_FACTOR, ModelBundle
from .rbm import DenseState, HiddenUnit, RbmNetwork, amplitudes, dense_cap, dense_state

SPOT_SAMPLES = 10_000
TRACE_MAX_VARS = 12
SNAPSHOT_SLACK = 8


@dataclass
class VerifyReport:
    model: str
    n: int
    fidelity: float
    max_aligned_amp_error: float
    hidden_count: int
    bound: int | None
    elapsed: float
    passed: bool
    tol: float
    tol_amp: float
    mode: str = "dense"
    samples: int | None = None
    seed: int | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=1, sort_keys=True)

    def table(self) -> str:
        rows = [
            ("model", self.model),
            ("qubits", self.n),
            ("mode", self.mode if self.samples is None else f"{self.mode} ({self.samples} configs, seed {self.seed})"),
            ("fidelity", f"{self.fidelity:.15f}"),
            ("max aligned amp error", f"{self.max_aligned_amp_error:.3e}"),
            ("hidden units", self.hidden_count),
            ("hidden bound", "-" if self.bound is None else self.bound),
            ("elapsed [s]", f"{self.elapsed:.3f}"),
            ("result", "PASS" if self.passed else "FAIL"),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def compare_amplitudes(got: np.ndarray, want: np.ndarray) -> tuple[float, float]:
    """Fidelity and max amplitude error after scaling at the largest oracle entry.

    The error is relative to max |want|. A zero network amplitude at the
    reference point gives an infinite error.
    """
    got = np.asarray(got, dtype=complex)
    want = np.asarray(want, dtype=complex)
    n_want = np.vdot(want, want).real
    if n_want == 0:
        raise ZeroDivisionError("oracle state has zero norm")
    n_got = np.vdot(got, got).real
    fid = 0.0 if n_got == 0 else float(abs(np.vdot(got, want)) ** 2 / (n_got * n_want))
    ref = int(np.argmax(np.abs(want)))
    if got[ref] == 0 or not np.all(np.isfinite(got)):
        return fid, float("inf")
    scale = want[ref] / got[ref]
    err = float(np.max(np.abs(got * scale - want)) / abs(want[ref]))
    return fid, err


def spot_configs(n: int, samples: int, seed: int) -> np.ndarray:
    """All-zeros, all-ones, then ``samples`` uniform configurations."""
    rng = np.random.default_rng(seed)
    rand = rng.integers(0, 2, size=(samples, n), dtype=np.int64)
    return np.vstack([np.zeros((1, n), np.int64), np.ones((1, n), np.int64), rand])


def check_bundle(
    bundle: ModelBundle,
    tol: float = 1e-9,
    tol_amp: float = 1e-9,
    samples: int = SPOT_SAMPLES,
    seed: int = 0,
    force_spot: bool = False,
) -> VerifyReport:
    """Compare ``bundle.rbm`` with its oracle; dense when n fits the cap, else spot checks."""
    t0 = time.perf_counter()
    net = bundle.rbm
    n = net.n_visible
    dense_ok = bundle.oracle_dense is not None and n <= dense_cap() and not force_spot
    if dense_ok:
        want = bundle.oracle_dense()
        if want.n != n:
            raise ValueError(f"oracle has {want.n} qubits, network has {n}")
        got = dense_state(net)
        mode, used, used_seed = "dense", None, None
        fid, err = compare_amplitudes(got.amplitudes, want.amplitudes)
    else:
        if bundle.oracle_amplitude is None:
            raise ResourceError(f"{n} qubits exceed the dense cap and no amplitude oracle is available")
        configs = spot_configs(n, samples, seed)
        if bundle.sample_support is not None:
            extra = bundle.sample_support(np.random.default_rng(seed + 1), max(1, samples // 10))
            configs = np.vstack([configs, np.asarray(extra, dtype=np.int64)])
        want = np.array([bundle.oracle_amplitude(c) for c in configs])
        got = amplitudes(net, configs)
        mode, used, used_seed = "spot", len(configs), seed
        fid, err = compare_amplitudes(got, want)
    passed = fid >= 1 - tol and err <= tol_amp
    return VerifyReport(
        bundle.name, n, fid, err, net.n_hidden, bundle.metadata.get("bound"),
        time.perf_counter() - t0, bool(passed), tol, tol_amp, mode, used, used_seed,
    )


def check_states(name: str, net: RbmNetwork, oracle: DenseState, tol: float = 1e-9, tol_amp: float = 1e-9) -> VerifyReport:
    bundle = ModelBundle(name, net, lambda: oracle, None, {})
    return check_bundle(bundle, tol, tol_amp)


def check_elimination_trace(dbm: DbmNetwork, max_vars: int = TRACE_MAX_VARS, atol: float = 1e-9) -> list[dict]:
    """Check that every elimination step keeps the hidden-sum amplitudes unchanged.

    The comparison is exact, including the tracked normalization. The
    variable limit applies to the input; lifted parities may add a few
    auxiliary variables to the intermediate networks.
    """
    if len(dbm.live) > max_vars:
        raise ResourceError(f"{len(dbm.live)} variables exceed the trace limit {max_vars}")
    ref = dbm_amplitudes(dbm, max_vars)
    scale = max(1.0, float(np.max(np.abs(ref))))
    out = []
    for step, (info, snap) in enumerate(eliminate_steps(dbm), 1):
        err = float(np.max(np.abs(dbm_amplitudes(snap, max_vars + SNAPSHOT_SLACK) - ref))) / scale
        out.append({"step": step, **info, "hidden_left": len(snap.hidden), "max_error": err, "pass": err <= atol})
    return out


def network_stats(net: RbmNetwork) -> dict:
    n, m = net.n_visible, net.n_hidden
    return {
        "visible": n,
        "hidden": m,
        "weights": net.n_weights,
        "density": 0.0 if n * m == 0 else net.n_weights / (n * m),
        "max_fan_in": max((len(h.weights) for h in net.hidden), default=0),
    }


def resource_report(bundle: ModelBundle) -> dict:
    """Hidden-unit count against the bound 8 (N_e + n); reports, never raises."""
    out = network_stats(bundle.rbm)
    n_terms = bundle.metadata.get("n_terms")
    out["model"] = bundle.name
    out["n_terms"] = n_terms
    out["bound_factor"] = BOUND_FACTOR
    out["bound"] = None if n_terms is None else BOUND_FACTOR * (n_terms + out["visible"])
    out["within_bound"] = None if n_terms is None else out["hidden"] <= out["bound"]
    return out


def perturb_weight(net: RbmNetwork, unit: int, slot: int, delta: complex) -> RbmNetwork:
    hidden = list(net.hidden)
    h = hidden[unit]
    w = list(h.weights)
    k, x = w[slot]
    w[slot] = (k, x + delta)
    hidden[unit] = HiddenUnit(h.bias, tuple(w))
    return RbmNetwork(net.n_visible, net.visible_biases, tuple(hidden), net.log_scale)


def mutation_scan(bundle: ModelBundle, delta: complex = 1e-3, tol: float = 1e-9) -> list[tuple[int, int, bool]]:
    """Perturb each connected weight in turn; report (unit, slot, detected)."""
    oracle = bundle.oracle_dense
    if oracle is not None and bundle.n <= dense_cap():
        reference = oracle()
        oracle = lambda: reference  # noqa: E731
    out = []
    for u, h in enumerate(bundle.rbm.hidden):
        for s in range(len(h.weights)):
            mutated = ModelBundle(bundle.name, perturb_weight(bundle.rbm, u, s, delta),
                                  oracle, bundle.oracle_amplitude, bundle.metadata, bundle.sample_support)
            out.append((u, s, not check_bundle(mutated, tol, tol).passed))
    return out

