"""Acceptance criteria, one test each, with the stated tolerances and time limits.

Run standalone (``python tests/test_acceptance.py``) or under pytest; either
way one PASS/FAIL line per criterion is printed.
"""

import cmath
import itertools
import json
import math
import time

import numpy as np
import pytest

from rbmtopo import gf2, lattices
from rbmtopo.cli import main as cli_main
from rbmtopo.clifford import CliffordCircuit, Gate, circuit_to_dbm, circuit_to_rbm, dense_simulate
from rbmtopo.gadgets import hyperedge_phase
from rbmtopo.models import (
    MODELS, Hypergraph, aklt_chain, aklt_trace, build_model, czx_ground, dicke_state, double_semion, graph_state,
    haah_code, hypergraph_state, loop_configurations, toric_code,
)
from rbmtopo.phase_poly import fit_cubic_phase
from rbmtopo.rbm import DenseState, HiddenUnit, RbmNetwork, dense_state, dumps, fidelity
from rbmtopo.verify import check_bundle, check_elimination_trace, compare_amplitudes, mutation_scan, resource_report

RESULTS = {}

TITLES = {
    1: "hyperedge gadgets k=2..6",
    2: "k=3 explicit constants, both branches",
    3: "100 random graph/hypergraph states",
    4: "200 random Clifford circuits + elimination traces",
    5: "toric 2x2 and Haah L=2",
    6: "double semion 2x2 honeycomb",
    7: "AKLT periodic chains n=3..6",
    8: "CZX 2x2 and Dicke n<=6",
    9: "hidden count <= 8 (N_e + n)",
    10: "mutation sensitivity at smallest sizes",
}


def record(num, ok, elapsed, limit, detail=""):
    within = limit is None or elapsed < limit
    RESULTS[num] = (ok and within, f"{elapsed:.2f}s" + ("" if limit is None else f" / {limit}s") + f"  {detail}")
    assert ok, detail
    assert within, f"took {elapsed:.2f}s, limit {limit}s"


def product_signs(n, edges):
    out = np.ones(1 << n, dtype=complex)
    for idx, v in enumerate(itertools.product((0, 1), repeat=n)):
        out[idx] = (-1) ** sum(all(v[i] for i in e) for e in edges)
    return out


def test_criterion_01_hyperedge_gadgets():
    t0 = time.perf_counter()
    worst, ok = 0.0, True
    for k in range(2, 7):
        g = hyperedge_phase(range(k))
        want = np.array([-1 if all(v) else 1 for v in itertools.product((0, 1), repeat=k)], dtype=complex)
        _, err = compare_amplitudes(g.factor_table(), want)
        worst = max(worst, err)
        ok &= err <= 1e-9 and g.n_hidden <= 2 * k + 4
    record(1, ok, time.perf_counter() - t0, 1.0, f"max aligned error {worst:.1e}")


def test_criterion_02_explicit_ccz_constants():
    t0 = time.perf_counter()
    want = np.array([1, 1, 1, 1, 1, 1, 1, -1], dtype=complex)
    ok, worst = True, 0.0
    for sign in (1, -1):
        # built by hand: visible biases i*pi, hidden weights i on the angle
        # 4*pi*s/3 -+ pi/3, hidden bias b, log-scale c
        b = cmath.log((1 + sign * 1j * math.sqrt(15)) / 4)
        c = math.log(2 / 3) - b
        w = 1j * 4 * math.pi / 3
        h1 = HiddenUnit(b - 1j * math.pi / 3, tuple((q, w) for q in range(3)))
        h2 = HiddenUnit(b + 1j * math.pi / 3, tuple((q, -w) for q in range(3)))
        net = RbmNetwork(3, (1j * math.pi,) * 3, (h1, h2), c)
        got = dense_state(net).amplitudes
        lib = hyperedge_phase((0, 1, 2), branch=sign).factor_table()
        err = max(np.max(np.abs(got - want)), np.max(np.abs(lib - want)))
        worst = max(worst, err)
        ok &= err <= 1e-10
    record(2, ok, time.perf_counter() - t0, 1.0, f"max error {worst:.1e} (no scale alignment)")


def test_criterion_03_random_hypergraphs():
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    worst = 1.0
    for trial in range(100):
        n = int(rng.integers(2, 11))
        if trial < 30:
            edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4]
            b = graph_state(n, edges)
        else:
            edges = set()
            for _ in range(int(rng.integers(0, 8))):
                size = int(rng.integers(1, min(5, n) + 1))
                edges.add(tuple(sorted(rng.choice(n, size, replace=False).tolist())))
            edges = sorted(edges)
            b = hypergraph_state(Hypergraph(n, tuple(edges)))
        f = fidelity(dense_state(b.rbm), DenseState(n, product_signs(n, edges)))
        worst = min(worst, f)
    record(3, worst >= 1 - 1e-9, time.perf_counter() - t0, 30.0, f"min fidelity {worst:.15f}")


def random_circuit(rng):
    n = int(rng.integers(1, 7))
    kinds = ["H", "S"] + (["CZ", "CNOT"] if n > 1 else [])
    gates = []
    for _ in range(int(rng.integers(0, 51))):
        kind = kinds[int(rng.integers(len(kinds)))]
        wires = rng.permutation(n)[: 1 if kind in ("H", "S") else 2]
        gates.append(Gate(kind, tuple(int(w) for w in wires)))
    inputs = tuple("plus" if rng.random() < 0.7 else "zero" for _ in range(n))
    return CliffordCircuit(n, tuple(gates), inputs)


def test_criterion_04_clifford_pipeline():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    worst, traced, trace_ok = 1.0, 0, True
    for _ in range(200):
        circ = random_circuit(rng)
        worst = min(worst, fidelity(dense_state(circuit_to_rbm(circ)), dense_simulate(circ)))
        dbm = circuit_to_dbm(circ)
        if len(dbm.live) <= 12:
            traced += 1
            trace_ok &= all(s["pass"] for s in check_elimination_trace(dbm))
    ok = worst >= 1 - 1e-9 and trace_ok and traced > 0
    record(4, ok, time.perf_counter() - t0, 120.0, f"min fidelity {worst:.15f}, {traced} traces checked")


def test_criterion_05_css_codes():
    t0 = time.perf_counter()
    ok, parts = True, []
    for b, xs in ((toric_code(2, 2), lattices.toric_checks(2, 2)[0]), (haah_code(2), lattices.haah_checks(2)[0])):
        st = dense_state(b.rbm)
        f = fidelity(st, b.oracle_dense())
        sup = len(st.support(1e-9 * np.abs(st.amplitudes).max()))
        ok &= f >= 1 - 1e-9 and sup == 2 ** gf2.rank(xs)
        parts.append(f"{b.name}: F={f:.15f} support {sup}=2^{gf2.rank(xs)}")
    record(5, ok, time.perf_counter() - t0, 120.0, "; ".join(parts))


def test_criterion_06_double_semion():
    t0 = time.perf_counter()
    nv, edges, _ = lattices.honeycomb(2, 2)
    loops = loop_configurations(nv, edges)
    signs = [(-1) ** lattices.count_loops(c, nv, edges) for c in loops]
    fit_cubic_phase(loops, signs, len(edges))
    b = double_semion(2, 2)
    f = fidelity(dense_state(b.rbm), b.oracle_dense())
    ok = len(edges) == 12 and len(loops) == 32 and f >= 1 - 1e-9
    record(6, ok, time.perf_counter() - t0, 30.0, f"{len(loops)} loop configs, F={f:.15f}")


def test_criterion_07_aklt():
    t_start = time.perf_counter()
    ok, parts, t6 = True, [], 0.0
    for sites in range(3, 7):
        t0 = time.perf_counter()
        b = aklt_chain(sites)
        st = dense_state(b.rbm)
        want = b.oracle_dense()
        f = fidelity(st, want)
        amps = st.amplitudes
        unary = np.zeros(amps.size, dtype=bool)
        for spins in itertools.product((0, 1, 2), repeat=sites):
            idx = 0
            for a in spins:
                idx = (idx << 3) | (4 >> a)
            unary[idx] = True
        leak = np.abs(amps[~unary]).max() / np.abs(amps).max()
        ok &= f >= 1 - 1e-9 and leak <= 1e-12
        parts.append(f"n={sites} F={f:.12f} leak={leak:.0e}")
        if sites == 3:
            ref = int(np.argmax(np.abs(want.amplitudes)))
            scaled = st["100010001"] * want.amplitudes[ref] / amps[ref]
            ok &= abs(scaled - aklt_trace([-1, 0, 1])) <= 1e-9 and abs(aklt_trace([-1, 0, 1]) - 2j) < 1e-12
            parts.append(f"psi(-1,0,+1)={scaled:.6f}")
        if sites == 6:
            t6 = time.perf_counter() - t0
    elapsed = time.perf_counter() - t_start
    ok &= t6 < 120.0
    record(7, ok, elapsed, 120.0 * 4, ", ".join(parts) + f", n=6 in {t6:.2f}s")


def test_criterion_08_czx_dicke():
    t0 = time.perf_counter()
    ok = True
    b = czx_ground(2, 2)
    st = dense_state(b.rbm)
    sup = st.support(1e-12)
    plaqs = b.metadata["plaquettes"]
    want = {
        int("".join(str(v) for v in bits), 2)
        for choice in itertools.product((0, 1), repeat=len(plaqs))
        for bits in [[choice[next(p for p, pl in enumerate(plaqs) if q in pl)] for q in range(16)]]
    }
    mags = np.abs(st.amplitudes[sup])
    ok &= set(sup.tolist()) == want and np.allclose(mags, mags[0], rtol=1e-10)
    for n in range(1, 7):
        for k in range(n + 1):
            st = dense_state(dicke_state(n, k).rbm)
            sup = st.support(1e-10)
            mags = np.abs(st.amplitudes[sup])
            ok &= set(sup.tolist()) == {i for i in range(1 << n) if bin(i).count("1") == k}
            ok &= bool(np.allclose(mags, mags[0], rtol=1e-10))
    record(8, ok, time.perf_counter() - t0, 10.0, f"CZX support {len(want)}, Dicke 27 (n,k) pairs")


def test_criterion_09_resource_law(tmp_path, capsys):
    t0 = time.perf_counter()
    ok, parts = True, []
    for name in MODELS:
        b = build_model(name)
        rep = resource_report(b)
        path = tmp_path / f"{name}.json"
        cli_main(["build", "--model", name, "-o", str(path)])
        capsys.readouterr()
        cli_main(["stats", str(path), "--json"])
        stats = json.loads(capsys.readouterr().out)
        ok &= rep["within_bound"] is True and stats["within_bound"] is True and stats["hidden"] == rep["hidden"]
        parts.append(f"{name} {rep['hidden']}<={rep['bound']}")
    record(9, ok, time.perf_counter() - t0, None, ", ".join(parts))


def test_criterion_10_mutation_sensitivity():
    t0 = time.perf_counter()
    ok, total, parts = True, 0, []
    for name in MODELS:
        b = build_model(name)
        ok &= check_bundle(b).passed
        hits = mutation_scan(b, delta=1e-3)
        total += len(hits)
        missed = [(u, s) for u, s, hit in hits if not hit]
        ok &= bool(hits) and not missed
        if missed:
            parts.append(f"{name} missed {missed[:3]}")
    record(10, ok, time.perf_counter() - t0, None, f"{total} single-weight mutations detected" + "; ".join(parts))


def summary_lines():
    lines = []
    for num in sorted(TITLES):
        if num in RESULTS:
            ok, detail = RESULTS[num]
            lines.append(f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {TITLES[num]}  ({detail})")
        else:
            lines.append(f"[FAIL] criterion {num:2d}: {TITLES[num]}  (not run)")
    return lines


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
