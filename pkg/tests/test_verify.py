import cmath
import json

import numpy as np
import pytest

from rbmtopo.clifford import H, CliffordCircuit, circuit_to_dbm
from rbmtopo.errors import ResourceError
from rbmtopo.models import MODELS, ModelBundle, build_model, graph_state, haah_code, toric_code
from rbmtopo.rbm import DenseState
from rbmtopo.verify import (
    check_bundle, check_elimination_trace, compare_amplitudes, mutation_scan, perturb_weight, resource_report,
    spot_configs,
)


def test_graph_state_passes():
    r = check_bundle(graph_state(3, [(0, 1), (1, 2)]))
    assert r.passed and r.mode == "dense"
    assert r.fidelity == pytest.approx(1.0)


def test_corrupted_weight_fails():
    b = toric_code(2, 2)
    bad = ModelBundle(b.name, perturb_weight(b.rbm, 0, 0, 0.01), b.oracle_dense, b.oracle_amplitude, b.metadata)
    r = check_bundle(bad)
    assert not r.passed
    assert r.fidelity < 1 - 1e-6


def test_global_phase_stability():
    b = graph_state(3, [(0, 1), (1, 2), (0, 2)])
    ref = b.oracle_dense()
    u = cmath.exp(0.9j)
    rotated = ModelBundle(b.name, b.rbm, lambda: DenseState(3, u * ref.amplitudes), None, b.metadata)
    r1, r2 = check_bundle(b), check_bundle(rotated)
    assert r1.passed and r2.passed
    assert r1.fidelity == pytest.approx(r2.fidelity, abs=1e-15)
    assert r1.max_aligned_amp_error == pytest.approx(r2.max_aligned_amp_error, abs=1e-13)


def test_zero_oracle_raises():
    b = graph_state(2, [(0, 1)])
    with pytest.raises(ZeroDivisionError):
        check_bundle(ModelBundle("z", b.rbm, lambda: DenseState(2, np.zeros(4)), None, {}))


def test_compare_amplitudes_reference_zero():
    fid, err = compare_amplitudes([0, 1], [1, 1])
    assert err == float("inf")
    assert fid == pytest.approx(0.5)


def test_tolerance_is_honoured():
    b = toric_code(2, 2)
    bad = ModelBundle(b.name, perturb_weight(b.rbm, 0, 0, 1e-3), b.oracle_dense, None, b.metadata)
    assert not check_bundle(bad).passed
    assert check_bundle(bad, tol=1.0, tol_amp=10.0).passed


def test_spot_mode(monkeypatch):
    monkeypatch.setenv("RBMTOPO_DENSE_CAP", "10")
    r = check_bundle(haah_code(2), samples=500, seed=3)
    assert r.mode == "spot" and r.passed and r.seed == 3
    # 500 uniform + all-zeros + all-ones + support samples
    assert r.samples == 502 + 50


def test_spot_mode_detects_mutation():
    b = haah_code(3)
    bad = ModelBundle(b.name, perturb_weight(b.rbm, 2, 1, 1e-3), None, b.oracle_amplitude, b.metadata, b.sample_support)
    assert not check_bundle(bad, samples=300).passed


def test_spot_configs_deterministic():
    a, b = spot_configs(8, 20, 7), spot_configs(8, 20, 7)
    assert np.array_equal(a, b)
    assert a[0].sum() == 0 and a[1].sum() == 8


def test_no_oracle_beyond_cap(monkeypatch):
    monkeypatch.setenv("RBMTOPO_DENSE_CAP", "2")
    b = graph_state(3, [(0, 1)])
    with pytest.raises(ResourceError):
        check_bundle(ModelBundle("g", b.rbm, b.oracle_dense, None, {}))


def test_report_json_and_table():
    r = check_bundle(toric_code(2, 2))
    d = json.loads(r.to_json())
    assert d["passed"] is True and d["n"] == 8 and d["hidden_count"] == 5
    assert "PASS" in r.table()


def test_trace_single_h():
    steps = check_elimination_trace(circuit_to_dbm(CliffordCircuit(1, (H(0),), ("zero",))))
    assert steps and all(s["pass"] for s in steps)


def test_trace_variable_limit():
    circ = CliffordCircuit(4, tuple(H(q) for q in range(4) for _ in range(3)))
    with pytest.raises(ResourceError):
        check_elimination_trace(circuit_to_dbm(circ))


def test_random_ten_variable_trace(rng):
    from rbmtopo.clifford import CZ, S

    gates = [H(0), H(1), CZ(0, 1), S(2), H(2), CZ(1, 2), H(1), CZ(0, 2), H(0), S(1)]
    dbm = circuit_to_dbm(CliffordCircuit(3, tuple(gates)))
    assert len(dbm.live) <= 10
    assert all(s["pass"] for s in check_elimination_trace(dbm))


def test_resource_report_graph():
    b = graph_state(4, [(0, 1), (1, 2), (2, 3)])
    rep = resource_report(b)
    assert rep["hidden"] == rep["n_terms"] == 3
    assert rep["bound"] == 8 * (3 + 4) and rep["within_bound"]


def test_resource_report_toric_rank():
    rep = resource_report(toric_code(2, 2))
    assert rep["hidden"] == rep["n_terms"] == 5


@pytest.mark.parametrize("name", ["toric", "cluster", "dicke", "czx"])
def test_mutation_scan_detects_all(name):
    assert all(hit for *_, hit in mutation_scan(build_model(name)))
