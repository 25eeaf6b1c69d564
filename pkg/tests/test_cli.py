import json

import numpy as np
import pytest

from rbmtopo.cli import main
from rbmtopo.rbm import dense_state, loads


@pytest.fixture
def run(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)

    def _run(*args):
        code = main([str(a) for a in args])
        out = capsys.readouterr()
        return code, out.out, out.err

    return _run


def test_list_models(run):
    code, out, _ = run("list-models")
    assert code == 0
    assert len(out.strip().splitlines()) == 8


def test_build_and_verify_toric(run):
    code, _, err = run("build", "--model", "toric", "--lx", 2, "--ly", 2, "-o", "toric.json")
    assert code == 0 and "visible 8" in err
    net, meta = loads(open("toric.json").read())
    assert net.n_visible == 8 and meta["model"] == "toric"
    code, out, _ = run("verify", "toric.json")
    assert code == 0 and "PASS" in out


def test_corrupted_file_fails(run):
    run("build", "--model", "toric", "-o", "t.json")
    d = json.load(open("t.json"))
    d["hidden"][0]["weights"][0][1] += 0.01
    json.dump(d, open("bad.json", "w"))
    code, out, _ = run("verify", "bad.json")
    assert code == 1 and "FAIL" in out


def test_tol_flag(run):
    run("build", "--model", "toric", "-o", "t.json")
    d = json.load(open("t.json"))
    d["hidden"][0]["weights"][0][1] += 1e-3
    json.dump(d, open("bad.json", "w"))
    assert run("verify", "bad.json")[0] == 1
    assert run("verify", "bad.json", "--tol", 1, "--tol-amp", 10)[0] == 0


def test_w_state(run):
    run("build", "--model", "dicke", "--n", 3, "--k", 1, "-o", "w.json")
    net, _ = loads(open("w.json").read())
    assert sorted(dense_state(net).support(1e-12).tolist()) == [1, 2, 4]


def test_hypergraph_file_and_amp(run):
    open("two_ccz.hg", "w").write("n 5\n0 1 2\n2 3 4\n")
    assert run("build", "--hypergraph", "two_ccz.hg", "-o", "h.json")[0] == 0
    assert run("verify", "h.json")[0] == 0
    a0 = complex(run("amp", "h.json", "--basis", "00000")[1].strip())
    a1 = complex(run("amp", "h.json", "--basis", "11100")[1].strip())
    assert a1 / a0 == pytest.approx(-1)


def test_amp_parity_zero(run):
    open("par.stab", "w").write("+XX\n+ZZ\n")
    run("build", "--stabilizers", "par.stab", "-o", "p.json")
    assert complex(run("amp", "p.json", "--basis", "01")[1].strip()) == 0


def test_amp_aklt(run):
    run("build", "--model", "aklt", "--sites", 3, "-o", "a.json")
    a = complex(run("amp", "a.json", "--basis", "100010001")[1].strip())
    b = complex(run("amp", "a.json", "--basis", "001010100")[1].strip())
    assert a / b == pytest.approx(2j / -2j)


def test_amp_wrong_length(run):
    run("build", "--model", "toric", "-o", "t.json")
    assert run("amp", "t.json", "--basis", "0101")[0] == 2


def test_circuit_source(run):
    open("c.circ", "w").write("wires 3\ninputs plus zero zero\nCNOT 0 1\nCNOT 1 2\nS 2\n")
    assert run("build", "--circuit", "c.circ", "-o", "c.json")[0] == 0
    assert run("verify", "c.json")[0] == 0


def test_stats(run):
    run("build", "--model", "cluster", "-o", "c.json")
    code, out, _ = run("stats", "c.json", "--json")
    d = json.loads(out)
    assert code == 0 and d["hidden"] == d["n_terms"] == 4 and d["within_bound"]


def test_export_round_trip(run):
    run("build", "--model", "double_semion", "-o", "d.json")
    assert run("export", "d.json", "-o", "d2.json")[0] == 0
    assert open("d.json").read() == open("d2.json").read()
    a, _ = loads(open("d.json").read())
    b, _ = loads(open("d2.json").read())
    assert np.max(np.abs(dense_state(a).amplitudes - dense_state(b).amplitudes)) <= 1e-15


def test_dense_export_as_oracle(run):
    run("build", "--model", "czx", "-o", "z.json")
    run("export", "z.json", "--format", "dense", "-o", "z.dense.json")
    assert run("verify", "z.json", "--oracle", "z.dense.json")[0] == 0
    run("build", "--model", "toric", "-o", "t.json")
    assert run("verify", "t.json", "--oracle", "z.dense.json")[0] == 2


def test_deterministic_output(run):
    for tag in "ab":
        run("build", "--model", "ccz", "-o", f"{tag}.json")
    assert open("a.json").read() == open("b.json").read()


def test_fit(run):
    lines = ["000 +1", "110 -1", "011 -1", "101 -1", "111 +1"]
    open("sup.txt", "w").write("\n".join(lines) + "\n")
    code, out, _ = run("fit", "--support", "sup.txt")
    assert code == 0 and out.startswith("n=3")


def test_fit_infeasible_exit_code(run):
    rows = [format(i, "04b") + (" -1" if i == 15 else " +1") for i in range(16)]
    open("sup.txt", "w").write("\n".join(rows) + "\n")
    assert run("fit", "--support", "sup.txt")[0] == 3


@pytest.mark.parametrize(
    "args",
    [
        ("build",),
        ("build", "--model", "nope"),
        ("build", "--model", "toric", "--lx", 1),
        ("build", "--model", "dicke", "--lx", 2),
        ("verify", "missing.json"),
        ("frobnicate",),
    ],
)
def test_usage_errors(run, args):
    assert run(*args)[0] == 2


def test_parse_error_has_line(run):
    open("bad.hg", "w").write("n 3\n0 1\n0 7\n")
    code, _, err = run("build", "--hypergraph", "bad.hg")
    assert code == 2 and "line 3" in err


def test_synthesis_error_exit(run):
    open("bad.stab", "w").write("+XX\n+ZI\n")
    assert run("build", "--stabilizers", "bad.stab")[0] == 3


def test_no_meta_needs_oracle(run):
    run("build", "--model", "toric", "-o", "t.json")
    d = json.load(open("t.json"))
    del d["meta"]
    json.dump(d, open("bare.json", "w"))
    assert run("verify", "bare.json")[0] == 2
