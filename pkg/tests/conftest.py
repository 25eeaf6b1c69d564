import itertools

import numpy as np
import pytest


def all_bits(n):
    return np.array(list(itertools.product((0, 1), repeat=n)), dtype=np.int64)


def sign_oracle(n, edges):
    """Brute-force product formula over every basis state."""
    out = []
    for v in itertools.product((0, 1), repeat=n):
        s = 1
        for e in edges:
            if all(v[i] for i in e):
                s = -s
        out.append(s)
    return np.array(out, dtype=complex)


def aligned_close(got, want, atol=1e-9):
    got = np.asarray(got, dtype=complex)
    want = np.asarray(want, dtype=complex)
    ref = int(np.argmax(np.abs(want)))
    scaled = got * (want[ref] / got[ref])
    return np.max(np.abs(scaled - want)) <= atol * abs(want[ref])


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
