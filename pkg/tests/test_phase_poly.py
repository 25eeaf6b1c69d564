import cmath
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbmtopo.errors import FitError, ParseError
from rbmtopo.phase_poly import (
    AffineParity, ClosedFormState, PhasePolynomial, closed_form_dense, compile_to_rbm, fit_cubic_phase,
    format_closed_form, monomials, parse_closed_form,
)
from rbmtopo.rbm import dense_state

from conftest import aligned_close

ALPHA = cmath.exp(1j * math.pi / 4)


def direct(state, v):
    """Evaluate the closed form term by term."""
    ph = state.phase
    e = ph.constant
    e += sum(c * v[i] for i, c in ph.linear.items())
    e += sum(2 * c * v[i] * v[j] for (i, j), c in ph.quadratic.items())
    e += sum(4 * c * v[i] * v[j] * v[k] for (i, j, k), c in ph.cubic.items())
    for p in state.parities:
        if (sum(v[i] for i in p.support) + p.constant) % 2:
            return 0j
    return ALPHA ** (e % 8)


@st.composite
def closed_forms(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    idx = st.integers(0, n - 1)
    lin = draw(st.dictionaries(idx, st.integers(0, 7), max_size=n))
    pairs = list(itertools.combinations(range(n), 2))
    triples = list(itertools.combinations(range(n), 3))
    quad = {p: draw(st.integers(0, 3)) for p in draw(st.lists(st.sampled_from(pairs), unique=True, max_size=4))} if pairs else {}
    cub = {t: 1 for t in draw(st.lists(st.sampled_from(triples), unique=True, max_size=3))} if triples else {}
    parities = tuple(
        AffineParity(frozenset(draw(st.lists(idx, min_size=1, max_size=n, unique=True))), draw(st.integers(0, 1)))
        for _ in range(draw(st.integers(0, 2)))
    )
    return ClosedFormState(n, PhasePolynomial(lin, quad, cub, draw(st.integers(0, 7))), parities)


@given(closed_forms())
@settings(max_examples=100, deadline=None)
def test_compile_matches_closed_form(state):
    want = np.array([direct(state, v) for v in itertools.product((0, 1), repeat=state.n)])
    got = dense_state(compile_to_rbm(state)).amplitudes
    if not want.any():
        assert not np.abs(got).max() > 1e-12
        return
    assert np.allclose(closed_form_dense(state).amplitudes, want, atol=1e-12)
    # the compiled network keeps the overall scale, not just the ray
    assert np.allclose(got, want, atol=1e-9)


@given(closed_forms())
@settings(max_examples=60, deadline=None)
def test_text_round_trip(state):
    back = parse_closed_form(format_closed_form(state))
    assert np.allclose(closed_form_dense(back).amplitudes, closed_form_dense(state).amplitudes)


def test_coefficient_reduction():
    ph = PhasePolynomial({0: 9}, {(1, 0): 5}, {(2, 0, 1): 3}, 10)
    assert ph.linear == {0: 1}
    assert ph.quadratic == {(0, 1): 1}
    assert ph.cubic == {(0, 1, 2): 1}
    assert ph.constant == 2


def test_inconsistent_parities_give_zero_state():
    state = ClosedFormState(2, PhasePolynomial(), (AffineParity(frozenset({0})), AffineParity(frozenset({0}), 1)))
    assert not np.abs(dense_state(compile_to_rbm(state)).amplitudes).max() > 0


def test_pauli_check():
    assert PhasePolynomial({0: 4}, {(0, 1): 2}).is_pauli()
    assert PhasePolynomial({0: 2}).is_pauli()
    assert not PhasePolynomial({0: 1}).is_pauli()
    assert not PhasePolynomial(cubic={(0, 1, 2): 1}).is_pauli()


def test_monomial_order():
    m = monomials(3)
    assert m[0] == ()
    assert [len(x) for x in m] == [0, 1, 1, 1, 2, 2, 2, 3]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_fit_recovers_random_cubic(n, rng):
    truth = {t: 1 for t in itertools.combinations(range(n), 3) if rng.random() < 0.5}
    quad = {p: 2 for p in itertools.combinations(range(n), 2) if rng.random() < 0.5}
    ph = PhasePolynomial({}, quad, truth, 0)
    configs = list(itertools.product((0, 1), repeat=n))
    signs = [1 if ph.exponent(np.array([v]))[0] % 8 == 0 else -1 for v in configs]
    fitted = fit_cubic_phase(configs, signs, n)
    assert fitted.exponent(np.array(configs)).tolist() == ph.exponent(np.array(configs)).tolist()


def test_fit_on_partial_support():
    support = [(0, 0, 0, 0), (1, 1, 0, 0), (0, 1, 1, 0), (1, 0, 1, 0), (1, 1, 1, 1)]
    signs = [1, -1, 1, -1, -1]
    ph = fit_cubic_phase(support, signs, 4)
    got = [1 if e % 8 == 0 else -1 for e in ph.exponent(np.array(support))]
    assert got == signs


def test_fit_infeasible_for_quartic():
    configs = list(itertools.product((0, 1), repeat=4))
    signs = [-1 if all(v) else 1 for v in configs]
    with pytest.raises(FitError, match="rank"):
        fit_cubic_phase(configs, signs, 4)


@pytest.mark.parametrize("text", ["n=2\nquad: 0 1\n", "n=2\nbogus: 1\n"])
def test_parse_errors_carry_line(text):
    with pytest.raises(ParseError, match="line 2"):
        parse_closed_form(text)


def test_pure_stabilizer_example():
    # |00> + |11> with an i on the first qubit: parity plus linear phase
    state = ClosedFormState(2, PhasePolynomial({0: 2}), (AffineParity(frozenset({0, 1})),))
    assert aligned_close(dense_state(compile_to_rbm(state)).amplitudes, [1, 0, 0, 1j])
