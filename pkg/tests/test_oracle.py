import numpy as np
import pytest
from hypothesis import given

from conftest import ket, qubit_states
from qubitpoly.families import example1_state, example2_state, example3_state
from qubitpoly.oracle import (
    det_bound_example1,
    det_bound_example1_full,
    det_bound_example2,
    det_rho,
    oracle_separable,
    oracle_unentangled_count,
    reduced_density_matrix,
)
from qubitpoly.state import PureState, random_product_state


def partial_trace_by_loops(c, n, j):
    """Explicit sum over basis indices; independent of reshape/moveaxis."""
    rho = np.zeros((2, 2), dtype=complex)
    for a in range(2**n):
        for b in range(2**n):
            if (a & ~(1 << j)) == (b & ~(1 << j)):
                rho[(a >> j) & 1, (b >> j) & 1] += c[a] * np.conj(c[b])
    return rho


@given(qubit_states(1, 5))
def test_reduced_density_matrix_matches_loops(state):
    for j in range(state.num_sites):
        rho = reduced_density_matrix(state, j).entries
        assert np.allclose(rho, partial_trace_by_loops(state.amplitudes, state.num_sites, j), atol=1e-12)


def test_bell_is_maximally_mixed():
    bell = ket(1, 0, 0, 1)
    rho = reduced_density_matrix(bell, 0)
    assert np.allclose(rho.entries, np.eye(2))
    assert rho.trace == 2
    assert det_rho(bell, 0) == pytest.approx(1)
    assert not oracle_separable(bell)


def test_product_state_pure_sites():
    state, _ = random_product_state(4, 0)
    assert oracle_separable(state)
    assert oracle_unentangled_count(state) == 4


def test_site_range_checked():
    with pytest.raises(ValueError):
        reduced_density_matrix(ket(1, 0), 1)


def test_qutrit_purity_defect():
    ghz3 = np.zeros(9, dtype=complex)
    ghz3[[0, 4, 8]] = 1
    state = PureState(ghz3, 2, 3)
    # rho = identity on 3 levels: (tr)^2 - tr(rho^2) = 9 - 3
    assert det_rho(state, 0) == pytest.approx(6)
    prod = PureState(np.kron([1, 2, 3j], [1, 0, 1]), 2, 3)
    assert abs(det_rho(prod, 1)) < 1e-12


def test_example1_determinant_formula():
    # for C_6 = 0 the sharper bound is an identity minus nonnegative terms; check >= both
    for seed in range(100):
        c = example1_state(3, seed).amplitudes
        d, bound = det_bound_example1(c)
        assert d >= det_bound_example1_full(c) - 1e-12 * abs(d)
        assert det_bound_example1_full(c) >= bound - 1e-12


def test_example_families_reject_wrong_layout():
    with pytest.raises(ValueError):
        det_bound_example1(np.ones(8))
    with pytest.raises(ValueError):
        det_bound_example2(np.ones(8))
    with pytest.raises(ValueError):
        det_bound_example1(np.ones(4))


def test_example2_bound():
    for seed in range(100):
        d, bound = det_bound_example2(example2_state(3, seed).amplitudes)
        assert d >= bound - 1e-12 * max(1, d)


def test_example3_determinants_closed_form():
    for n in (3, 5):
        for theta in (0.3, np.pi):
            s = example3_state(n, theta)
            expected = 2 ** (2 * n - 3) * (1 - np.cos(theta))
            assert det_rho(s, 0) == pytest.approx(expected, rel=1e-12)
            assert det_rho(s, 1) == pytest.approx(expected, rel=1e-12)
            for j in range(2, n):
                assert abs(det_rho(s, j)) <= 1e-12 * 4**n
