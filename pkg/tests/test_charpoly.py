import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ket, nonzero_scalars, qubit_states
from qubitpoly.charpoly import (
    CharPolynomial,
    binary_digits,
    compose_power,
    deflate_binomial,
    divide_by_binomial,
    evaluate,
    evaluate_scaled,
    from_state,
    lowest_power,
    multiply,
)
from qubitpoly.families import example3_state
from qubitpoly.state import PureState, random_state, tensor_product


def naive_convolution(a, b):
    """Double loop; independent of numpy.convolve."""
    out = [0j] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return np.array(out)


def test_from_state_examples():
    bell = from_state(ket(1, 0, 0, 1))
    assert bell.coeffs.tolist() == [1, 0, 0, 1] and bell.degree == 3
    plus = from_state(ket(1, 1, 1, 1))
    assert plus.degree == 3
    theta = 0.7
    p = from_state(example3_state(3, theta))
    e = np.exp(1j * theta)
    assert np.allclose(p.coeffs, [e, 1, 1, 1, e, 1, 1, 1], rtol=0, atol=1e-15)
    assert p.degree == 7


def test_trimming_sets_degree_and_digits():
    p = from_state(ket(1, 2, 1e-14, 0))
    assert p.degree == 1
    assert p.degree_digits == (1,)
    assert binary_digits(6, 4) == (0, 1, 1, 0)
    q = CharPolynomial([1, 0, 1e-14], trim_tol=0.0)
    assert q.degree == 2


def test_leading_coefficient_significant():
    p = CharPolynomial([1, 1e-3, 1e-13])
    assert abs(p.coeffs[p.degree]) > p.trim_tol * np.abs(p.coeffs).max()


def test_evaluate_examples():
    assert evaluate(CharPolynomial([1, 0, 0, 1]), 0) == 1
    assert abs(evaluate(CharPolynomial([1, 1, 1, 1]), 1j)) < 1e-15
    theta = 1.1
    got = evaluate(from_state(example3_state(3, theta)), -1)
    assert got == pytest.approx(2 * (np.exp(1j * theta) - 1), rel=1e-13)


def test_evaluate_vectorized():
    p = CharPolynomial([1, 2, 3])
    xs = np.array([0, 1, -1, 2j])
    assert np.allclose(evaluate(p, xs), 1 + 2 * xs + 3 * xs**2)


def test_evaluate_scaled_far_outside_unit_circle():
    # P(x) = 1 + x**2000 overflows at |x| = 3; scaled value stays finite
    c = np.zeros(2001)
    c[0] = c[-1] = 1
    p = CharPolynomial(c)
    x = 3 * np.exp(0.3j)
    got = evaluate_scaled(p, x)[0]
    expected = np.exp(2000j * 0.3)  # x**k / |x|**k, the 1 is negligible
    assert got == pytest.approx(expected, abs=1e-12)


@given(st.lists(st.builds(complex, st.floats(-3, 3), st.floats(-3, 3)), min_size=1, max_size=12), st.builds(complex, st.floats(-2, 2), st.floats(-2, 2)))
def test_evaluate_scaled_consistent_with_plain(coeffs, x):
    p = CharPolynomial(coeffs, 0.0)
    if p.is_zero:
        return
    plain = evaluate(p, x) / max(1.0, abs(x)) ** p.degree
    assert abs(evaluate_scaled(p, x)[0] - plain) <= 1e-12 * (1 + np.abs(p.coeffs).sum())


@pytest.mark.parametrize("coeffs, expected", [([0, 0, 1, 1], 2), ([1, 0, 0, 1], 0), ([0, 0, 0, 1], 3)])
def test_lowest_power(coeffs, expected):
    assert lowest_power(CharPolynomial(coeffs)) == expected


def test_divide_by_binomial_examples():
    q, r = divide_by_binomial(CharPolynomial([1, 1, 1, 1]), 2, -1)
    assert np.allclose(q.coeffs, [1, 1]) and np.allclose(r, 0)
    q, r = divide_by_binomial(CharPolynomial([1, 0, 0, 0, 0, 0, 1]), 2, 0)
    assert np.allclose(q.coeffs, [0, 0, 0, 0, 1]) and np.allclose(r, [1, 0])
    q, r = divide_by_binomial(CharPolynomial([1, 0, 0, 1]), 1, 0)
    assert np.allclose(q.coeffs, [0, 0, 1]) and np.allclose(r, [1])


def test_divide_matches_numpy_polydiv(rng):
    for _ in range(20):
        n = int(rng.integers(1, 30))
        e = int(rng.integers(1, 6))
        coeffs = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        c = complex(rng.standard_normal(), rng.standard_normal()) * 0.8
        q, r = divide_by_binomial(CharPolynomial(coeffs, 0.0), e, c)
        divisor = np.zeros(e + 1, dtype=complex)
        divisor[0], divisor[-1] = 1, -c  # numpy order: highest power first
        nq, nr = np.polydiv(coeffs[::-1], divisor)
        nq, nr = nq[::-1], nr[::-1]
        m = max(nq.size, q.coeffs.size)
        assert np.allclose(np.pad(q.coeffs, (0, m - q.coeffs.size)), np.pad(nq, (0, m - nq.size)), atol=1e-10)
        assert np.allclose(r, np.pad(nr, (0, e - nr.size))[:e], atol=1e-10)


@given(qubit_states(1, 7), st.integers(0, 5), st.builds(complex, st.floats(-1, 1), st.floats(-1, 1)))
def test_division_reconstructs_input(state, j, c):
    e = 2**j
    p = from_state(state, 0.0)
    q, r = divide_by_binomial(p, e, c)
    divisor = np.zeros(e + 1, dtype=complex)
    divisor[0], divisor[e] = -c, 1
    back = naive_convolution(q.coeffs, divisor)
    n = max(back.size, p.coeffs.size, e)
    total = np.zeros(n, dtype=complex)
    total[: back.size] += back
    total[: r.size] += r
    expected = np.zeros(n, dtype=complex)
    expected[: p.coeffs.size] = p.coeffs
    # rounding is relative to the terms summed, which include c * q when |c| > 1
    size = max(np.abs(expected).max(), abs(c) * np.abs(q.coeffs).max())
    assert np.abs(total - expected).max() <= 1e-12 * size


@pytest.mark.parametrize("c", [0.5, 2.0, 3.0 * np.exp(1j), 0.0])
def test_deflate_exact_on_divisible_long_polynomials(c, rng):
    # quotient with only even powers of y, class length 256: the unstable direction
    # would amplify rounding by |c|**256
    e = 1
    q = np.zeros(255, dtype=complex)
    q[::2] = rng.standard_normal(128) + 1j * rng.standard_normal(128)
    p = naive_convolution(q, np.array([-c, 1]))
    quot, resid = deflate_binomial(CharPolynomial(p, 0.0), e, c)
    assert np.abs(resid).max() <= 1e-12 * np.abs(p).max()
    assert np.abs(quot[: q.size] - q).max() <= 1e-12 * np.abs(q).max()


def test_deflate_detects_non_divisible():
    quot, resid = deflate_binomial(CharPolynomial([1, 0, 0, 1]), 1, 2.0)
    assert np.abs(resid).max() > 0.01


def test_compose_power_examples():
    assert compose_power(CharPolynomial([1, 1]), 2).coeffs.tolist() == [1, 0, 1]
    assert compose_power(CharPolynomial([0, 1]), 4).coeffs.tolist() == [0, 0, 0, 0, 1]
    assert compose_power(CharPolynomial([1, 1, 1]), 2).coeffs.tolist() == [1, 0, 1, 0, 1]
    with pytest.raises(ValueError):
        compose_power(CharPolynomial([1, 1]), 0)
    with pytest.raises(ValueError):
        compose_power(CharPolynomial([1, 1]), 2**30)


def test_multiply_examples():
    assert multiply(CharPolynomial([1, 1]), CharPolynomial([1, 0, 1])).coeffs.tolist() == [1, 1, 1, 1]
    assert multiply(CharPolynomial([0, 1]), CharPolynomial([0, 0, 1])).coeffs.tolist() == [0, 0, 0, 1]
    p = CharPolynomial([2, 3j, 1])
    assert np.array_equal(multiply(CharPolynomial([1]), p).coeffs, p.coeffs)


def test_multiply_matches_naive_convolution(rng):
    a = rng.standard_normal(17) + 1j * rng.standard_normal(17)
    b = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    got = multiply(CharPolynomial(a, 0.0), CharPolynomial(b, 0.0)).coeffs
    assert np.allclose(got, naive_convolution(a, b), rtol=0, atol=1e-13)


@given(st.integers(0, 64), st.integers(0, 64), st.integers(0, 2**31), st.builds(complex, st.floats(-1.2, 1.2), st.floats(-1.2, 1.2)))
def test_multiplication_is_evaluation_homomorphism(da, db, seed, x):
    rng = np.random.default_rng(seed)
    a = CharPolynomial(rng.standard_normal(da + 1) + 1j * rng.standard_normal(da + 1), 0.0)
    b = CharPolynomial(rng.standard_normal(db + 1) + 1j * rng.standard_normal(db + 1), 0.0)
    lhs = evaluate(multiply(a, b), x)
    rhs = evaluate(a, x) * evaluate(b, x)
    # relative to the natural size of the terms being summed
    scale = evaluate(CharPolynomial(np.convolve(np.abs(a.coeffs), np.abs(b.coeffs)), 0.0), abs(x))
    assert abs(lhs - rhs) <= 1e-10 * abs(scale)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**31))
def test_split_law(L, M, seed):
    left, right = random_state(L, seed), random_state(M, seed + 1)
    whole = from_state(tensor_product(left, right), 0.0)
    parts = multiply(from_state(left, 0.0), compose_power(from_state(right, 0.0), 2**L))
    n = max(whole.coeffs.size, parts.coeffs.size)
    assert np.abs(whole.padded(n) - parts.padded(n)).max() <= 1e-12 * whole.scale


@given(qubit_states(1, 6), nonzero_scalars())
def test_scaling_commutes_with_from_state(state, c):
    p, q = from_state(state), from_state(state.scaled(c))
    assert q.degree == p.degree
    assert np.allclose(q.coeffs, c * p.coeffs, rtol=1e-13, atol=0)


def test_from_state_never_empty():
    p = from_state(PureState([0, 0, 0, 1e-300], 2))
    assert p.degree == 3
