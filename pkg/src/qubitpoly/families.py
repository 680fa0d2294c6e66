"""Named state families used in tests, scripts and ``qubitpoly generate``."""

from __future__ import annotations

import numpy as np

from .state import PureState, random_product_state, random_state


def _gaussian(rng, size):
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def unit_phase(theta: float) -> complex:
    """``exp(i theta)``, exact at multiples of pi/2 so generated files carry clean +-1, +-i."""
    quarter = theta / (np.pi / 2)
    n = round(quarter)
    if abs(quarter - n) < 1e-12:
        return (1, 1j, -1, -1j)[n % 4]
    return complex(np.exp(1j * theta))


def example3_state(num_sites: int, theta: float) -> PureState:
    """All amplitudes 1 except ``C_{4i} = exp(i theta)``; separable only for theta = 2 pi n."""
    if num_sites < 2:
        raise ValueError("example3 needs at least 2 qubits")
    c = np.ones(2**num_sites, dtype=np.complex128)
    c[::4] = unit_phase(theta)
    return PureState(c, num_sites)


def example1_state(num_sites: int, seed=None) -> PureState:
    """Random amplitudes up to the top index ``k = 2**N - 1`` with ``C_{k-1} = 0``.

    ``k`` is odd and ``C_0 C_k != 0`` (almost surely), so the state is entangled.
    For N = 3 this is the family with ``C_6 = 0``.
    """
    rng = np.random.default_rng(seed)
    c = _gaussian(rng, 2**num_sites)
    c[-2] = 0
    return PureState(c, num_sites)


def example2_state(num_sites: int, seed=None, zero=()) -> PureState:
    """Degree ``2**N - 2`` with ``C_{2**(N-1) - 2} = 0``; extra indices in ``zero`` are cleared.

    For N = 3 this is the family with ``C_2 = C_7 = 0``.
    """
    if num_sites < 2:
        raise ValueError("example2 needs at least 2 qubits")
    rng = np.random.default_rng(seed)
    dim = 2**num_sites
    c = _gaussian(rng, dim)
    c[dim - 1] = 0
    c[2 ** (num_sites - 1) - 2] = 0
    for i in zero:
        c[i] = 0
    return PureState(c, num_sites)


def ghz_state(num_sites: int) -> PureState:
    c = np.zeros(2**num_sites, dtype=np.complex128)
    c[0] = c[-1] = 1
    return PureState(c, num_sites)


def generate(kind: str, num_sites: int, seed=None, theta: float = 0.0) -> PureState:
    if kind == "example1":
        return example1_state(num_sites, seed)
    if kind == "example2":
        return example2_state(num_sites, seed)
    if kind == "example3":
        return example3_state(num_sites, theta)
    if kind == "ghz":
        return ghz_state(num_sites)
    if kind == "product":
        return random_product_state(num_sites, seed)[0]
    if kind == "random":
        return random_state(num_sites, seed)
    raise ValueError(f"unknown state kind {kind!r}; choose from {', '.join(KINDS)}")


KINDS = ("example1", "example2", "example3", "ghz", "product", "random")
