"""Full separability of pure qubit states from the characteristic polynomial.

A product state ``(x)_j (a_j|0> + b_j|1>)`` has polynomial
``prod_j (a_j + b_j x**(2**j))``. Everything needed to test for that form is
read off the coefficients: the degree digits ``k_j`` say which sites have
``b_j != 0`` and ``C_{k - 2**j} / C_k`` gives ``a_j / b_j``. No numerical root
finding is involved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .charpoly import (
    TRIM_TOL,
    CharPolynomial,
    compose_power,
    evaluate_scaled,
    from_state,
    lowest_power,
    multiply,
)
from .state import PureState, SiteFactor, build_product_state, tensor_product

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class CandidateRoots:
    """Per contributing site ``j`` (``k_j = 1``): base ``-C_{k-2^j}/C_k`` and its ``2**j`` roots."""

    sites: tuple
    bases: tuple
    values: tuple
    zero: tuple

    def __iter__(self):
        return iter(zip(self.sites, self.values))

    def all_values(self) -> np.ndarray:
        if not self.values:
            return np.zeros(0, dtype=np.complex128)
        return np.concatenate(self.values)

    @property
    def count(self) -> int:
        return sum(v.size for v in self.values)

    @property
    def zero_count(self) -> int:
        return sum(v.size for v, z in zip(self.values, self.zero) if z)


@dataclass(frozen=True)
class SeparabilityReport:
    separable: bool
    score: float
    normalized_score: float
    condition_Ib: bool
    factors: tuple | None
    reconstruction_distance: float
    method_agreement: bool
    degree: int
    tol: float

    @property
    def score_verdict(self) -> bool:
        return self.normalized_score <= self.tol and self.condition_Ib


def _poly(state_or_poly, trim_tol=TRIM_TOL) -> CharPolynomial:
    if isinstance(state_or_poly, CharPolynomial):
        return state_or_poly
    if state_or_poly.local_dim != 2:
        raise ValueError("the polynomial separability test is defined for qubits (local_dim=2)")
    return from_state(state_or_poly, trim_tol)


def _num_sites(state_or_poly) -> int:
    if isinstance(state_or_poly, PureState):
        return state_or_poly.num_sites
    return max(state_or_poly.degree.bit_length(), 1)


def _is_structural_zero(value: complex, poly: CharPolynomial) -> bool:
    return abs(value) <= poly.trim_tol * poly.scale


def candidate_roots(state, trim_tol: float = TRIM_TOL) -> CandidateRoots:
    """``x_jm = (-C_{k-2^j}/C_k)**(1/2^j) * exp(2 pi i m / 2^j)`` for every ``j`` with ``k_j = 1``.

    The principal root (argument in (-pi, pi]) is used; any other branch
    permutes the same set. A base whose numerator is below the trim
    threshold is treated as exactly zero.
    """
    poly = _poly(state, trim_tol)
    c = poly.coeffs
    k = poly.degree
    sites, bases, values, zero = [], [], [], []
    for j in range(_num_sites(state)):
        if not (k >> j) & 1:
            continue
        e = 1 << j
        num = c[k - e]
        is_zero = _is_structural_zero(num, poly)
        base = 0j if is_zero else complex(-num / c[k])
        principal = base ** (1.0 / e) if base != 0 else 0j
        vals = principal * np.exp(2j * np.pi * np.arange(e) / e)
        sites.append(j)
        bases.append(base)
        values.append(vals)
        zero.append(is_zero)
    return CandidateRoots(tuple(sites), tuple(bases), tuple(values), tuple(zero))


def _score_terms(poly: CharPolynomial, cands: CandidateRoots):
    """Raw ``|P(x)|`` and ``|P(x)| / (max|C| (k+1) max(1,|x|)**k)`` per candidate."""
    x = cands.all_values()
    if x.size == 0:
        return np.zeros(0), np.zeros(0)
    scaled = np.abs(evaluate_scaled(poly, x))
    k = poly.degree
    with np.errstate(divide="ignore", over="ignore"):
        raw = np.exp(np.log(scaled) + k * np.log(np.maximum(1.0, np.abs(x))))
    return raw, scaled / (poly.scale * (k + 1))


def separability_score(state, trim_tol: float = TRIM_TOL) -> tuple[float, float]:
    """``(raw, normalized)`` sum of ``|P(x_jm)|`` over all candidates.

    Candidates are summed by ascending j, then m. The normalized score divides
    each term by ``max|C| * (k+1) * max(1, |x|)**k``, so it is scale invariant
    and stays finite for candidates far outside the unit circle.
    """
    poly = _poly(state, trim_tol)
    raw, norm = _score_terms(poly, candidate_roots(poly))
    return float(np.sum(raw)), float(np.sum(norm))


def check_condition_Ib(state, trim_tol: float = TRIM_TOL) -> bool:
    """Number of zero candidates equals the lowest power present in P."""
    poly = _poly(state, trim_tol)
    return candidate_roots(poly).zero_count == lowest_power(poly)


def _raw_factor_pairs(poly: CharPolynomial, num_sites: int):
    c = poly.coeffs
    k = poly.degree
    pairs = []
    for j in range(num_sites):
        if (k >> j) & 1:
            pairs.append((complex(c[k - (1 << j)] / c[k]), 1.0 + 0j))
        else:
            pairs.append((1.0 + 0j, 0j))
    return pairs


def extract_factors(state: PureState, trim_tol: float = TRIM_TOL) -> list[SiteFactor]:
    """Single-site factors implied by the coefficient ratios, phase-canonicalized.

    Only meaningful when the state is separable; for entangled input these are
    the factors of the unique product candidate.
    """
    pairs = _raw_factor_pairs(_poly(state, trim_tol), state.num_sites)
    return [SiteFactor(j, ab).canonical() for j, ab in enumerate(pairs)]


def reconstruction_distance(state: PureState, trim_tol: float = TRIM_TOL) -> float:
    """``max_i |Q_i - C_i| / max|C|`` with ``Q = prod_j (a_j + b_j x**(2**j))``.

    ``Q`` is built from the coefficient ratios and scaled so that its degree-k
    coefficient equals ``C_k``; it is compared against the full, untrimmed
    amplitude vector.
    """
    poly = _poly(state, trim_tol)
    pairs = _raw_factor_pairs(poly, state.num_sites)
    q = build_product_state(
        [SiteFactor(j, ab) for j, ab in enumerate(pairs)], max_sites=state.max_sites
    ).amplitudes
    c = state.amplitudes
    k = poly.degree
    q = q * (c[k] / q[k])
    return float(np.abs(q - c).max() / np.abs(c).max())


def is_separable(state: PureState, tol: float = DEFAULT_TOL, trim_tol: float = TRIM_TOL) -> SeparabilityReport:
    """Verdict by coefficient reconstruction, cross-checked by the root-score test."""
    poly = _poly(state, trim_tol)
    k = poly.degree
    distance = reconstruction_distance(state, trim_tol)
    cands = candidate_roots(poly)
    raw, norm = _score_terms(poly, cands)
    score, nscore = float(np.sum(raw)), float(np.sum(norm))
    ib = cands.zero_count == lowest_power(poly)
    if k == 0:
        separable = True
        score_path = True
    else:
        separable = distance <= tol
        score_path = nscore <= tol and ib
    factors = None
    if separable:
        pairs = _raw_factor_pairs(poly, state.num_sites)
        factors = tuple(SiteFactor(j, ab).canonical() for j, ab in enumerate(pairs))
    return SeparabilityReport(
        separable=separable,
        score=score,
        normalized_score=nscore,
        condition_Ib=ib,
        factors=factors,
        reconstruction_distance=distance,
        method_agreement=separable == score_path,
        degree=k,
        tol=tol,
    )


def split_check(left: PureState, right: PureState, rtol: float = 1e-12) -> bool:
    """``P(left (x) right; x) == P(left; x) * P(right; x**(h**L))`` coefficientwise."""
    if left.local_dim != right.local_dim:
        raise ValueError("local dimensions differ")
    whole = from_state(tensor_product(left, right), 0.0)
    parts = multiply(
        from_state(left, 0.0),
        compose_power(from_state(right, 0.0), left.local_dim**left.num_sites),
    )
    return coefficients_match(whole, parts, rtol)


def coefficients_match(a: CharPolynomial, b: CharPolynomial, rtol: float) -> bool:
    n = max(a.coeffs.size, b.coeffs.size)
    ca, cb = a.padded(n), b.padded(n)
    scale = max(np.abs(ca).max(), np.abs(cb).max())
    return bool(np.abs(ca - cb).max() <= rtol * scale)
