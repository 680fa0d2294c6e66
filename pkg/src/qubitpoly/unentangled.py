"""Which qubits factor out of the rest, one site at a time."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .charpoly import TRIM_TOL, CharPolynomial, deflate_binomial, evaluate_scaled, from_state
from .separability import DEFAULT_TOL
from .state import PureState


@dataclass(frozen=True)
class QubitStatus:
    site: int
    # "IIa+IIb" when k_j = 1, "IIc" when k_j = 0
    branch: str
    unentangled: bool
    # None on the IIc branch
    condition_IIa: bool | None
    remainder_norm: float
    offending_norm: float
    # IIa as pointwise evaluation at the 2**j candidates, kept as a cross-check
    evaluation_residual: float | None = None


@dataclass(frozen=True)
class UnentangledReport:
    statuses: tuple
    count: int
    upper_bound: int
    oracle_count: int | None = None

    @property
    def unentangled_sites(self) -> list[int]:
        return [s.site for s in self.statuses if s.unentangled]


def _bit_set_mask(length: int, j: int) -> np.ndarray:
    return ((np.arange(length) >> j) & 1).astype(bool)


def check_site(state: PureState, j: int, tol: float = DEFAULT_TOL, trim_tol: float = TRIM_TOL) -> QubitStatus:
    """Does qubit ``j`` factor out of ``state``?

    For ``k_j = 1``: divide ``P`` by ``x**(2**j) - c`` with ``c = -C_{k-2^j}/C_k``;
    the residual must vanish (every ``2**j``-th root of ``c`` is a root) and the
    quotient may only contain powers without bit j. For ``k_j = 0``: ``P`` itself
    may only contain powers without bit j. All magnitudes are judged against
    ``tol * max|C|``.
    """
    if state.local_dim != 2:
        raise ValueError("per-site polynomial conditions are defined for qubits only")
    if not 0 <= j < state.num_sites:
        raise ValueError(f"site {j} out of range for {state.num_sites} qubits")
    poly = from_state(state, trim_tol)
    return _check(poly, j, tol)


def _check(poly: CharPolynomial, j: int, tol: float) -> QubitStatus:
    k = poly.degree
    scale = poly.scale
    e = 1 << j
    if not (k >> j) & 1:
        mask = _bit_set_mask(poly.coeffs.size, j)
        offending = float(np.abs(poly.coeffs[mask]).max(initial=0.0)) / scale
        return QubitStatus(j, "IIc", offending <= tol, None, 0.0, offending)
    c = -poly.coeffs[k - e] / poly.coeffs[k]
    quotient, residual = deflate_binomial(poly, e, c)
    remainder = float(np.abs(residual).max()) / scale
    mask = _bit_set_mask(quotient.size, j)
    offending = float(np.abs(quotient[mask]).max(initial=0.0)) / scale
    root = complex(c) ** (1.0 / e) if c != 0 else 0j
    cands = root * np.exp(2j * np.pi * np.arange(e) / e)
    # same scale as the division residual: |P(x)| / (max|C| max(1,|x|)**k)
    evaluation = float(np.abs(evaluate_scaled(poly, cands)).max()) / scale
    iia = remainder <= tol
    return QubitStatus(j, "IIa+IIb", iia and offending <= tol, iia, remainder, offending, evaluation)


def upper_bound(state: PureState, tol: float = DEFAULT_TOL, trim_tol: float = TRIM_TOL) -> int:
    """Sites with ``k_j = 0`` plus sites with ``k_j = 1`` where IIa holds."""
    poly = from_state(state, trim_tol)
    return _upper_bound([_check(poly, j, tol) for j in range(state.num_sites)])


def _upper_bound(statuses) -> int:
    return sum(1 for s in statuses if s.branch == "IIc" or s.condition_IIa)


def count_unentangled(
    state: PureState,
    tol: float = DEFAULT_TOL,
    trim_tol: float = TRIM_TOL,
    with_oracle: bool = False,
) -> UnentangledReport:
    poly = from_state(state, trim_tol)
    statuses = tuple(_check(poly, j, tol) for j in range(state.num_sites))
    oracle_count = None
    if with_oracle:
        from .oracle import oracle_unentangled_count

        oracle_count = oracle_unentangled_count(state, tol)
    return UnentangledReport(
        statuses=statuses,
        count=sum(s.unentangled for s in statuses),
        upper_bound=_upper_bound(statuses),
        oracle_count=oracle_count,
    )
