"""h-level sites: product polynomials, the split law, and oracle-based separability.

Closed-form root expressions in terms of the coefficients would need the
cubic/quartic formulas for ``2 < h < 6`` and do not exist for ``h >= 6``, so
only the polynomial construction is provided here and the verdict comes from
reduced density matrices.
"""

from __future__ import annotations

from typing import Sequence

from .charpoly import CharPolynomial, compose_power, multiply
from .oracle import oracle_separable
from .separability import DEFAULT_TOL, split_check
from .state import PureState, SiteFactor, _check_sites

MAX_LOCAL_DIM = 5


def _check_dim(h: int) -> None:
    if not 2 <= h <= MAX_LOCAL_DIM:
        raise ValueError(
            f"local dimension {h} is not supported: the coefficient-level test "
            f"only exists for 2 <= h <= {MAX_LOCAL_DIM}"
        )


def qudit_product_polynomial(factors: Sequence[SiteFactor]) -> CharPolynomial:
    """``prod_j (a_j + b_j x**(h**j) + ... + q_j x**((h-1) h**j))``."""
    ordered = _check_sites(factors)
    h = ordered[0].local_dim
    _check_dim(h)
    out = CharPolynomial([1.0], 0.0)
    for f in ordered:
        out = multiply(out, compose_power(CharPolynomial(f.amplitudes, 0.0), h**f.site))
    return out


def qudit_split_check(left: PureState, right: PureState, rtol: float = 1e-12) -> bool:
    _check_dim(left.local_dim)
    return split_check(left, right, rtol)


def qudit_separable(state: PureState, tol: float = DEFAULT_TOL) -> bool:
    _check_dim(state.local_dim)
    return oracle_separable(state, tol)

