"""Reduced single-site density matrices: the independent check on every verdict.

All quantities are computed from the unnormalized amplitudes. Thresholds are
applied to ``det(rho_j) / |phi|**4`` so verdicts do not depend on the scale
of the input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .separability import DEFAULT_TOL
from .state import PureState


@dataclass(frozen=True)
class ReducedDensityMatrix:
    site: int
    entries: np.ndarray
    source_norm: float

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.entries))


def reduced_density_matrix(state: PureState, j: int) -> ReducedDensityMatrix:
    """Partial trace of ``|phi><phi|`` over every site except ``j``."""
    n, h = state.num_sites, state.local_dim
    if not 0 <= j < n:
        raise ValueError(f"site {j} out of range for {n} sites")
    # C-order reshape puts site N-1 on axis 0
    t = state.amplitudes.reshape((h,) * n)
    t = np.moveaxis(t, n - 1 - j, 0).reshape(h, -1)
    rho = t @ t.conj().T
    return ReducedDensityMatrix(j, rho, state.norm)


def det_rho(state: PureState, j: int) -> float:
    """``det(rho_j)`` for qubits; for ``h > 2`` the purity defect ``(tr rho)**2 - tr(rho**2)``.

    Both vanish exactly when ``rho_j`` has rank one. The unnormalized value is
    returned.
    """
    rho = reduced_density_matrix(state, j).entries
    if state.local_dim == 2:
        det = rho[0, 0] * rho[1, 1] - rho[0, 1] * rho[1, 0]
        return float(det.real)
    tr = np.trace(rho).real
    return float(tr**2 - np.vdot(rho, rho).real)


def site_purity_defects(state: PureState) -> np.ndarray:
    """``det_rho(state, j) / |phi|**4`` for every site, in site order."""
    norm4 = state.norm**4
    return np.array([det_rho(state, j) for j in range(state.num_sites)]) / norm4


def oracle_unentangled_count(state: PureState, tol: float = DEFAULT_TOL) -> int:
    return int(np.sum(site_purity_defects(state) <= tol))


def oracle_separable(state: PureState, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.all(site_purity_defects(state) <= tol))


def det_bound_example1(c) -> tuple[float, float]:
    """``(det(rho_0), |C_0 C_7|**2)`` for a 3-qubit state with ``C_6 = 0``.

    The first value always dominates the second on that family.
    """
    c = np.asarray(c, dtype=np.complex128)
    if c.size != 8:
        raise ValueError("expected 8 amplitudes")
    if c[6] != 0:
        raise ValueError("the family requires C_6 = 0")
    d = det_rho(PureState(c, 3), 0)
    return d, float(abs(c[0] * c[7]) ** 2)


def det_bound_example1_full(c) -> float:
    """The sharper intermediate lower bound on ``det(rho_0)`` for the same family."""
    a = np.abs(np.asarray(c, dtype=np.complex128))
    return float(
        a[7] ** 2 * (a[0] ** 2 + a[2] ** 2 + a[4] ** 2)
        + (a[0] * a[3] - a[1] * a[2]) ** 2
        + (a[0] * a[5] - a[1] * a[4]) ** 2
        + (a[2] * a[5] - a[3] * a[4]) ** 2
    )


def det_bound_example2(c) -> tuple[float, float]:
    """``(det(rho_2), lower bound)`` for a 3-qubit state with ``C_2 = C_7 = 0``."""
    c = np.asarray(c, dtype=np.complex128)
    if c.size != 8:
        raise ValueError("expected 8 amplitudes")
    if c[2] != 0 or c[7] != 0:
        raise ValueError("the family requires C_2 = C_7 = 0")
    a = np.abs(c)
    bound = (
        a[6] ** 2 * (a[0] ** 2 + a[1] ** 2 + a[3] ** 2)
        + a[3] ** 2 * (a[4] ** 2 + a[5] ** 2)
        + (a[0] * a[5] - a[1] * a[4]) ** 2
    )
    return det_rho(PureState(c, 3), 2), float(bound)
