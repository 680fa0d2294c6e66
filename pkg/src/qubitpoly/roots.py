"""Simultaneous-iteration root finding and the inverse map from roots to states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .charpoly import CharPolynomial, evaluate_scaled, from_state, lowest_power
from .state import PureState


class RootFindingError(RuntimeError):
    """Raised when a caller needs all roots and some did not converge."""


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-12
    max_iter: int = 200
    residual_bound: float = 1e-8
    # "newton_polygon" or "cauchy"
    init: str = "newton_polygon"
    # rotation of the initial circles, breaks symmetry with real-coefficient roots
    angle_offset: float = 0.4
    fallback: bool = True


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    residuals: np.ndarray
    converged: np.ndarray
    iterations: int
    method: str = "aberth"

    @property
    def all_converged(self) -> bool:
        return bool(np.all(self.converged))

    def __len__(self) -> int:
        return self.roots.size


def canonical_order(values) -> np.ndarray:
    """Indices sorting by (magnitude, argument) ascending."""
    v = np.asarray(values, dtype=np.complex128)
    return np.lexsort((np.angle(v), np.abs(v)))


def _newton_ratio(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """``P(z)/P'(z)`` evaluated without overflow for any ``|z|``."""
    k = coeffs.size - 1
    out = np.empty_like(z)
    inner = np.abs(z) <= 1.0
    if inner.any():
        zi = z[inner]
        p = np.full_like(zi, coeffs[-1])
        dp = np.zeros_like(zi)
        for c in coeffs[-2::-1]:
            dp = dp * zi + p
            p = p * zi + c
        with np.errstate(divide="ignore", invalid="ignore"):
            out[inner] = np.where(p == 0, 0.0, p / dp)
    if (~inner).any():
        zo = z[~inner]
        w = 1.0 / zo
        # R(w) = sum_i C_{k-i} w**i = w**k P(1/w);  P/P' = 1 / (k/z - w**2 R'/R)
        r = np.full_like(w, coeffs[0])
        dr = np.zeros_like(w)
        for c in coeffs[1:]:
            dr = dr * w + r
            r = r * w + c
        with np.errstate(divide="ignore", invalid="ignore"):
            out[~inner] = np.where(r == 0, 0.0, 1.0 / (k * w - w * w * dr / r))
    return out


def _cauchy_radius(coeffs: np.ndarray) -> float:
    return 1.0 + float(np.max(np.abs(coeffs[:-1] / coeffs[-1])))


def _initial_guesses(coeffs: np.ndarray, cfg: SolverConfig) -> np.ndarray:
    k = coeffs.size - 1
    if cfg.init == "cauchy":
        radius = _cauchy_radius(coeffs)
        angles = 2 * np.pi * np.arange(k) / k + cfg.angle_offset
        return radius * np.exp(1j * angles)
    if cfg.init != "newton_polygon":
        raise ValueError(f"unknown initialization {cfg.init!r}")
    # upper convex hull of (i, log|C_i|); each hull edge i->j carries j-i roots
    # of modulus about (|C_i|/|C_j|)**(1/(j-i))
    mags = np.abs(coeffs)
    idx = np.flatnonzero(mags > 0)
    logs = np.log(mags[idx])
    hull: list[int] = []
    for p in range(idx.size):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (idx[b] - idx[a]) * (logs[p] - logs[a]) - (logs[b] - logs[a]) * (idx[p] - idx[a])
            if cross >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    guesses = np.empty(k, dtype=np.complex128)
    pos = 0
    for a, b in zip(hull[:-1], hull[1:]):
        n = int(idx[b] - idx[a])
        radius = np.exp((logs[a] - logs[b]) / n)
        angles = 2 * np.pi * np.arange(n) / n + 2 * np.pi * pos / k + cfg.angle_offset
        guesses[pos : pos + n] = radius * np.exp(1j * angles)
        pos += n
    return guesses


def _aberth(coeffs, z, cfg, active):
    iters = 0
    for iters in range(1, cfg.max_iter + 1):
        if not active.any():
            iters -= 1
            break
        za = z[active]
        ratio = _newton_ratio(coeffs, za)
        diff = za[:, None] - z[None, :]
        # exclude self-interaction: the active points sit in z at these positions
        diff[np.arange(za.size), np.flatnonzero(active)] = np.inf
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.sum(1.0 / diff, axis=1)
            step = ratio / (1.0 - ratio * s)
        step = np.where(np.isfinite(step), step, 0.0)
        z = z.copy()
        z[active] = za - step
        done = np.abs(step) <= cfg.tol * np.maximum(1.0, np.abs(za - step))
        act_idx = np.flatnonzero(active)
        active = active.copy()
        active[act_idx[done]] = False
    return z, active, iters


def _durand_kerner(coeffs, z, cfg, active):
    k = coeffs.size - 1
    poly = CharPolynomial(coeffs / coeffs[-1], 0.0)
    iters = 0
    for iters in range(1, cfg.max_iter + 1):
        if not active.any():
            iters -= 1
            break
        za = z[active]
        diff = za[:, None] - z[None, :]
        diff[np.arange(za.size), np.flatnonzero(active)] = 1.0
        with np.errstate(all="ignore"):
            # P(z) / prod_{j != i}(z - z_j) in log space; the raw product under/overflows at k ~ 1000
            log_p = np.log(evaluate_scaled(poly, za)) + k * np.log(np.maximum(1.0, np.abs(za)))
            step = np.exp(log_p - np.sum(np.log(diff), axis=1))
        step = np.where(np.isfinite(step), step, 0.0)
        z = z.copy()
        z[active] = za - step
        done = np.abs(step) <= cfg.tol * np.maximum(1.0, np.abs(za - step))
        act_idx = np.flatnonzero(active)
        active = active.copy()
        active[act_idx[done]] = False
    return z, active, iters


def _scaled_residuals(poly: CharPolynomial, z: np.ndarray) -> np.ndarray:
    return np.abs(evaluate_scaled(poly, z))


def find_roots(poly: CharPolynomial, cfg: SolverConfig | None = None) -> RootSet:
    """All ``k`` roots of ``poly`` by Aberth-Ehrlich iteration.

    Zero roots (the lowest power) are split off exactly before iterating.
    Roots still moving after ``max_iter`` sweeps get a Durand-Kerner pass;
    anything left unconverged is flagged, not hidden. Output is sorted by
    (magnitude, argument).
    """
    cfg = cfg or SolverConfig()
    k = poly.degree
    if k < 1:
        raise ValueError("polynomial must have degree >= 1")
    low = lowest_power(poly)
    coeffs = poly.coeffs[low:]
    n = coeffs.size - 1
    method = "aberth"
    iterations = 0
    if n == 0:
        z = np.zeros(0, dtype=np.complex128)
    elif n == 1:
        z = np.array([-coeffs[0] / coeffs[1]])
    else:
        z = _initial_guesses(coeffs, cfg)
        active = np.ones(n, dtype=bool)
        z, active, iterations = _aberth(coeffs, z, cfg, active)
        if active.any() and cfg.fallback:
            method = "aberth+durand-kerner"
            z, active, extra = _durand_kerner(coeffs, z, cfg, active)
            iterations += extra
        # one Newton polish, kept only where it lowers the residual
        reduced = CharPolynomial(coeffs, 0.0)
        with np.errstate(all="ignore"):
            polished = z - _newton_ratio(coeffs, z)
        before = _scaled_residuals(reduced, z)
        after = np.where(np.isfinite(polished), _scaled_residuals(reduced, np.where(np.isfinite(polished), polished, 0)), np.inf)
        z = np.where(after < before, polished, z)
    roots = np.concatenate([np.zeros(low, dtype=np.complex128), z])
    scaled = _scaled_residuals(poly, roots)
    bound = cfg.residual_bound * poly.scale * (k + 1)
    converged = scaled <= bound
    with np.errstate(divide="ignore", over="ignore"):
        residuals = np.exp(np.log(scaled) + k * np.log(np.maximum(1.0, np.abs(roots))))
    order = canonical_order(roots)
    return RootSet(roots[order], residuals[order], converged[order], iterations, method)


def leja_order(roots) -> np.ndarray:
    """Leja ordering: each next point maximizes the product of distances to those chosen.

    Multiplying out ``(x - x_j)`` in this order keeps intermediate coefficients
    from growing; in plain or sorted order the expansion loses all accuracy
    by degree ~255 for roots clustered near the unit circle.
    """
    z = np.asarray(roots, dtype=np.complex128).ravel()
    if z.size < 2:
        return z.copy()
    remaining = np.ones(z.size, dtype=bool)
    first = int(np.argmax(np.abs(z)))
    out = [first]
    remaining[first] = False
    with np.errstate(divide="ignore"):
        score = np.log(np.abs(z - z[first]))
    for _ in range(z.size - 1):
        cand = np.where(remaining, score, -np.inf)
        i = int(np.argmax(cand))
        if not np.isfinite(cand[i]):
            # only duplicates of chosen points are left
            i = int(np.flatnonzero(remaining)[0])
        out.append(i)
        remaining[i] = False
        with np.errstate(divide="ignore"):
            score = score + np.log(np.abs(z - z[i]))
    return z[np.array(out)]


def state_from_roots(roots, num_sites: int) -> PureState:
    """State with ``C_k = 1`` whose polynomial has exactly these roots.

    Coefficients come from multiplying out ``(x - x_j)`` one factor at a time,
    taking the roots in Leja order.
    """
    roots = leja_order(roots)
    k = roots.size
    if k > 2**num_sites - 1:
        raise ValueError(f"{k} roots need more than {num_sites} qubits")
    coeffs = np.zeros(k + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    for n, r in enumerate(roots, start=1):
        old = coeffs[:n].copy()
        coeffs[1 : n + 1] = old
        coeffs[0] = 0.0
        coeffs[:n] -= r * old
    amps = np.zeros(2**num_sites, dtype=np.complex128)
    amps[: k + 1] = coeffs
    return PureState(amps, num_sites)


def round_trip_fidelity(state: PureState, cfg: SolverConfig | None = None) -> float:
    """Overlap between ``state`` and the state rebuilt from its polynomial roots."""
    poly = from_state(state)
    if poly.degree == 0:
        rebuilt = state_from_roots([], state.num_sites)
    else:
        rs = find_roots(poly, cfg)
        if not rs.all_converged:
            bad = int(np.sum(~rs.converged))
            raise RootFindingError(f"{bad} of {len(rs)} roots did not converge")
        rebuilt = state_from_roots(rs.roots, state.num_sites)
    a, b = state.amplitudes, rebuilt.amplitudes
    return float(abs(np.vdot(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b)))
