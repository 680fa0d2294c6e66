"""Characteristic polynomial ``P(phi; x) = sum_i C_i x**i`` and coefficient arithmetic.

Coefficient arrays are stored lowest power first (index = power of x),
the opposite of ``numpy.polyval``'s convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .state import PureState

TRIM_TOL = 1e-12
MAX_DEGREE = 2**24


def _trim_length(coeffs: np.ndarray, trim_tol: float) -> int:
    mags = np.abs(coeffs)
    scale = mags.max() if mags.size else 0.0
    keep = np.flatnonzero(mags > trim_tol * scale)
    return int(keep[-1]) + 1 if keep.size else 1


def binary_digits(n: int, width: int | None = None) -> tuple[int, ...]:
    """Little-endian binary digits of ``n`` (digit j has weight 2**j)."""
    if n < 0:
        raise ValueError("negative integer has no binary digits here")
    width = max(n.bit_length(), 1) if width is None else width
    return tuple((n >> j) & 1 for j in range(width))


@dataclass(frozen=True)
class CharPolynomial:
    coeffs: np.ndarray
    trim_tol: float = TRIM_TOL
    degree_digits: tuple = field(init=False, repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=np.complex128)
        c = c[: _trim_length(c, self.trim_tol)].copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "degree_digits", binary_digits(c.size - 1))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def scale(self) -> float:
        """``max_i |C_i|``, the reference magnitude for all relative thresholds."""
        return float(np.abs(self.coeffs).max())

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def digit(self, j: int) -> int:
        return (self.degree >> j) & 1

    def padded(self, length: int) -> np.ndarray:
        if length < self.coeffs.size:
            raise ValueError("cannot pad to a shorter length")
        out = np.zeros(length, dtype=np.complex128)
        out[: self.coeffs.size] = self.coeffs
        return out

    def __call__(self, x):
        return evaluate(self, x)


def from_state(state: PureState, trim_tol: float = TRIM_TOL) -> CharPolynomial:
    return CharPolynomial(state.amplitudes, trim_tol)


def evaluate(poly: CharPolynomial, x):
    """Horner evaluation; ``x`` may be a scalar or an array of points."""
    x = np.asarray(x, dtype=np.complex128)
    acc = np.zeros_like(x)
    for c in poly.coeffs[::-1]:
        acc = acc * x + c
    return acc[()] if acc.ndim == 0 else acc


def evaluate_scaled(poly: CharPolynomial, x):
    """``P(x) / max(1, |x|)**k`` without overflow.

    Points outside the unit disk are evaluated through the reversed
    polynomial at ``1/x``; the result is bounded by ``sum_i |C_i|`` at
    every point, which makes it a sensible residual scale for any ``x``.
    """
    x = np.atleast_1d(np.asarray(x, dtype=np.complex128))
    out = np.empty_like(x)
    inner = np.abs(x) <= 1.0
    if inner.any():
        out[inner] = np.atleast_1d(evaluate(poly, x[inner]))
    if (~inner).any():
        xo = x[~inner]
        w = 1.0 / xo
        acc = np.zeros_like(xo)
        for c in poly.coeffs:
            acc = acc * w + c
        # acc = x**-k P(x); multiply by the unit-modulus phase of x**k
        k = poly.degree
        phase = np.exp(1j * k * np.angle(xo))
        out[~inner] = acc * phase
    return out


def lowest_power(poly: CharPolynomial) -> int:
    mags = np.abs(poly.coeffs)
    nz = np.flatnonzero(mags > poly.trim_tol * mags.max())
    return int(nz[0]) if nz.size else 0


def multiply(a: CharPolynomial, b: CharPolynomial) -> CharPolynomial:
    return CharPolynomial(np.convolve(a.coeffs, b.coeffs), min(a.trim_tol, b.trim_tol))


def compose_power(poly: CharPolynomial, p: int) -> CharPolynomial:
    """``P(x**p)``: coefficient i moves to power ``p*i``."""
    if p < 1:
        raise ValueError(f"power must be >= 1, got {p}")
    if poly.degree * p > MAX_DEGREE:
        raise ValueError(f"composed degree {poly.degree * p} exceeds {MAX_DEGREE}")
    out = np.zeros(poly.degree * p + 1, dtype=np.complex128)
    out[::p] = poly.coeffs
    return CharPolynomial(out, poly.trim_tol)


def _strided(coeffs: np.ndarray, e: int) -> np.ndarray:
    """Reshape to ``(rows, e)`` so column r holds the coefficients of powers ``r + e*t``."""
    rows = -(-coeffs.size // e)
    buf = np.zeros(rows * e, dtype=np.complex128)
    buf[: coeffs.size] = coeffs
    return buf.reshape(rows, e)


def divide_by_binomial(poly: CharPolynomial, e: int, c: complex):
    """Divide by ``x**e - c``: returns ``(quotient, remainder)`` with ``deg remainder < e``.

    Each residue class of powers mod ``e`` is a polynomial in ``y = x**e``
    and is divided by ``y - c`` with ordinary synthetic division, top down.
    The remainder is a plain coefficient array of length ``e``.
    """
    if e < 1:
        raise ValueError(f"exponent must be >= 1, got {e}")
    c = complex(c)
    cols = _strided(poly.coeffs, e)
    rows = cols.shape[0]
    quot = np.zeros((max(rows - 1, 1), e), dtype=np.complex128)
    acc = np.zeros(e, dtype=np.complex128)
    for t in range(rows - 1, 0, -1):
        acc = cols[t] + c * acc
        quot[t - 1] = acc
    remainder = cols[0] + c * acc
    return CharPolynomial(quot.ravel(), 0.0), remainder


def deflate_binomial(poly: CharPolynomial, e: int, c: complex):
    """Stable variant of :func:`divide_by_binomial` for divisibility tests.

    Top-down synthetic division multiplies rounding errors by ``|c|`` at every
    step, which is catastrophic for ``|c| > 1`` and long residue classes. In that
    case the recurrence runs bottom up instead, leaving the residual in the top
    coefficient of each class: ``poly = q * (x**e - c) + r * x**(e*n)``.
    Either residual vanishes exactly when ``x**e - c`` divides ``poly``, and the
    quotients then coincide.

    Returns ``(quotient_coeffs, residual)``, both plain arrays.
    """
    c = complex(c)
    if abs(c) <= 1.0:
        q, r = divide_by_binomial(poly, e, c)
        return q.coeffs, r
    cols = _strided(poly.coeffs, e)
    rows = cols.shape[0]
    quot = np.zeros((max(rows - 1, 1), e), dtype=np.complex128)
    if rows == 1:
        return quot.ravel(), cols[0].copy()
    # p_0 = -c q_0, p_t = q_{t-1} - c q_t, p_n = q_{n-1} + r
    acc = -cols[0] / c
    quot[0] = acc
    for t in range(1, rows - 1):
        acc = (acc - cols[t]) / c
        quot[t] = acc
    residual = cols[rows - 1] - acc
    return quot.ravel(), residual
