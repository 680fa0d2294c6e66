"""Pure states on N sites of local dimension h, stored as flat amplitude vectors.

Basis index convention: ``i = sum_j i_j * h**j`` with site 0 the
least-significant digit. Many simulators use the opposite (big-endian)
order, so ``|i_0 i_1 ... i_{N-1}>`` here maps to ``i_0 + 2*i_1 + ...``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

MAX_SITES = 20


@dataclass(frozen=True)
class PureState:
    """Possibly unnormalized pure state; amplitudes are stored read-only."""

    amplitudes: np.ndarray
    num_sites: int
    local_dim: int = 2
    max_sites: int = field(default=MAX_SITES, repr=False, compare=False)

    def __post_init__(self):
        if self.local_dim < 2:
            raise ValueError(f"local_dim must be >= 2, got {self.local_dim}")
        if self.num_sites < 1:
            raise ValueError(f"num_sites must be >= 1, got {self.num_sites}")
        if self.num_sites > self.max_sites:
            raise ValueError(
                f"num_sites={self.num_sites} exceeds the limit of {self.max_sites}"
            )
        amps = np.array(self.amplitudes, dtype=np.complex128).ravel()
        expected = self.local_dim**self.num_sites
        if amps.size != expected:
            raise ValueError(
                f"expected {expected} amplitudes for {self.num_sites} sites "
                f"of dimension {self.local_dim}, got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        if not np.any(amps):
            raise ValueError("the zero vector is not a valid state")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes, local_dim: int = 2, **kwargs) -> "PureState":
        """Infer the number of sites from the vector length."""
        size = len(amplitudes)
        n = int(round(np.log(size) / np.log(local_dim))) if size > 1 else 0
        if n < 1 or local_dim**n != size:
            raise ValueError(f"length {size} is not a power of {local_dim}")
        return cls(np.asarray(amplitudes), n, local_dim, **kwargs)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def scaled(self, c: complex) -> "PureState":
        return PureState(c * self.amplitudes, self.num_sites, self.local_dim, self.max_sites)

    def normalized(self) -> "PureState":
        return PureState(self.amplitudes / self.norm, self.num_sites, self.local_dim, self.max_sites)


@dataclass(frozen=True)
class SiteFactor:
    """Single-site state ``(a_j, b_j, ...)`` attached to site ``j``."""

    site: int
    amplitudes: tuple

    def __post_init__(self):
        amps = tuple(complex(a) for a in self.amplitudes)
        if len(amps) < 2:
            raise ValueError("a site factor needs at least two entries")
        if not any(amps):
            raise ValueError(f"factor for site {self.site} is identically zero")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def local_dim(self) -> int:
        return len(self.amplitudes)

    def canonical(self) -> "SiteFactor":
        """Unit norm, first nonzero entry real and positive."""
        v = np.array(self.amplitudes)
        v = v / np.linalg.norm(v)
        lead = v[np.flatnonzero(v)[0]]
        v = v * (abs(lead) / lead)
        return SiteFactor(self.site, tuple(v))


def digit_at(i: int, j: int, h: int = 2, num_sites: int | None = None) -> int:
    """Digit of site ``j`` in the radix-``h`` expansion of basis index ``i``."""
    if h < 2:
        raise ValueError(f"radix must be >= 2, got {h}")
    if i < 0 or j < 0:
        raise ValueError(f"indices must be nonnegative, got i={i}, j={j}")
    if num_sites is not None and (j >= num_sites or i >= h**num_sites):
        raise ValueError(f"index out of range for {num_sites} sites: i={i}, j={j}")
    return (i // h**j) % h


def tensor_product(left: PureState, right: PureState) -> PureState:
    """``left`` takes the low-significance sites: ``|l> |m> -> |l + h**L m>``."""
    if left.local_dim != right.local_dim:
        raise ValueError(
            f"local dimensions differ: {left.local_dim} vs {right.local_dim}"
        )
    # np.kron(a, b)[m * len(b) + l] == a[m] * b[l]
    amps = np.kron(right.amplitudes, left.amplitudes)
    return PureState(
        amps,
        left.num_sites + right.num_sites,
        left.local_dim,
        max(left.max_sites, right.max_sites),
    )


def _check_sites(factors: Sequence[SiteFactor]) -> list[SiteFactor]:
    if not factors:
        raise ValueError("need at least one site factor")
    by_site = sorted(factors, key=lambda f: f.site)
    sites = [f.site for f in by_site]
    if sites != list(range(len(factors))):
        raise ValueError(f"factors must cover sites 0..{len(factors) - 1} exactly once, got {sites}")
    dims = {f.local_dim for f in by_site}
    if len(dims) != 1:
        raise ValueError(f"factors have mixed local dimensions {sorted(dims)}")
    return by_site


def build_product_state(factors: Sequence[SiteFactor], max_sites: int = MAX_SITES) -> PureState:
    """Product state whose amplitude ``C_i`` is the product of ``factor_j[i_j]``."""
    ordered = _check_sites(factors)
    amps = np.ones(1, dtype=np.complex128)
    for f in ordered:
        amps = np.kron(np.asarray(f.amplitudes), amps)
    return PureState(amps, len(ordered), ordered[0].local_dim, max_sites)


def _complex_normal(rng: np.random.Generator, size) -> np.ndarray:
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def random_state(num_sites: int, seed=None, local_dim: int = 2) -> PureState:
    """Haar-random unit vector (isotropic complex Gaussian, normalized)."""
    if num_sites < 1:
        raise ValueError("num_sites must be >= 1")
    rng = np.random.default_rng(seed)
    v = _complex_normal(rng, local_dim**num_sites)
    return PureState(v / np.linalg.norm(v), num_sites, local_dim)


def random_factors(num_sites: int, seed=None, local_dim: int = 2) -> list[SiteFactor]:
    rng = np.random.default_rng(seed)
    out = []
    for j in range(num_sites):
        v = _complex_normal(rng, local_dim)
        out.append(SiteFactor(j, tuple(v / np.linalg.norm(v))))
    return out


def random_product_state(num_sites: int, seed=None, local_dim: int = 2):
    """Returns ``(state, factors)`` with the state built from the factors."""
    if num_sites < 1:
        raise ValueError("num_sites must be >= 1")
    factors = random_factors(num_sites, seed, local_dim)
    return build_product_state(factors), factors


def embed_sites(
    block: np.ndarray, free: dict[int, np.ndarray], num_sites: int, local_dim: int = 2
) -> PureState:
    """Place single-site vectors on the sites in ``free`` and ``block`` on the rest.

    ``block`` is a vector over the remaining sites in ascending order (lowest
    remaining site least significant).
    """
    rest = [j for j in range(num_sites) if j not in free]
    h = local_dim
    if np.asarray(block).size != h ** len(rest):
        raise ValueError("block size does not match the number of remaining sites")
    # axis order of a C-ordered reshape is most-significant first
    tensor = np.asarray(block, dtype=np.complex128).reshape((h,) * len(rest))
    axes = list(reversed(rest))
    for j in sorted(free):
        tensor = np.multiply.outer(np.asarray(free[j], dtype=np.complex128), tensor)
        axes.insert(0, j)
    # current axes hold sites in ``axes`` order; want site N-1 first
    perm = [axes.index(j) for j in reversed(range(num_sites))]
    return PureState(np.transpose(tensor, perm).ravel(), num_sites, local_dim)


def random_partially_separable(num_sites: int, free_sites, seed=None, local_dim: int = 2) -> PureState:
    """Random factors on ``free_sites`` times a Haar-random block on the others."""
    rng = np.random.default_rng(seed)
    free_sites = sorted(set(free_sites))
    rest = num_sites - len(free_sites)
    block = _complex_normal(rng, local_dim**rest)
    free = {j: _complex_normal(rng, local_dim) for j in free_sites}
    return embed_sites(block, free, num_sites, local_dim)
