"""Littlewood-Paley block decomposition and Besov / Hoelder norms.

The dyadic multipliers are built from a radial cutoff ``chi`` that equals 1
for |k| <= 1.1 * 2^j and vanishes for |k| >= 1.4 * 2^j (quintic polynomial
blend in between), with block j >= 0 the difference of consecutive cutoffs
and block -1 the innermost cutoff itself. Frequencies are measured in
integer wavenumber units (cycles per period), so norms are comparable
across resolutions at fixed side length.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fields import Grid, SpectralField, _readonly

__all__ = [
    "BLOCK_INNER",
    "BLOCK_OUTER",
    "BlockDecomposition",
    "BesovProfile",
    "decompose",
    "besov_norm",
    "holder_norm",
    "usable_block_count",
]

# Annulus constants: block j is supported in {BLOCK_INNER*2^j <= |k| <= BLOCK_OUTER*2^j}.
BLOCK_INNER = 0.55
BLOCK_OUTER = 1.4
_FLAT = 1.1  # chi == 1 inside |k| <= _FLAT * 2^j

GAMMA_RANGE = (-2.0, 2.0)


def _smoothstep(x: np.ndarray) -> np.ndarray:
    x = np.clip(x, 0.0, 1.0)
    return x * x * x * (x * (6.0 * x - 15.0) + 10.0)


def _chi(r: np.ndarray) -> np.ndarray:
    """Radial cutoff: 1 on [0, 1.1], 0 on [1.4, inf), quintic blend between."""
    out = np.ones_like(r)
    rising = (r > _FLAT) & (r < BLOCK_OUTER)
    out[r >= BLOCK_OUTER] = 0.0
    out[rising] = 1.0 - _smoothstep((r[rising] - _FLAT) / (BLOCK_OUTER - _FLAT))
    return out


def usable_block_count(grid: Grid) -> int:
    """Largest block index whose annulus is fully resolved below Nyquist."""
    return int(np.floor(np.log2((grid.n / 2.0) / BLOCK_OUTER)))


@lru_cache(maxsize=32)
def _multipliers(grid: Grid):
    """Dyadic partition of unity on the grid frequencies.

    Returns (indices, stack) where indices[0] == -1. The final block index
    is chosen so the cutoff is identically 1 over all grid frequencies,
    making the telescoping reconstruction exact.
    """
    kr = grid.k_radius
    kmax = float(kr.max())
    j_top = 0
    while _FLAT * 2.0**j_top < kmax:
        j_top += 1
    # base block chi(2k) pairs with phi_j = chi(k/2^j) - chi(k/2^(j-1)):
    # the sum telescopes to chi(k/2^j_top) == 1 on every grid frequency
    mults = [_chi(2.0 * kr)]
    indices = [-1]
    for j in range(0, j_top + 1):
        phi = _chi(kr / 2.0**j) - _chi(kr / 2.0 ** (j - 1))
        mults.append(phi)
        indices.append(j)
    stack = np.stack(mults, axis=0)
    return tuple(indices), _readonly(stack)


@dataclass
class BlockDecomposition:
    """Frequency-localized pieces of a field plus the multipliers used."""

    grid: Grid
    blocks: list[tuple[int, SpectralField]]
    partition: np.ndarray  # multiplier stack, one slab per block
    j_max: int  # largest Nyquist-resolved block index

    def reconstruct(self) -> SpectralField:
        total = self.blocks[0][1]
        for _, piece in self.blocks[1:]:
            total = total + piece
        return total


def decompose(f: SpectralField, fault_scale: float | None = None) -> BlockDecomposition:
    """Split ``f`` into Littlewood-Paley blocks (componentwise for vectors).

    ``fault_scale`` is a test hook: when set, the innermost multiplier is
    scaled by that factor, deliberately breaking the partition of unity.
    """
    indices, mults = _multipliers(f.grid)
    if fault_scale is not None:
        mults = mults.copy()
        mults[0] = mults[0] * fault_scale
    chat = f.coeffs_nd
    blocks = []
    for i, j in enumerate(indices):
        piece = SpectralField(f.grid, f.vector, _coeffs=_readonly(chat * mults[i]))
        blocks.append((j, piece))
    return BlockDecomposition(f.grid, blocks, mults, usable_block_count(f.grid))


@dataclass
class BesovProfile:
    """Per-block weighted sup norms ``2^(j gamma) * sup|block_j f|``."""

    gamma: float
    per_block: list[tuple[int, float]]
    j_max: int

    @property
    def norm(self) -> float:
        return max(v for _, v in self.per_block)

    def resolved(self) -> list[tuple[int, float]]:
        """Entries for blocks fully inside the Nyquist band."""
        return [(j, v) for j, v in self.per_block if j <= self.j_max]


def besov_norm(f: SpectralField, gamma: float) -> BesovProfile:
    """Besov (Hoelder-Zygmund) profile of ``f`` at regularity ``gamma``.

    For vector fields the per-block value is the max over components. The
    norm is homogeneous of degree one in the field.

    Raises
    ------
    ValueError
        If ``gamma`` lies outside the supported range [-2, 2].
    """
    gamma = float(gamma)
    if not (GAMMA_RANGE[0] <= gamma <= GAMMA_RANGE[1]):
        raise ValueError(f"gamma must lie in {GAMMA_RANGE}, got {gamma}")
    dec = decompose(f)
    per_block = [(j, 2.0 ** (j * gamma) * piece.sup_norm()) for j, piece in dec.blocks]
    return BesovProfile(gamma, per_block, dec.j_max)


def holder_norm(f: SpectralField, gamma: float) -> float:
    """Classical Hoelder norm: sup|f| plus the grid-restricted difference sup.

    The difference quotient ``|f(x)-f(y)| / |x-y|^gamma`` is maximized over
    all node pairs at torus (minimum image) distance in (0, 1].
    """
    gamma = float(gamma)
    if not (0.0 < gamma < 1.0):
        raise ValueError(f"holder_norm needs gamma in (0, 1), got {gamma}")
    if f.vector:
        return max(holder_norm(f.component(i), gamma) for i in range(f.ncomp))
    g = f.grid
    vals = f.values
    h = g.spacing
    best = 0.0
    if g.d == 1:
        offsets = np.arange(1, g.n // 2 + 1)
        for m in offsets:
            dist = min(m, g.n - m) * h
            if dist > 1.0 or dist == 0.0:
                continue
            diff = np.max(np.abs(vals - np.roll(vals, m)))
            best = max(best, diff / dist**gamma)
    else:
        half = g.n // 2
        for m1 in range(-half + 1, half + 1):
            d1 = abs(m1) * h
            if d1 > 1.0:
                continue
            rolled1 = np.roll(vals, m1, axis=0)
            for m2 in range(0, half + 1):
                if m1 <= 0 and m2 == 0:
                    continue
                dist = np.hypot(d1, m2 * h)
                if dist > 1.0 or dist == 0.0:
                    continue
                diff = np.max(np.abs(vals - np.roll(rolled1, m2, axis=1)))
                best = max(best, diff / dist**gamma)
    return float(np.max(np.abs(vals)) + best)
