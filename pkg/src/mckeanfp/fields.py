"""Periodic grids, time grids and real-valued fields with cached spectra.

All fields live on the torus [0, L)^d sampled on a uniform grid. A field
carries two synchronized representations, real samples at the grid nodes
and discrete Fourier coefficients (numpy ``fftn`` layout, unnormalized
forward transform). Both caches are exposed read-only; operations never
mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "Grid",
    "TimeGrid",
    "SpectralField",
    "constant_field",
    "fourier_mode",
    "wrapped_gaussian",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on [0, L)^d.

    Parameters
    ----------
    d : int
        Spatial dimension, 1 or 2.
    n : int
        Points per axis, a power of two, at least 8.
    length : float
        Side length L of the torus.
    """

    d: int
    n: int
    length: float = 1.0

    def __post_init__(self):
        if self.d not in (1, 2):
            raise ValueError(f"spatial dimension must be 1 or 2, got {self.d}")
        if self.n < 8 or (self.n & (self.n - 1)) != 0:
            raise ValueError(f"grid size must be a power of two >= 8, got {self.n}")
        if not self.length > 0:
            raise ValueError(f"side length must be positive, got {self.length}")

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n,) * self.d

    @property
    def spacing(self) -> float:
        return self.length / self.n

    @property
    def npoints(self) -> int:
        return self.n**self.d

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.d

    @property
    def volume(self) -> float:
        return self.length**self.d

    def axis_coords(self) -> np.ndarray:
        """Node coordinates along one axis."""
        return np.arange(self.n) * self.spacing

    @cached_property
    def coords(self) -> tuple[np.ndarray, ...]:
        """Meshgrid node coordinates, one array of ``shape`` per axis."""
        x = self.axis_coords()
        if self.d == 1:
            return (_readonly(x.copy()),)
        xx, yy = np.meshgrid(x, x, indexing="ij")
        return (_readonly(xx), _readonly(yy))

    @cached_property
    def wavenumbers(self) -> tuple[np.ndarray, ...]:
        """Integer wavenumber k along each axis, broadcast to ``shape``."""
        k = np.fft.fftfreq(self.n, d=1.0 / self.n)
        if self.d == 1:
            return (_readonly(k.copy()),)
        k1, k2 = np.meshgrid(k, k, indexing="ij")
        return (_readonly(k1), _readonly(k2))

    @cached_property
    def k_radius(self) -> np.ndarray:
        """|k| in integer wavenumber units, shape ``shape``."""
        ksq = sum(k**2 for k in self.wavenumbers)
        return _readonly(np.sqrt(ksq))

    def xi(self, axis: int) -> np.ndarray:
        """Angular frequency 2*pi*k/L along ``axis``."""
        return (2.0 * np.pi / self.length) * self.wavenumbers[axis]

    @cached_property
    def xi_deriv(self) -> tuple[np.ndarray, ...]:
        """Frequencies for odd derivatives: like ``xi`` with the Nyquist
        bin zeroed, which keeps derivative spectra Hermitian symmetric."""
        out = []
        for a in range(self.d):
            x = self.xi(a).copy()
            x[np.abs(self.wavenumbers[a]) == self.n // 2] = 0.0
            out.append(_readonly(x))
        return tuple(out)

    @cached_property
    def xi_squared(self) -> np.ndarray:
        """|xi|^2 = sum_j (2 pi k_j / L)^2, shape ``shape``."""
        out = sum(self.xi(a) ** 2 for a in range(self.d))
        return _readonly(np.asarray(out))


@dataclass(frozen=True)
class TimeGrid:
    """Uniform partition of [0, T] into ``steps`` intervals."""

    horizon: float
    steps: int

    def __post_init__(self):
        if not self.horizon > 0:
            raise ValueError(f"horizon must be positive, got {self.horizon}")
        if self.steps < 1:
            raise ValueError(f"need at least one step, got {self.steps}")

    @property
    def dt(self) -> float:
        return self.horizon / self.steps

    @cached_property
    def nodes(self) -> np.ndarray:
        t = np.linspace(0.0, self.horizon, self.steps + 1)
        return _readonly(t)


class SpectralField:
    """Scalar or vector field on a :class:`Grid` with lazy dual storage.

    Internally both representations are stored with a leading component
    axis ``(ncomp, *grid.shape)``; the public ``values``/``coeffs``
    properties squeeze that axis away for scalar fields. Arrays returned
    by this class are read only.
    """

    __slots__ = ("grid", "vector", "_vals", "_coeffs")

    def __init__(self, grid: Grid, vector: bool, *, _vals=None, _coeffs=None):
        self.grid = grid
        self.vector = bool(vector)
        self._vals = _vals
        self._coeffs = _coeffs

    # -- construction -----------------------------------------------------

    @classmethod
    def from_values(cls, grid: Grid, values: np.ndarray, vector: bool = False) -> "SpectralField":
        ncomp = grid.d if vector else 1
        vals = np.asarray(values, dtype=np.float64)
        if not vector and vals.shape == grid.shape:
            vals = vals[None]
        if vals.shape != (ncomp,) + grid.shape:
            raise ValueError(
                f"expected values of shape {(ncomp,) + grid.shape} "
                f"({'vector' if vector else 'scalar'}), got {vals.shape}"
            )
        return cls(grid, vector, _vals=_readonly(vals.copy()))

    @classmethod
    def from_coeffs(
        cls, grid: Grid, coeffs: np.ndarray, vector: bool = False, check_real: bool = True
    ) -> "SpectralField":
        """Build a field from Fourier coefficients.

        With ``check_real`` (the default) the coefficients must be Hermitian
        symmetric: the imaginary residue of the inverse transform is checked
        against 1e-12 of the field magnitude.
        """
        ncomp = grid.d if vector else 1
        c = np.asarray(coeffs, dtype=np.complex128)
        if not vector and c.shape == grid.shape:
            c = c[None]
        if c.shape != (ncomp,) + grid.shape:
            raise ValueError(
                f"expected coeffs of shape {(ncomp,) + grid.shape}, got {c.shape}"
            )
        field = cls(grid, vector, _coeffs=_readonly(c.copy()))
        if check_real:
            z = np.fft.ifftn(field._coeffs, axes=field._spatial_axes())
            scale = np.max(np.abs(z))
            imag = np.max(np.abs(z.imag))
            if scale > 0 and imag > 1e-12 * scale:
                raise ValueError(
                    f"coefficients are not Hermitian symmetric "
                    f"(imaginary residue {imag / scale:.2e} of field magnitude)"
                )
            field._vals = _readonly(np.ascontiguousarray(z.real))
        return field

    def _spatial_axes(self) -> tuple[int, ...]:
        return tuple(range(1, self.grid.d + 1))

    def _sync_values(self) -> None:
        # internal spectral ops preserve Hermitian symmetry by construction,
        # so conversion just drops the roundoff-level imaginary part
        if self._vals is None:
            z = np.fft.ifftn(self._coeffs, axes=self._spatial_axes())
            self._vals = _readonly(np.ascontiguousarray(z.real))

    def _sync_coeffs(self) -> None:
        if self._coeffs is None:
            c = np.fft.fftn(self._vals, axes=self._spatial_axes())
            self._coeffs = _readonly(c)

    # -- representations --------------------------------------------------

    @property
    def ncomp(self) -> int:
        return self.grid.d if self.vector else 1

    @property
    def values(self) -> np.ndarray:
        """Real node samples, shape ``grid.shape`` (scalar) or ``(d, *grid.shape)``."""
        self._sync_values()
        return self._vals[0] if not self.vector else self._vals

    @property
    def coeffs(self) -> np.ndarray:
        """Fourier coefficients in ``fftn`` layout, same shaping as ``values``."""
        self._sync_coeffs()
        return self._coeffs[0] if not self.vector else self._coeffs

    @property
    def values_nd(self) -> np.ndarray:
        """Samples with explicit component axis ``(ncomp, *grid.shape)``."""
        self._sync_values()
        return self._vals

    @property
    def coeffs_nd(self) -> np.ndarray:
        self._sync_coeffs()
        return self._coeffs

    # -- basic queries ----------------------------------------------------

    def mean(self):
        """Spatial mean per component (float for scalar fields)."""
        self._sync_values()
        m = self._vals.mean(axis=self._spatial_axes())
        return float(m[0]) if not self.vector else m

    def integral(self):
        """Integral over the torus, ``mean * L^d``."""
        m = self.mean()
        return m * self.grid.volume

    def sup_norm(self) -> float:
        self._sync_values()
        return float(np.max(np.abs(self._vals)))

    def component(self, i: int) -> "SpectralField":
        """Extract component ``i`` as a scalar field."""
        if not self.vector:
            if i != 0:
                raise IndexError("scalar field has a single component")
            return self
        if self._vals is not None:
            return SpectralField(self.grid, False, _vals=_readonly(self._vals[i : i + 1].copy()))
        return SpectralField(self.grid, False, _coeffs=_readonly(self._coeffs[i : i + 1].copy()))

    @classmethod
    def from_components(cls, comps: list["SpectralField"]) -> "SpectralField":
        grid = comps[0].grid
        if len(comps) != grid.d or any(c.vector or c.grid != grid for c in comps):
            raise ValueError("need grid.d scalar components on a common grid")
        c = np.concatenate([f.coeffs_nd for f in comps], axis=0)
        return cls(grid, True, _coeffs=_readonly(c))

    # -- arithmetic (pure, inputs untouched) -------------------------------

    def _check_compatible(self, other: "SpectralField") -> None:
        if self.grid != other.grid:
            raise ValueError("fields live on different grids")
        if self.vector != other.vector:
            raise ValueError("cannot combine scalar and vector fields")

    def _binary(self, other: "SpectralField", op) -> "SpectralField":
        self._check_compatible(other)
        if self._coeffs is not None and other._coeffs is not None:
            return SpectralField(self.grid, self.vector, _coeffs=_readonly(op(self._coeffs, other._coeffs)))
        return SpectralField(
            self.grid, self.vector, _vals=_readonly(op(self.values_nd, other.values_nd))
        )

    def __add__(self, other: "SpectralField") -> "SpectralField":
        return self._binary(other, np.add)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        return self._binary(other, np.subtract)

    def __mul__(self, scalar: float) -> "SpectralField":
        s = float(scalar)
        if self._coeffs is not None:
            return SpectralField(self.grid, self.vector, _coeffs=_readonly(self._coeffs * s))
        return SpectralField(self.grid, self.vector, _vals=_readonly(self._vals * s))

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralField":
        return self * (-1.0)

    def __repr__(self) -> str:
        kind = "vector" if self.vector else "scalar"
        return f"SpectralField({kind}, d={self.grid.d}, n={self.grid.n}, L={self.grid.length})"


# -- common constructions --------------------------------------------------


def constant_field(grid: Grid, value, vector: bool = False) -> SpectralField:
    """Field constant in space; ``value`` is a scalar or one number per component."""
    ncomp = grid.d if vector else 1
    v = np.broadcast_to(np.asarray(value, dtype=np.float64).reshape(-1, *(1,) * grid.d), (ncomp,) + grid.shape)
    return SpectralField.from_values(grid, np.ascontiguousarray(v), vector=vector)


def fourier_mode(grid: Grid, k, amplitude: float = 1.0, phase: float = 0.0) -> SpectralField:
    """Scalar field ``amplitude * cos(2 pi k.x / L + phase)``."""
    k = np.atleast_1d(np.asarray(k, dtype=np.float64))
    if k.shape != (grid.d,):
        raise ValueError(f"mode index must have {grid.d} entries")
    arg = sum((2.0 * np.pi / grid.length) * k[a] * grid.coords[a] for a in range(grid.d))
    return SpectralField.from_values(grid, amplitude * np.cos(arg + phase))


def wrapped_gaussian(grid: Grid, center=None, std: float = 0.1, normalized: bool = True) -> SpectralField:
    """Periodized Gaussian bump, optionally normalized to unit integral.

    The periodization sums enough images that the truncation error is
    below double precision for ``std`` up to about ``L``.
    """
    if center is None:
        center = (grid.length / 2.0,) * grid.d
    center = np.atleast_1d(np.asarray(center, dtype=np.float64))
    nimg = max(3, int(np.ceil(6.0 * std / grid.length)) + 3)
    vals = np.ones(grid.shape)
    for a in range(grid.d):
        dx = grid.coords[a] - center[a]
        acc = np.zeros(grid.shape)
        for m in range(-nimg, nimg + 1):
            acc += np.exp(-((dx + m * grid.length) ** 2) / (2.0 * std**2))
        vals = vals * acc / np.sqrt(2.0 * np.pi * std**2)
    f = SpectralField.from_values(grid, vals)
    if normalized:
        f = f * (1.0 / f.integral())
    return f
