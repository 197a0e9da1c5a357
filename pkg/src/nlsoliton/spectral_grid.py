"""Periodic tensor-product grids and Fourier multipliers.

Everything downstream (gradient flow, propagator, diagnostics) runs on a
uniform periodic grid over the box [-L_1, L_1) x ... x [-L_N, L_N) with a
power-of-two point count per axis.  Wavenumbers follow the standard signed
FFT ordering, kappa_{d,j} = pi*j/L_d, so the Laplacian is the diagonal
multiplier -|kappa|^2 in Fourier space.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.fft as sfft


class NumericsError(RuntimeError):
    """Numerical failure (blow-up, nonconvergence) in a solver or stepper."""


def transform_workers() -> int:
    """Worker count for the backing FFTs, capped by the NLS_THREADS env var.

    Defaults to 1 so identical inputs give identical bytes regardless of the
    host's core count.
    """
    try:
        return max(1, int(os.environ.get("NLS_THREADS", "1")))
    except ValueError:
        return 1


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid on a centered box.

    dims: spatial dimension N in {1, 2, 3}
    half_widths: per-axis L_d; the axis covers [-L_d, L_d)
    points: per-axis sample count n_d, a power of two >= 4
    """

    dims: int
    half_widths: tuple
    points: tuple

    def __post_init__(self):
        if self.dims not in (1, 2, 3):
            raise ValueError(f"dims must be 1, 2 or 3, got {self.dims}")
        if len(self.half_widths) != self.dims or len(self.points) != self.dims:
            raise ValueError("half_widths and points must have one entry per dimension")
        for L in self.half_widths:
            if not (L > 0):
                raise ValueError(f"half_width must be positive, got {L}")
        for n in self.points:
            if not _is_power_of_two(int(n)) or n < 4:
                raise ValueError(f"points must be a power of two >= 4, got {n}")

    @property
    def spacings(self) -> tuple:
        return tuple(2.0 * L / n for L, n in zip(self.half_widths, self.points))

    @property
    def shape(self) -> tuple:
        return tuple(int(n) for n in self.points)

    @property
    def cell_volume(self) -> float:
        out = 1.0
        for h in self.spacings:
            out *= h
        return out

    @property
    def total_points(self) -> int:
        out = 1
        for n in self.points:
            out *= int(n)
        return out

    def axis_coordinates(self, d: int) -> np.ndarray:
        """Sample coordinates along axis d: X_i = -L + i*h."""
        L, n = self.half_widths[d], self.points[d]
        return -L + (2.0 * L / n) * np.arange(n)

    def axis_wavenumbers(self, d: int) -> np.ndarray:
        """Signed-order wavenumbers pi*j/L along axis d."""
        n = self.points[d]
        return 2.0 * np.pi * sfft.fftfreq(n, d=self.spacings[d])

    @cached_property
    def coordinate_arrays(self) -> tuple:
        """Broadcast meshgrid of coordinates, one array per axis."""
        axes = [self.axis_coordinates(d) for d in range(self.dims)]
        return tuple(np.meshgrid(*axes, indexing="ij"))

    @cached_property
    def wavenumber_arrays(self) -> tuple:
        axes = [self.axis_wavenumbers(d) for d in range(self.dims)]
        return tuple(np.meshgrid(*axes, indexing="ij"))

    @cached_property
    def wavenumber_sq(self) -> np.ndarray:
        """|kappa|^2 on the full mode grid."""
        out = np.zeros(self.shape)
        for K in self.wavenumber_arrays:
            out = out + K**2
        return out


@dataclass
class SpectralField:
    """Complex samples on a grid, in either real or Fourier space."""

    grid: GridSpec
    values: np.ndarray
    space: str = "real"  # "real" or "fourier"

    def __post_init__(self):
        if self.space not in ("real", "fourier"):
            raise ValueError(f"space must be 'real' or 'fourier', got {self.space!r}")
        if self.values.shape != self.grid.shape:
            raise ValueError(
                f"values shape {self.values.shape} does not match grid {self.grid.shape}")


@dataclass
class LaplacianSymbol:
    """Diagonal Fourier multiplier of the Laplacian: -|kappa|^2 per mode."""

    grid: GridSpec
    values: np.ndarray = field(init=False)

    def __post_init__(self):
        self.values = -self.grid.wavenumber_sq


def make_grid(dims: int, half_widths, points) -> GridSpec:
    """Validated grid constructor; see GridSpec for conventions."""
    return GridSpec(dims=dims,
                    half_widths=tuple(float(L) for L in half_widths),
                    points=tuple(int(n) for n in points))


def laplacian_symbol(grid: GridSpec) -> LaplacianSymbol:
    return LaplacianSymbol(grid=grid)


def forward_transform(fld: SpectralField) -> SpectralField:
    """Real space -> Fourier coefficients (unnormalized forward DFT)."""
    if fld.space != "real":
        raise ValueError("forward_transform expects a real-space field")
    coeff = sfft.fftn(fld.values, workers=transform_workers())
    return SpectralField(grid=fld.grid, values=coeff, space="fourier")


def inverse_transform(fld: SpectralField) -> SpectralField:
    """Fourier coefficients -> real space; exact inverse of forward_transform."""
    if fld.space != "fourier":
        raise ValueError("inverse_transform expects a fourier-space field")
    vals = sfft.ifftn(fld.values, workers=transform_workers())
    return SpectralField(grid=fld.grid, values=vals, space="real")


def quadrature(values: np.ndarray, grid: GridSpec) -> float:
    """Rectangle-rule integral over the periodic box: sum * prod(h_d)."""
    total = np.sum(values)
    if np.iscomplexobj(values):
        total = total.real
    return float(total * grid.cell_volume)


def l2_norm(values: np.ndarray, grid: GridSpec) -> float:
    """Discrete L2 norm of real-space samples."""
    sq = values.real**2 + values.imag**2 if np.iscomplexobj(values) else values**2
    return float(np.sqrt(np.sum(sq) * grid.cell_volume))


def parseval_weight(grid: GridSpec) -> float:
    """Weight making sum |coeff|^2 * weight equal the real-space L2^2.

    With the unnormalized forward transform, Parseval reads
    sum |f|^2 * prod(h) = sum |fhat|^2 * prod(h) / prod(n).
    """
    return grid.cell_volume / grid.total_points


def spectral_l2_norm(coeff: np.ndarray, grid: GridSpec) -> float:
    return float(np.sqrt(np.sum(coeff.real**2 + coeff.imag**2) * parseval_weight(grid)))


def gradient_sq_integral(coeff: np.ndarray, grid: GridSpec) -> float:
    """Integral of |grad f|^2 from the Fourier coefficients of f."""
    w = parseval_weight(grid)
    return float(np.sum(grid.wavenumber_sq * (coeff.real**2 + coeff.imag**2)) * w)


def evaluate_trig_interpolant(coeff: np.ndarray, grid: GridSpec,
                              axis_targets) -> np.ndarray:
    """Evaluate the trigonometric interpolant at a tensor grid of points.

    coeff are forward-transform coefficients on `grid`; axis_targets is one
    1-D coordinate array per axis.  Points outside the box evaluate the
    periodic extension.  Applies one small dense matrix per axis, so the
    cost is a few matrix products, not an N-D nonuniform transform.
    """
    if len(axis_targets) != grid.dims:
        raise ValueError("need one target coordinate array per dimension")
    vals = coeff
    for d in range(grid.dims):
        kappa = grid.axis_wavenumbers(d)
        # nodes start at -L_d, so the interpolant reads sum c_k e^{i kappa (x+L_d)} / n
        off = np.asarray(axis_targets[d], float) + grid.half_widths[d]
        E = np.exp(1j * np.outer(off, kappa))
        E /= grid.points[d]
        vals = np.moveaxis(np.tensordot(E, vals, axes=(1, d)), 0, d)
    return vals
