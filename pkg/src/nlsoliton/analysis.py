"""Observables for propagation runs.

Provides the semiclassically weighted energy norm, the soliton tracking
error against a recentered ground-state profile, center of mass, the full
scaled-equation energy, and an observer that records all of these along a
run together with the classical reference trajectory.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

import numpy as np
import scipy.fft as sfft

from .spectral_grid import (GridSpec, SpectralField, gradient_sq_integral,
                            quadrature, transform_workers)
from .ground_state import GroundStateResult, PhysicalParams
from .classical_mechanics import Potential
from .nls_propagator import (nonlinear_coefficient, place_profile,
                             potential_samples)


def h_eps_norm(field: SpectralField, params: PhysicalParams) -> float:
    """Energy norm with semiclassical weights, in scaled variables.

    For the scaled field U(X) this is
    sqrt(eps^(1-N) |grad U|_2^2 + eps^(-N) |U|_2^2), which equals the
    physically weighted norm sqrt(eps^(2-N) |grad u|^2 + eps^(-N) |u|^2)
    of the corresponding unscaled field u.
    """
    if field.space != "real":
        raise ValueError("h_eps_norm expects a real-space field")
    eps = params.epsilon
    N = field.grid.dims
    coeff = sfft.fftn(field.values, workers=transform_workers())
    grad_sq = gradient_sq_integral(coeff, field.grid)
    l2_sq = quadrature(np.abs(field.values) ** 2, field.grid)
    return float(np.sqrt(eps ** (1 - N) * grad_sq + eps ** (-N) * l2_sq))


def center_of_mass(field: SpectralField, grid: Optional[GridSpec] = None) -> np.ndarray:
    """First moment of |field|^2 in the field's own (scaled) coordinates."""
    grid = grid if grid is not None else field.grid
    dens = field.values.real**2 + field.values.imag**2
    total = float(np.sum(dens))
    if total <= 0:
        raise ValueError("center_of_mass of a zero field is undefined")
    out = np.empty(grid.dims)
    for d in range(grid.dims):
        out[d] = float(np.sum(grid.coordinate_arrays[d] * dens)) / total
    return out


def full_energy(field: SpectralField, potential: Potential,
                params: PhysicalParams,
                potential_values: Optional[np.ndarray] = None) -> float:
    """Conserved energy of the scaled equation.

    E[Phi] = 1/2 |grad Phi|^2 + int W |Phi|^2 - c/(p+1) int |Phi|^(2p+2)
    with W the scaled potential samples and c the nonlinearity strength.
    Pass potential_values to reuse precomputed W samples.
    """
    if field.space != "real":
        raise ValueError("full_energy expects a real-space field")
    grid = field.grid
    W = potential_values if potential_values is not None else \
        potential_samples(grid, potential, params)
    c = nonlinear_coefficient(params)
    coeff = sfft.fftn(field.values, workers=transform_workers())
    dens = field.values.real**2 + field.values.imag**2
    kin = 0.5 * gradient_sq_integral(coeff, grid)
    pot = quadrature(W * dens, grid)
    nonlin = c / (params.p + 1.0) * quadrature(dens ** (params.p + 1.0), grid)
    return kin + pot - nonlin


def translated_profile(profile: SpectralField, grid: GridSpec,
                       shift: np.ndarray) -> np.ndarray:
    """Real-valued profile recentered at `shift` on `grid`.

    Shares the placement rule of the initial datum (phase ramp on an
    identical grid, trigonometric interpolation otherwise, zero beyond the
    source box), so a datum bump and its reference agree to roundoff.
    """
    return place_profile(profile, grid, shift)


def soliton_error(field: SpectralField, ground_profile,
                  newton_x: np.ndarray, params: PhysicalParams) -> float:
    """Energy-norm distance between |field| and the profile centered on the
    classical trajectory point newton_x (physical coordinates).

    This is the modulus-level comparison: phases are discarded, so only the
    shape and location of the bump are tested.
    """
    prof = ground_profile.profile if isinstance(ground_profile, GroundStateResult) \
        else ground_profile
    newton_x = np.asarray(newton_x, dtype=float)
    X_c = newton_x / np.sqrt(params.epsilon)
    for d in range(field.grid.dims):
        if abs(X_c[d]) >= field.grid.half_widths[d]:
            raise ValueError(
                f"trajectory point {newton_x} maps to X_c={X_c} outside the grid")
    R_c = translated_profile(prof, field.grid, X_c)
    diff = np.abs(field.values) - R_c
    return h_eps_norm(SpectralField(grid=field.grid, values=diff, space="real"),
                      params)


@dataclass
class DiagnosticsSeries:
    """Column-parallel record of per-frame observables along one run."""

    params: PhysicalParams
    times: list = dc_field(default_factory=list)
    mass: list = dc_field(default_factory=list)
    energy_full: list = dc_field(default_factory=list)
    h_eps_error: list = dc_field(default_factory=list)
    com: list = dc_field(default_factory=list)
    newton_x: list = dc_field(default_factory=list)

    def append(self, t, mass, energy, error, com, newton):
        self.times.append(float(t))
        self.mass.append(float(mass))
        self.energy_full.append(float(energy))
        self.h_eps_error.append(float(error))
        self.com.append(np.asarray(com, dtype=float))
        self.newton_x.append(np.asarray(newton, dtype=float))

    def __len__(self):
        return len(self.times)


class DiagnosticsRecorder:
    """Propagation observer filling a DiagnosticsSeries.

    reference(t) must return the physical-space classical position used for
    both the recentered-profile comparison and the newton columns; com is
    converted to physical coordinates (multiplied by sqrt(eps)) so the two
    position columns share units.  Without a reference or profile the
    corresponding columns are NaN.
    """

    def __init__(self, potential: Potential, params: PhysicalParams,
                 profile=None, reference: Optional[Callable] = None,
                 record_error: bool = True):
        self.potential = potential
        self.params = params
        self.profile = profile
        self.reference = reference
        self.record_error = record_error and profile is not None
        self.series = DiagnosticsSeries(params=params)
        self._W = None

    def __call__(self, step: int, t: float, field: SpectralField):
        if self._W is None:
            self._W = potential_samples(field.grid, self.potential, self.params)
        dens = field.values.real**2 + field.values.imag**2
        mass = quadrature(dens, field.grid)
        energy = full_energy(field, self.potential, self.params,
                             potential_values=self._W)
        n = field.grid.dims
        newton = self.reference(t) if self.reference is not None \
            else np.full(n, np.nan)
        if self.record_error and np.all(np.isfinite(newton)):
            err = soliton_error(field, self.profile, newton, self.params)
        else:
            err = np.nan
        com_phys = np.sqrt(self.params.epsilon) * center_of_mass(field)
        self.series.append(t, mass, energy, err, com_phys, newton)
