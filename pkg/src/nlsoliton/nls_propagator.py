"""Strang-splitting Fourier spectral propagator for the scaled NLS.

The evolved equation, in scaled variables X = x/sqrt(eps), Phi = eps^(N/4) phi,

    i dPhi/dt = -(1/2) Lap Phi + (V(sqrt(eps) X)/eps) Phi
                - eps^(-(2+Np)/2) |Phi|^(2p) Phi,

splits into a kinetic part solved exactly in Fourier space and a
potential+nonlinear part solved exactly pointwise (its modulus is
conserved, freezing the nonlinear coefficient).  One step is the
palindromic composition half-kinetic, full pointwise, half-kinetic.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.fft as sfft

from .spectral_grid import (GridSpec, SpectralField, NumericsError,
                            evaluate_trig_interpolant, forward_transform,
                            inverse_transform, quadrature, transform_workers)
from .ground_state import GroundStateResult, PhysicalParams
from .classical_mechanics import Potential


@dataclass
class Bump:
    """One soliton constituent of the initial datum (physical coordinates)."""

    mass: float
    center: np.ndarray
    velocity: np.ndarray
    profile: GroundStateResult

    def __post_init__(self):
        if self.mass <= 0:
            raise ValueError("bump mass must be positive")
        self.center = np.asarray(self.center, dtype=float)
        self.velocity = np.asarray(self.velocity, dtype=float)


@dataclass
class PropagatorConfig:
    step_k: float
    t_final: float
    frame_stride: int = 1

    def __post_init__(self):
        if self.step_k <= 0:
            raise ValueError("step_k must be positive")
        if self.t_final < 0:
            raise ValueError("t_final must be nonnegative")
        if self.t_final > 0 and self.step_k > self.t_final:
            raise ValueError("step_k must not exceed t_final")
        if self.frame_stride < 1:
            raise ValueError("frame_stride must be >= 1")


def _check_bump_compat(bump: Bump, params: PhysicalParams):
    prof = bump.profile.params
    if (prof.epsilon, prof.p, prof.dims) != (params.epsilon, params.p, params.dims):
        raise ValueError(
            "bump profile was solved with different (epsilon, p, dims) than the run")
    if prof.mass != bump.mass:
        raise ValueError("bump mass does not match its profile's mass constraint")


def place_profile(src: SpectralField, grid: GridSpec, shift) -> np.ndarray:
    """Profile recentered at `shift` on `grid`, as a real array.

    An identical grid uses a Fourier phase ramp; otherwise the source's
    trigonometric interpolant is evaluated at the displaced coordinates.
    Either way the result is zeroed wherever the displacement leaves the
    source box, so no periodic image of the bump leaks onto large grids.
    """
    shift = np.asarray(shift, dtype=float)
    coeff = sfft.fftn(src.values, workers=transform_workers())
    if src.grid == grid:
        for d in range(grid.dims):
            kappa = grid.axis_wavenumbers(d)
            shape = [1] * grid.dims
            shape[d] = kappa.size
            coeff = coeff * np.exp(-1j * shift[d] * kappa).reshape(shape)
        placed = sfft.ifftn(coeff, workers=transform_workers()).real
    else:
        targets = [grid.axis_coordinates(d) - shift[d] for d in range(grid.dims)]
        placed = evaluate_trig_interpolant(coeff, src.grid, targets).real
    for d in range(grid.dims):
        t = grid.axis_coordinates(d) - shift[d]
        L = src.grid.half_widths[d]
        inside = (t >= -L) & (t < L)    # the source's fundamental cell
        shape = [1] * grid.dims
        shape[d] = inside.size
        placed = placed * inside.reshape(shape)
    return placed


def _profile_tail_at(src: SpectralField, displacement) -> float:
    """|R| at one displacement from the bump center; zero outside the box."""
    for d in range(src.grid.dims):
        L = src.grid.half_widths[d]
        if displacement[d] < -L or displacement[d] >= L:
            return 0.0
    coeff = sfft.fftn(src.values, workers=transform_workers())
    point = [np.array([displacement[d]]) for d in range(src.grid.dims)]
    return float(np.abs(evaluate_trig_interpolant(coeff, src.grid, point)).ravel()[0])


def initial_datum(grid: GridSpec, params: PhysicalParams,
                  bumps: Sequence[Bump]) -> SpectralField:
    """Sum of velocity-boosted, translated ground-state profiles.

    Each profile is placed at X0 = center/sqrt(eps) on the run grid
    (profiles may live on their own, smaller grids) and multiplied by the
    phase exp(i X.xi0/sqrt(eps)).
    """
    if not 1 <= len(bumps) <= 2:
        raise ValueError("initial_datum supports one or two bumps")
    eps = params.epsilon
    root = np.sqrt(eps)
    total = np.zeros(grid.shape, dtype=np.complex128)
    centers = []
    for bump in bumps:
        _check_bump_compat(bump, params)
        X0 = bump.center / root
        for d in range(grid.dims):
            if abs(X0[d]) >= grid.half_widths[d]:
                raise ValueError(
                    f"bump center {bump.center} maps to X0={X0} outside the grid")
        centers.append(X0)
        placed = place_profile(bump.profile.profile, grid, X0)
        phase = np.zeros(grid.shape)
        for d in range(grid.dims):
            phase = phase + grid.coordinate_arrays[d] * (bump.velocity[d] / root)
        total += placed * np.exp(1j * phase)
    if len(bumps) == 2:
        _warn_on_overlap(centers, bumps)
    return SpectralField(grid=grid, values=total, space="real")


def _warn_on_overlap(centers, bumps):
    """Warn when either profile tail at the midpoint exceeds 1e-3 of its peak."""
    mid = 0.5 * (centers[0] + centers[1])
    for X0, bump in zip(centers, bumps):
        src = bump.profile.profile
        tail = _profile_tail_at(src, mid - X0)
        peak = float(np.max(np.abs(src.values)))
        if tail > 1e-3 * peak:
            warnings.warn(
                "bump profiles overlap at the midpoint beyond 1e-3 of peak; "
                "the two-bump superposition is no longer a valid initial datum",
            )
            return


def potential_samples(grid: GridSpec, potential: Potential,
                      params: PhysicalParams) -> np.ndarray:
    """W(X) = V(sqrt(eps) X)/eps on the grid.

    For the harmonic trap the scaling cancels: W = sum omega_d^2 X_d^2.
    """
    if potential.kind == "harmonic":
        W = np.zeros(grid.shape)
        for om, X in zip(potential.omega, grid.coordinate_arrays):
            W = W + om**2 * X**2
        return W
    root = np.sqrt(params.epsilon)
    pts = np.stack([root * X for X in grid.coordinate_arrays], axis=-1)
    flat = pts.reshape(-1, grid.dims)
    W = np.fromiter((potential.value(x) for x in flat), dtype=float,
                    count=flat.shape[0])
    return W.reshape(grid.shape) / params.epsilon


def nonlinear_coefficient(params: PhysicalParams) -> float:
    """eps^(-(2+Np)/2), the scaled-equation nonlinearity strength."""
    return params.epsilon ** (-(2.0 + params.dims * params.p) / 2.0)


def kinetic_half_step(field_hat: SpectralField, step_k: float) -> SpectralField:
    """Exact free flight over step_k/2: multiply by exp(-i(k/2)|kappa|^2/2)."""
    if field_hat.space != "fourier":
        raise ValueError("kinetic_half_step expects a fourier-space field")
    grid = field_hat.grid
    mult = np.exp(-1j * (step_k / 2.0) * (grid.wavenumber_sq / 2.0))
    return SpectralField(grid=grid, values=mult * field_hat.values, space="fourier")


def potential_nonlinear_step(field: SpectralField, step_k: float,
                             potential: Potential,
                             params: PhysicalParams) -> SpectralField:
    """Exact pointwise rotation by the potential and frozen nonlinearity."""
    if field.space != "real":
        raise ValueError("potential_nonlinear_step expects a real-space field")
    W = potential_samples(field.grid, potential, params)
    c = nonlinear_coefficient(params)
    mod = np.abs(field.values)
    vals = field.values * np.exp(-1j * step_k * (W - c * mod ** (2.0 * params.p)))
    return SpectralField(grid=field.grid, values=vals, space="real")


def strang_step(field: SpectralField, step_k: float, potential: Potential,
                params: PhysicalParams) -> SpectralField:
    """One full splitting step: half kinetic, pointwise, half kinetic."""
    hat = kinetic_half_step(forward_transform(field), step_k)
    mid = potential_nonlinear_step(inverse_transform(hat), step_k, potential, params)
    hat = kinetic_half_step(forward_transform(mid), step_k)
    out = inverse_transform(hat)
    if not np.all(np.isfinite(out.values)):
        raise NumericsError("nonfinite values after Strang step (blow-up)")
    return out


def _step_sizes(config: PropagatorConfig):
    """Full steps of step_k plus a final shortened step landing on t_final."""
    k = config.step_k
    n_full = int(np.floor(config.t_final / k + 1e-12))
    rem = config.t_final - n_full * k
    sizes = [k] * n_full
    if rem > 1e-12 * k:
        sizes.append(rem)
    return sizes


def propagate(field0: SpectralField, potential: Potential, params: PhysicalParams,
              config: PropagatorConfig, observers: Sequence = ()) -> SpectralField:
    """Advance field0 to t_final, invoking observers along the way.

    Observers are callables observer(step_index, t, field) invoked at t=0,
    every frame_stride-th step boundary, and at t_final.  Consecutive
    half-kinetic multipliers are merged so the inner loop costs one
    transform pair per step; fields handed to observers are exact step
    states.
    """
    grid = field0.grid
    W = potential_samples(grid, potential, params)
    c = nonlinear_coefficient(params)
    two_p = 2.0 * params.p
    sizes = _step_sizes(config)
    for obs in observers:
        obs(0, 0.0, field0)
    if not sizes:
        return field0

    half_cache = {}

    def half_mult(k):
        if k not in half_cache:
            half_cache[k] = np.exp(-1j * (k / 2.0) * (grid.wavenumber_sq / 2.0))
        return half_cache[k]

    workers = transform_workers()
    state_hat = None  # spectral state with a trailing half-kinetic pending
    vals = field0.values
    for i, k in enumerate(sizes):
        if state_hat is None:
            state_hat = sfft.fftn(vals, workers=workers)
        state_hat = state_hat * half_mult(k)
        vals = sfft.ifftn(state_hat, workers=workers)
        vals = vals * np.exp(-1j * k * (W - c * np.abs(vals) ** two_p))
        state_hat = sfft.fftn(vals, workers=workers) * half_mult(k)
        step = i + 1
        t = config.t_final if step == len(sizes) else step * config.step_k
        if step % config.frame_stride == 0 or step == len(sizes):
            vals = sfft.ifftn(state_hat, workers=workers)
            if not np.all(np.isfinite(vals)):
                raise NumericsError(f"nonfinite values at step {step} (blow-up)")
            fld = SpectralField(grid=grid, values=vals, space="real")
            for obs in observers:
                obs(step, t, fld)
            state_hat = None
    if state_hat is not None:
        vals = sfft.ifftn(state_hat, workers=workers)
    return SpectralField(grid=grid, values=vals, space="real")


def field_mass(field: SpectralField) -> float:
    """Discrete L2 mass of a real-space field."""
    return quadrature(field.values.real**2 + field.values.imag**2, field.grid)
