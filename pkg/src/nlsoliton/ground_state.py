"""Constrained NLS ground states via normalized parabolic gradient flow.

The profile R solves, in scaled variables,

    dR/dt = (eps/2) Lap R + eps^(-N p/2) R^(2p+1) + Lambda(R) R,
    ||R||^2 = m eps^N,

whose steady state is the mass-constrained ground state.  Time stepping is
an adaptive exponential Runge-Kutta pair (order 2 with embedded order 1):
the stiff Laplacian is integrated exactly through diagonal exp/phi
multipliers, the rest enters through the phi1/phi2 weights.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import scipy.fft as sfft

from .spectral_grid import (GridSpec, SpectralField, NumericsError, make_grid,
                            l2_norm, quadrature, spectral_l2_norm,
                            gradient_sq_integral, parseval_weight,
                            transform_workers)


@dataclass(frozen=True)
class PhysicalParams:
    """Problem constants: semiclassical eps, nonlinearity exponent p,
    constraint mass m, spatial dimension N (p must satisfy 0 < p < 2/N)."""

    epsilon: float
    p: float
    mass: float
    dims: int

    def __post_init__(self):
        if self.dims not in (1, 2, 3):
            raise ValueError(f"dims must be 1, 2 or 3, got {self.dims}")
        if not (0.0 < self.p < 2.0 / self.dims):
            raise ValueError(
                f"p must satisfy 0 < p < 2/N (N={self.dims}), got {self.p}")
        if not (self.epsilon > 0):
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if not (self.mass > 0):
            raise ValueError(f"mass must be positive, got {self.mass}")

    @property
    def target_mass(self) -> float:
        """Discrete mass constraint m * eps^N."""
        return self.mass * self.epsilon ** self.dims

    @property
    def nonlinear_weight(self) -> float:
        """Flow-scale nonlinearity coefficient eps^(-N p / 2)."""
        return self.epsilon ** (-self.dims * self.p / 2.0)


@dataclass
class FlowConfig:
    """Adaptive-flow controls.

    The flow stops once the energy change per accepted step falls below
    energy_tol (twice in a row) and the flow residual is below
    residual_tol; the energy test alone can trigger while the step size is
    still small, long before the elliptic equation is satisfied.
    """

    energy_tol: float = 1e-10
    step_tol: float = 1e-8
    k_init: float = 1e-3
    k_max: float = 2.0
    max_steps: int = 100_000
    renormalize: bool = True
    residual_tol: float = 3e-7

    def __post_init__(self):
        if min(self.energy_tol, self.step_tol, self.k_init, self.k_max,
               self.residual_tol) <= 0:
            raise ValueError("tolerances and step bounds must be positive")
        if self.k_init > self.k_max:
            raise ValueError("k_init must not exceed k_max")


@dataclass
class GroundStateResult:
    """Converged profile with its eigenvalue and solver metadata."""

    profile: SpectralField          # real-space, nonnegative values
    params: PhysicalParams
    lambda_inf: float               # Lambda at the steady state (negative)
    lambda_hat: float               # -lambda_inf, eigenvalue of the profile equation
    energy: float
    residual: float                 # relative L2 residual of the elliptic equation
    steady_time: float
    steps: int


# ---------------------------------------------------------------------------
# Gaussian seed
# ---------------------------------------------------------------------------

def seed_coefficients(params: PhysicalParams) -> tuple:
    """(A, B, sigma*) of the Gaussian-family energy sigma^2 A - sigma^(Np) B."""
    m, eps, p, N = params.mass, params.epsilon, params.p, params.dims
    if N == 1:
        A = m * eps / 4.0
    elif N == 2:
        A = m * eps**2 / 2.0
    else:
        A = 3.0 * m * eps**3 / 4.0
    B = m ** (p + 1) * eps**N / (np.pi ** (N * p / 2.0) * (p + 1) ** (1 + N / 2.0))
    sigma = (B * N * p / (2.0 * A)) ** (1.0 / (2.0 - N * p))
    return A, B, sigma


def gaussian_seed(grid: GridSpec, params: PhysicalParams,
                  sigma: Optional[float] = None) -> SpectralField:
    """Centered Gaussian R^sigma with discrete mass exactly m*eps^N.

    Defaults to the energy-minimizing sigma of the Gaussian family.
    """
    m, eps, N = params.mass, params.epsilon, params.dims
    if sigma is None:
        _, _, sigma = seed_coefficients(params)
    r2 = np.zeros(grid.shape)
    for X in grid.coordinate_arrays:
        r2 = r2 + X**2
    vals = (np.sqrt(m) * sigma ** (N / 2.0)
            * np.exp(-(sigma**2 * r2 / eps) / 2.0) * (eps / np.pi) ** (N / 4.0))
    discrete = quadrature(vals**2, grid)
    vals = vals * np.sqrt(params.target_mass / discrete)
    return SpectralField(grid=grid, values=vals.astype(np.complex128), space="real")


# ---------------------------------------------------------------------------
# Functionals
# ---------------------------------------------------------------------------

def _functional_pieces(values: np.ndarray, grid: GridSpec, params: PhysicalParams):
    """(grad2, power, mass) integrals of a real-space field."""
    coeff = sfft.fftn(values, workers=transform_workers())
    grad2 = gradient_sq_integral(coeff, grid)
    mod2 = values.real**2 + values.imag**2
    power = quadrature(mod2 ** (params.p + 1.0), grid)
    mass = quadrature(mod2, grid)
    return grad2, power, mass


def energy(fld: SpectralField, params: PhysicalParams) -> float:
    """Scaled flow energy (eps/2)||grad R||^2 - eps^(-Np/2)/(p+1) * int |R|^(2p+2)."""
    grad2, power, _ = _functional_pieces(fld.values, fld.grid, params)
    return (params.epsilon / 2.0) * grad2 - params.nonlinear_weight / (params.p + 1.0) * power


def lambda_functional(fld: SpectralField, params: PhysicalParams) -> float:
    """Lambda(R): the flow's mass-constraint multiplier; -lambda_hat at steady state."""
    grad2, power, mass = _functional_pieces(fld.values, fld.grid, params)
    if mass <= 0.0:
        raise ValueError("lambda_functional needs a field with nonzero mass")
    return ((params.epsilon / 2.0) * grad2 - params.nonlinear_weight * power) / mass


def flow_rhs_nonlinear(fld: SpectralField, params: PhysicalParams) -> SpectralField:
    """Fourier coefficients of the non-Laplacian flow terms.

    f = transform( eps^(-Np/2) R^(2p+1) + Lambda(R) R ); tiny negative
    undershoots of R are clamped to zero before the fractional power.
    """
    lam = lambda_functional(fld, params)
    clamped = np.maximum(fld.values.real, 0.0)
    nl = params.nonlinear_weight * clamped ** (2.0 * params.p + 1.0) + lam * fld.values
    coeff = sfft.fftn(nl, workers=transform_workers())
    return SpectralField(grid=fld.grid, values=coeff, space="fourier")


# ---------------------------------------------------------------------------
# phi functions and the ERK2 step
# ---------------------------------------------------------------------------

def phi1(z):
    """(e^z - 1)/z with the removable singularity handled; phi1(0) = 1."""
    z = np.asarray(z, dtype=float)
    out = np.ones_like(z)
    nz = z != 0.0
    out[nz] = np.expm1(z[nz]) / z[nz]
    return out if out.ndim else float(out)


_PHI2_TERMS = 18


def phi2(z):
    """(e^z - 1 - z)/z^2; phi2(0) = 1/2.

    Near zero the direct formula cancels catastrophically, so |z| < 1/2
    uses the Taylor series sum_j z^j/(j+2)!.
    """
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    small = np.abs(z) < 0.5
    zs = z[small]
    acc = np.zeros_like(zs)
    for j in range(_PHI2_TERMS - 1, 0, -1):
        acc = (acc + 1.0 / _factorial(j + 2)) * zs
    acc += 0.5
    out[small] = acc
    zb = z[~small]
    out[~small] = (np.expm1(zb) - zb) / zb**2
    return out if out.ndim else float(out)


def _factorial(n: int) -> float:
    out = 1.0
    for i in range(2, n + 1):
        out *= i
    return out


def erk2_step(y, step_k: float, linear_diag, rhs: Callable, t: float = 0.0,
              rhs_at_y=None, norm: Callable = None):
    """One exponential RK2 step for y' = linear_diag * y + rhs(y, t).

    Stage one is the embedded exponential Euler solution; the phi2
    correction lifts it to order two and their difference serves as the
    local error estimate.  Returns (y_next, estimate_norm).

    linear_diag may be a scalar or an array broadcastable with y; rhs is
    called at the stage times (t, t + step_k); rhs_at_y supplies an
    already-computed rhs(y, t); norm defaults to the flat l2 norm.
    """
    A = step_k * np.asarray(linear_diag)
    f1 = rhs(y, t) if rhs_at_y is None else rhs_at_y
    stage = np.exp(A) * y + step_k * phi1(A) * f1
    f2 = rhs(stage, t + step_k)
    correction = step_k * phi2(A) * (f2 - f1)
    y_next = stage + correction
    if norm is None:
        est = float(np.linalg.norm(np.ravel(correction)))
    else:
        est = norm(correction)
    if not np.isfinite(est):
        raise NumericsError("nonfinite values in ERK2 step (blow-up)")
    return y_next, est


# ---------------------------------------------------------------------------
# The flow driver
# ---------------------------------------------------------------------------

def solve_ground_state(grid: GridSpec, params: PhysicalParams,
                       config: FlowConfig = None,
                       callback: Callable = None) -> GroundStateResult:
    """Run the gradient flow from the Gaussian seed to the ground state.

    Steps are accepted when the embedded error estimate is below
    step_tol * ||R||; the step size follows the standard order-2
    controller clipped to [k/4, 4k] and capped at k_max.  Steady state
    requires the energy to stabilize (twice in a row) with the flow
    residual below residual_tol.  callback, when given, is invoked after
    every accepted step as callback(steps, t, energy, mass, flow_residual).
    """
    if config is None:
        config = FlowConfig()
    eps, N = params.epsilon, params.dims
    symbol = -grid.wavenumber_sq
    lin = (eps / 2.0) * symbol
    target = params.target_mass
    norm = lambda coeff: spectral_l2_norm(coeff, grid)

    def pieces(state_hat):
        """(f_hat, lam, energy, mass) at a spectral state."""
        vals = sfft.ifftn(state_hat, workers=transform_workers())
        grad2 = gradient_sq_integral(state_hat, grid)
        mod2 = vals.real**2 + vals.imag**2
        power = quadrature(mod2 ** (params.p + 1.0), grid)
        mass = quadrature(mod2, grid)
        lam = ((eps / 2.0) * grad2 - params.nonlinear_weight * power) / mass
        en = (eps / 2.0) * grad2 - params.nonlinear_weight / (params.p + 1.0) * power
        clamped = np.maximum(vals.real, 0.0)
        nl = params.nonlinear_weight * clamped ** (2.0 * params.p + 1.0) + lam * vals
        f_hat = sfft.fftn(nl, workers=transform_workers())
        return f_hat, lam, en, mass

    seed = gaussian_seed(grid, params)
    state = sfft.fftn(seed.values, workers=transform_workers())
    f1, lam, en_prev, mass = pieces(state)
    k = config.k_init
    t = 0.0
    steps = 0
    stable = 0
    stage_rhs = lambda y, _t: pieces(y)[0]

    while steps < config.max_steps:
        y_next, est = erk2_step(state, k, lin, stage_rhs, rhs_at_y=f1, norm=norm)
        nrm = norm(state)
        if est <= config.step_tol * nrm:
            state = y_next
            t += k
            steps += 1
            if config.renormalize:
                mass_now = float(np.sum(state.real**2 + state.imag**2)
                                 * parseval_weight(grid))
                state = state * np.sqrt(target / mass_now)
            f1, lam, en, mass = pieces(state)
            flow_residual = norm(lin * state + f1) / norm(state)
            if callback is not None:
                callback(steps, t, en, mass, flow_residual)
            if (abs(en - en_prev) <= config.energy_tol * max(1.0, abs(en))
                    and flow_residual <= config.residual_tol):
                stable += 1
                if stable >= 2:
                    en_prev = en
                    break
            else:
                stable = 0
            en_prev = en
        factor = 0.9 * np.sqrt(config.step_tol * nrm / max(est, 1e-300))
        k = min(k * min(4.0, max(0.25, factor)), config.k_max)
    else:
        raise NumericsError(
            f"gradient flow did not reach steady state in {config.max_steps} steps")

    vals = sfft.ifftn(state, workers=transform_workers())
    profile_vals = np.maximum(vals.real, 0.0)
    profile = SpectralField(grid=grid, values=profile_vals.astype(np.complex128),
                            space="real")
    lam_final = lambda_functional(profile, params)
    en_final = energy(profile, params)
    residual = elliptic_residual(profile, lam_final, params)
    return GroundStateResult(profile=profile, params=params,
                             lambda_inf=lam_final, lambda_hat=-lam_final,
                             energy=en_final, residual=residual,
                             steady_time=t, steps=steps)


def elliptic_residual(profile: SpectralField, lam: float,
                      params: PhysicalParams) -> float:
    """Relative L2 residual of the profile equation.

    In the flow's scaled variables the operator reads
    (eps/2) Lap R + eps^(-Np/2) R^(2p+1) + lam R; its relative residual
    equals the one of the unscaled equation (1/2) Lap r + r^(2p+1) -
    lambda_hat r term by term, so this is the residual reported everywhere.
    """
    grid = profile.grid
    coeff = sfft.fftn(profile.values, workers=transform_workers())
    lap = sfft.ifftn(-grid.wavenumber_sq * coeff, workers=transform_workers())
    R = profile.values.real
    op = ((params.epsilon / 2.0) * lap.real
          + params.nonlinear_weight * np.maximum(R, 0.0) ** (2.0 * params.p + 1.0)
          + lam * R)
    return l2_norm(op, grid) / l2_norm(R, grid)


# ---------------------------------------------------------------------------
# Eigenvalue rescaling
# ---------------------------------------------------------------------------

def rescale_profile(profile: SpectralField, lambda_from: float, lambda_to: float,
                    p: float, target_grid: GridSpec = None) -> SpectralField:
    """Map a profile with eigenvalue lambda_from to one with lambda_to.

    The profile family satisfies r2(x) = mu * r1(gamma x) with
    gamma = sqrt(lambda_to/lambda_from) and mu = (lambda_to/lambda_from)^(1/(2p)).
    By default the result lives on the gamma-compressed grid (half widths
    divided by gamma), where the node values are exactly mu * r1: the map
    is then exact on the discretization.  Passing target_grid instead
    evaluates mu * r1(gamma X) there by trigonometric interpolation.
    """
    if lambda_from <= 0 or lambda_to <= 0:
        raise ValueError("rescale_profile needs positive eigenvalues")
    ratio = lambda_to / lambda_from
    gamma = np.sqrt(ratio)
    mu = ratio ** (1.0 / (2.0 * p))
    src = profile.grid
    if target_grid is None:
        new_grid = make_grid(src.dims,
                             [L / gamma for L in src.half_widths],
                             src.points)
        return SpectralField(grid=new_grid, values=mu * profile.values, space="real")
    from .spectral_grid import evaluate_trig_interpolant
    targets = [gamma * target_grid.axis_coordinates(d) for d in range(target_grid.dims)]
    coeff = sfft.fftn(profile.values, workers=transform_workers())
    vals = evaluate_trig_interpolant(coeff, src, targets)
    return SpectralField(grid=target_grid, values=mu * vals, space="real")


# ---------------------------------------------------------------------------
# Profile diagnostics
# ---------------------------------------------------------------------------

def point_symmetry_defect(profile: SpectralField) -> float:
    """max |R(X) - R(-X)| over the grid (center at the origin)."""
    vals = profile.values.real
    flipped = vals
    for d in range(profile.grid.dims):
        flipped = np.roll(np.flip(flipped, axis=d), 1, axis=d)
    return float(np.max(np.abs(vals - flipped)))


def radial_profile(profile: SpectralField, nbins: int = 64) -> tuple:
    """Angular average of R over radius bins: (bin centers, means)."""
    grid = profile.grid
    r2 = np.zeros(grid.shape)
    for X in grid.coordinate_arrays:
        r2 = r2 + X**2
    r = np.sqrt(r2).ravel()
    v = profile.values.real.ravel()
    rmax = min(grid.half_widths)
    edges = np.linspace(0.0, rmax, nbins + 1)
    idx = np.clip(np.digitize(r, edges) - 1, 0, nbins - 1)
    keep = r <= rmax
    sums = np.bincount(idx[keep], weights=v[keep], minlength=nbins)
    counts = np.bincount(idx[keep], minlength=nbins)
    means = np.where(counts > 0, sums / np.maximum(counts, 1), 0.0)
    centers = 0.5 * (edges[:-1] + edges[1:])
    return centers[counts > 0], means[counts > 0]


def half_maximum_radius(profile: SpectralField) -> float:
    """Radius (grid coordinates) where the angular average first drops
    below half its peak; a plain width measure for collision bookkeeping."""
    centers, means = radial_profile(profile, nbins=256)
    peak = means[0]
    below = np.nonzero(means < 0.5 * peak)[0]
    if below.size == 0:
        return float(centers[-1])
    return float(centers[below[0]])
