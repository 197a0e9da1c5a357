"""Spectral toolkit for semiclassical NLS soliton dynamics.

Ground states of the focusing nonlinear Schrodinger equation are computed
by a normalized parabolic gradient flow driven by an adaptive exponential
integrator; the time-dependent equation with an external trap is advanced
by Strang-split Fourier stepping; analysis helpers compare the evolved
bump against the classical point trajectory in a semiclassically weighted
energy norm.
"""

from .spectral_grid import (GridSpec, SpectralField, LaplacianSymbol,
                            NumericsError, make_grid, laplacian_symbol,
                            forward_transform, inverse_transform, quadrature,
                            l2_norm, parseval_weight, spectral_l2_norm,
                            gradient_sq_integral, evaluate_trig_interpolant,
                            transform_workers)
from .classical_mechanics import (Potential, NewtonTrajectory, harmonic_potential,
                                  uniform_potential, hamiltonian, solve_newton,
                                  harmonic_analytic, lissajous_period,
                                  write_trajectory_csv)
from .ground_state import (PhysicalParams, FlowConfig, GroundStateResult,
                           seed_coefficients, gaussian_seed, energy,
                           lambda_functional, flow_rhs_nonlinear, phi1, phi2,
                           erk2_step, solve_ground_state, elliptic_residual,
                           rescale_profile, point_symmetry_defect,
                           radial_profile, half_maximum_radius)
from .nls_propagator import (Bump, PropagatorConfig, initial_datum,
                             kinetic_half_step, potential_nonlinear_step,
                             strang_step, propagate, potential_samples,
                             nonlinear_coefficient, field_mass, place_profile)
from .analysis import (DiagnosticsSeries, DiagnosticsRecorder, h_eps_norm,
                       center_of_mass, full_energy, soliton_error,
                       translated_profile)
from .cli_io import (RunConfig, BumpSpec, FrameFile, ConfigError,
                     FrameFormatError, parse_config, apply_overrides,
                     write_frame, read_frame, write_diagnostics,
                     write_sweep_summary, main, console_entry)

__version__ = "0.1.0"

__all__ = [
    "GridSpec", "SpectralField", "LaplacianSymbol", "NumericsError",
    "make_grid", "laplacian_symbol", "forward_transform", "inverse_transform",
    "quadrature", "l2_norm", "parseval_weight", "spectral_l2_norm",
    "gradient_sq_integral", "evaluate_trig_interpolant", "transform_workers",
    "Potential", "NewtonTrajectory", "harmonic_potential", "uniform_potential",
    "hamiltonian", "solve_newton", "harmonic_analytic", "lissajous_period",
    "write_trajectory_csv",
    "PhysicalParams", "FlowConfig", "GroundStateResult", "seed_coefficients",
    "gaussian_seed", "energy", "lambda_functional", "flow_rhs_nonlinear",
    "phi1", "phi2", "erk2_step", "solve_ground_state", "elliptic_residual",
    "rescale_profile", "point_symmetry_defect", "radial_profile",
    "half_maximum_radius",
    "Bump", "PropagatorConfig", "initial_datum", "kinetic_half_step",
    "potential_nonlinear_step", "strang_step", "propagate",
    "potential_samples", "nonlinear_coefficient", "field_mass",
    "place_profile",
    "DiagnosticsSeries", "DiagnosticsRecorder", "h_eps_norm",
    "center_of_mass", "full_energy", "soliton_error", "translated_profile",
    "RunConfig", "BumpSpec", "FrameFile", "ConfigError", "FrameFormatError",
    "parse_config", "apply_overrides", "write_frame", "read_frame",
    "write_diagnostics", "write_sweep_summary", "main", "console_entry",
    "__version__",
]
