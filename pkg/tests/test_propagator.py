"""Strang splitting: exactness cases, invariants, order, datum assembly."""
import numpy as np
import pytest

import nlsoliton as nls


@pytest.fixture(scope="module")
def trap():
    return nls.harmonic_potential([1.4, 1.0])


def gaussian_field(grid, width=1.0, center=(0.0, 0.0), phase_vec=None):
    X, Y = grid.coordinate_arrays
    vals = np.exp(-(((X - center[0]) ** 2 + (Y - center[1]) ** 2)
                    / (2.0 * width**2))).astype(complex)
    if phase_vec is not None:
        vals = vals * np.exp(1j * (phase_vec[0] * X + phase_vec[1] * Y))
    return nls.SpectralField(grid=grid, values=vals, space="real")


def test_propagator_config_validation():
    with pytest.raises(ValueError):
        nls.PropagatorConfig(step_k=0.0, t_final=1.0)
    with pytest.raises(ValueError):
        nls.PropagatorConfig(step_k=1e-3, t_final=-1.0)
    with pytest.raises(ValueError):
        nls.PropagatorConfig(step_k=0.5, t_final=0.1)
    with pytest.raises(ValueError):
        nls.PropagatorConfig(step_k=1e-3, t_final=1.0, frame_stride=0)
    cfg = nls.PropagatorConfig(step_k=1e-3, t_final=0.0)
    assert cfg.t_final == 0.0


def test_potential_samples_harmonic_is_epsilon_free(trap):
    grid = nls.make_grid(2, (3.0, 3.0), (32, 32))
    for eps in (0.1, 0.5):
        par = nls.PhysicalParams(epsilon=eps, p=0.5, mass=1.0, dims=2)
        W = nls.potential_samples(grid, trap, par)
        X, Y = grid.coordinate_arrays
        assert np.allclose(W, 1.4**2 * X**2 + 1.0 * Y**2, rtol=1e-14)


def test_potential_samples_custom_matches_scaling():
    grid = nls.make_grid(2, (2.0, 2.0), (16, 16))
    par = nls.PhysicalParams(epsilon=0.25, p=0.5, mass=1.0, dims=2)
    pot = nls.Potential(kind="custom-smooth",
                        value=lambda x: float(x[0] + 2.0 * x[1] ** 2),
                        gradient=lambda x: np.array([1.0, 4.0 * x[1]]))
    W = nls.potential_samples(grid, pot, par)
    X, Y = grid.coordinate_arrays
    root = np.sqrt(0.25)
    expected = (root * X + 2.0 * (root * Y) ** 2) / 0.25
    assert np.allclose(W, expected, rtol=1e-13)


def test_kinetic_half_step_space_check():
    grid = nls.make_grid(2, (2.0, 2.0), (16, 16))
    fld = gaussian_field(grid)
    with pytest.raises(ValueError):
        nls.kinetic_half_step(fld, 1e-2)
    hat = nls.forward_transform(fld)
    with pytest.raises(ValueError):
        nls.potential_nonlinear_step(hat, 1e-2, nls.uniform_potential(),
                                     nls.PhysicalParams(epsilon=0.5, p=0.5,
                                                        mass=1.0, dims=2))


def test_pointwise_step_preserves_modulus(trap):
    grid = nls.make_grid(2, (4.0, 4.0), (32, 32))
    par = nls.PhysicalParams(epsilon=0.5, p=0.5, mass=1.0, dims=2)
    fld = gaussian_field(grid, phase_vec=(1.0, -2.0))
    out = nls.potential_nonlinear_step(fld, 0.05, trap, par)
    assert np.abs(np.abs(out.values) - np.abs(fld.values)).max() < 1e-14


def test_plane_wave_evolves_by_exact_phase():
    # single Fourier mode in a constant potential: every substep is exact
    grid = nls.make_grid(2, (4.0, 4.0), (32, 32))
    par = nls.PhysicalParams(epsilon=0.5, p=0.5, mass=1.0, dims=2)
    pot = nls.uniform_potential(0.7)
    amp = 0.6
    kap = (grid.axis_wavenumbers(0)[3], grid.axis_wavenumbers(1)[5])
    X, Y = grid.coordinate_arrays
    vals = amp * np.exp(1j * (kap[0] * X + kap[1] * Y))
    fld = nls.SpectralField(grid=grid, values=vals, space="real")
    cfg = nls.PropagatorConfig(step_k=1e-2, t_final=0.5)
    out = nls.propagate(fld, pot, par, cfg)
    c = nls.nonlinear_coefficient(par)
    omega = 0.5 * (kap[0] ** 2 + kap[1] ** 2) + 0.7 / 0.5 - c * amp ** (2 * 0.5)
    exact = vals * np.exp(-1j * omega * 0.5)
    assert np.abs(out.values - exact).max() < 1e-11


def test_strang_step_equals_propagate_single_step(trap):
    grid = nls.make_grid(2, (4.0, 4.0), (32, 32))
    par = nls.PhysicalParams(epsilon=0.5, p=0.5, mass=1.0, dims=2)
    fld = gaussian_field(grid)
    k = 2e-3
    a = nls.strang_step(fld, k, trap, par)
    cfg = nls.PropagatorConfig(step_k=k, t_final=k)
    b = nls.propagate(fld, trap, par, cfg)
    assert np.abs(a.values - b.values).max() < 1e-14


def test_mass_invariant_per_step_and_long_run(trap):
    grid = nls.make_grid(2, (6.0, 6.0), (64, 64))
    par = nls.PhysicalParams(epsilon=0.5, p=0.5, mass=1.0, dims=2)
    fld = gaussian_field(grid, phase_vec=(0.5, 0.0))
    m0 = nls.field_mass(fld)
    one = nls.strang_step(fld, 1e-2, trap, par)
    assert abs(nls.field_mass(one) - m0) / m0 < 1e-10
    cfg = nls.PropagatorConfig(step_k=1e-3, t_final=1.0)
    out = nls.propagate(fld, trap, par, cfg)
    assert abs(nls.field_mass(out) - m0) / m0 < 1e-11


def test_time_reversibility(trap):
    # conjugation reverses time for this equation; Strang honors it exactly
    grid = nls.make_grid(2, (6.0, 6.0), (64, 64))
    par = nls.PhysicalParams(epsilon=0.5, p=0.5, mass=1.0, dims=2)
    fld = gaussian_field(grid, phase_vec=(1.0, -0.5))
    cfg = nls.PropagatorConfig(step_k=2e-3, t_final=0.1)
    fwd = nls.propagate(fld, trap, par, cfg)
    mirrored = nls.SpectralField(grid=grid, values=np.conj(fwd.values),
                                 space="real")
    back = nls.propagate(mirrored, trap, par, cfg)
    recovered = np.conj(back.values)
    assert np.abs(recovered - fld.values).max() < 1e-9


def test_strang_second_order(trap, quick_gs, quick_params):
    grid = quick_gs.profile.grid
    bump = nls.Bump(mass=1.0, center=np.array([0.2, -0.1]),
                    velocity=np.array([0.3, 0.0]), profile=quick_gs)
    fld = nls.initial_datum(grid, quick_params, [bump])
    T = 0.1
    ks = (T / 25.0, T / 50.0)
    ref = nls.propagate(fld, trap, quick_params,
                        nls.PropagatorConfig(step_k=ks[-1] / 16.0, t_final=T))
    errs = []
    for k in ks:
        out = nls.propagate(fld, trap, quick_params,
                            nls.PropagatorConfig(step_k=k, t_final=T))
        errs.append(np.abs(out.values - ref.values).max())
    order = np.log2(errs[0] / errs[1])
    assert 1.8 <= order <= 2.2


def test_energy_drift_scales_like_k_squared(trap, quick_gs, quick_params):
    grid = quick_gs.profile.grid
    bump = nls.Bump(mass=1.0, center=np.array([0.2, -0.1]),
                    velocity=np.zeros(2), profile=quick_gs)
    fld = nls.initial_datum(grid, quick_params, [bump])
    E0 = nls.full_energy(fld, trap, quick_params)

    def drift(k):
        out = nls.propagate(fld, trap, quick_params,
                            nls.PropagatorConfig(step_k=k, t_final=0.2))
        return abs(nls.full_energy(out, trap, quick_params) - E0)

    d1, d2 = drift(4e-3), drift(2e-3)
    assert d1 / max(d2, 1e-300) == pytest.approx(4.0, abs=1.5)
    assert d1 < 1e-4 * max(1.0, abs(E0))


def test_propagate_zero_t_final_emits_one_frame(trap, quick_params):
    grid = nls.make_grid(2, (4.0, 4.0), (32, 32))
    fld = gaussian_field(grid)
    seen = []
    cfg = nls.PropagatorConfig(step_k=1e-3, t_final=0.0)
    out = nls.propagate(fld, trap, quick_params, cfg,
                        observers=[lambda s, t, f: seen.append((s, t))])
    assert seen == [(0, 0.0)]
    assert out.values is fld.values


def test_propagate_partial_final_step(trap, quick_params):
    grid = nls.make_grid(2, (4.0, 4.0), (32, 32))
    fld = gaussian_field(grid)
    k, T = 5e-3, 0.0123
    seen = []
    cfg = nls.PropagatorConfig(step_k=k, t_final=T)
    out = nls.propagate(fld, trap, quick_params, cfg,
                        observers=[lambda s, t, f: seen.append((s, t))])
    assert seen[-1] == (3, T)
    # compose the same steps by hand: two full, one short
    manual = fld
    for kk in (k, k, T - 2 * k):
        manual = nls.strang_step(manual, kk, trap, quick_params)
    assert np.abs(out.values - manual.values).max() < 1e-12


def test_propagate_frame_stride_cadence(trap, quick_params):
    grid = nls.make_grid(2, (4.0, 4.0), (32, 32))
    fld = gaussian_field(grid)
    seen = []
    cfg = nls.PropagatorConfig(step_k=1e-3, t_final=7e-3, frame_stride=3)
    nls.propagate(fld, trap, quick_params, cfg,
                  observers=[lambda s, t, f: seen.append(s)])
    assert seen == [0, 3, 6, 7]


def test_propagate_observer_gets_real_space_field(trap, quick_params):
    grid = nls.make_grid(2, (4.0, 4.0), (32, 32))
    fld = gaussian_field(grid)
    spaces = []
    cfg = nls.PropagatorConfig(step_k=1e-3, t_final=2e-3)
    nls.propagate(fld, trap, quick_params, cfg,
                  observers=[lambda s, t, f: spaces.append(f.space)])
    assert spaces == ["real"] * 3


def test_nonfinite_field_raises_numerics_error(quick_params):
    grid = nls.make_grid(2, (4.0, 4.0), (32, 32))
    fld = gaussian_field(grid)
    nan_pot = nls.Potential(kind="custom-smooth",
                            value=lambda x: float("nan"),
                            gradient=lambda x: np.zeros(2))
    cfg = nls.PropagatorConfig(step_k=1e-3, t_final=2e-3)
    with pytest.raises(nls.NumericsError):
        nls.propagate(fld, nan_pot, quick_params, cfg)


# ---------------------------------------------------------------------------
# Initial datum assembly

def test_initial_datum_single_bump_mass_and_phase(quick_gs, quick_params):
    grid = quick_gs.profile.grid
    centered = nls.Bump(mass=1.0, center=np.zeros(2), velocity=np.zeros(2),
                        profile=quick_gs)
    exact = nls.initial_datum(grid, quick_params, [centered])
    assert nls.field_mass(exact) == pytest.approx(quick_params.target_mass,
                                                  rel=1e-12)
    vel = np.array([0.7, -0.2])
    bump = nls.Bump(mass=1.0, center=np.array([0.5, 0.5]), velocity=vel,
                    profile=quick_gs)
    fld = nls.initial_datum(grid, quick_params, [bump])
    # shifting truncates the tail band at the seam instead of wrapping it
    assert nls.field_mass(fld) == pytest.approx(quick_params.target_mass,
                                                rel=1e-3)
    # the velocity boost is a pure phase: modulus equals the shifted profile
    still = nls.Bump(mass=1.0, center=np.array([0.5, 0.5]),
                     velocity=np.zeros(2), profile=quick_gs)
    ref = nls.initial_datum(grid, quick_params, [still])
    assert np.abs(np.abs(fld.values) - np.abs(ref.values)).max() < 1e-12


def test_initial_datum_two_bumps_mass_additive(quick_gs, quick_params):
    grid = nls.make_grid(2, (24.0, 24.0), (128, 128))
    b1 = nls.Bump(mass=1.0, center=np.array([-5.0, -5.0]),
                  velocity=np.zeros(2), profile=quick_gs)
    b2 = nls.Bump(mass=1.0, center=np.array([5.0, 5.0]),
                  velocity=np.array([1.0, 0.0]), profile=quick_gs)
    fld = nls.initial_datum(grid, quick_params, [b1, b2])
    assert nls.field_mass(fld) == pytest.approx(2 * quick_params.target_mass,
                                                rel=1e-3)


def test_cross_grid_placement_has_no_periodic_images(quick_gs, quick_params):
    # a profile from an L=8 source placed on an L=16 grid must appear once
    grid = nls.make_grid(2, (16.0, 16.0), (128, 128))
    b1 = nls.Bump(mass=1.0, center=np.array([-3.0, -3.0]),
                  velocity=np.zeros(2), profile=quick_gs)
    fld = nls.initial_datum(grid, quick_params, [b1])
    assert nls.field_mass(fld) == pytest.approx(quick_params.target_mass,
                                                rel=1e-3)
    X, Y = grid.coordinate_arrays
    image_zone = (np.abs(X - 10.0) < 2.0) & (np.abs(Y + 6.0) < 2.0)
    assert np.abs(fld.values[image_zone]).max() < 1e-10


def test_initial_datum_center_outside_raises(quick_gs, quick_params):
    grid = quick_gs.profile.grid    # half widths 8
    far = nls.Bump(mass=1.0, center=np.array([4.1, 0.0]),
                   velocity=np.zeros(2), profile=quick_gs)
    # X0 = 4.1/sqrt(0.25) = 8.2 > 8
    with pytest.raises(ValueError, match="outside"):
        nls.initial_datum(grid, quick_params, [far])


def test_initial_datum_overlap_warns(quick_gs, quick_params):
    grid = nls.make_grid(2, (16.0, 16.0), (128, 128))
    b1 = nls.Bump(mass=1.0, center=np.array([-0.4, 0.0]),
                  velocity=np.zeros(2), profile=quick_gs)
    b2 = nls.Bump(mass=1.0, center=np.array([0.4, 0.0]),
                  velocity=np.zeros(2), profile=quick_gs)
    with pytest.warns(UserWarning, match="overlap"):
        nls.initial_datum(grid, quick_params, [b1, b2])


def test_initial_datum_bump_count_limits(quick_gs, quick_params):
    grid = quick_gs.profile.grid
    with pytest.raises(ValueError):
        nls.initial_datum(grid, quick_params, [])
    b = nls.Bump(mass=1.0, center=np.zeros(2), velocity=np.zeros(2),
                 profile=quick_gs)
    with pytest.raises(ValueError):
        nls.initial_datum(grid, quick_params, [b, b, b])


def test_initial_datum_profile_params_mismatch(quick_gs):
    grid = quick_gs.profile.grid
    other = nls.PhysicalParams(epsilon=0.5, p=0.5, mass=1.0, dims=2)
    b = nls.Bump(mass=1.0, center=np.zeros(2), velocity=np.zeros(2),
                 profile=quick_gs)
    with pytest.raises(ValueError, match="different"):
        nls.initial_datum(grid, other, [b])


def test_bump_mass_must_match_profile(quick_gs, quick_params):
    grid = quick_gs.profile.grid
    b = nls.Bump(mass=2.0, center=np.zeros(2), velocity=np.zeros(2),
                 profile=quick_gs)
    with pytest.raises(ValueError, match="mass"):
        nls.initial_datum(grid, quick_params, [b])


def test_bump_validation():
    with pytest.raises(ValueError):
        nls.Bump(mass=0.0, center=np.zeros(2), velocity=np.zeros(2),
                 profile=None)
