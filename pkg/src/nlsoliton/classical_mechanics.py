"""Newton's law for the guiding potential: integrator and harmonic oracles.

The soliton's center is driven by x'' = -grad V(x) in physical coordinates.
For the harmonic trap V(x) = sum_d omega_d^2 x_d^2 every component is an
independent oscillator of angular frequency sqrt(2)*omega_d, so closed-form
trajectories (Lissajous curves) are available alongside the velocity-Verlet
integrator used for general smooth potentials.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np


@dataclass
class Potential:
    """External potential over physical coordinates x.

    kind "harmonic" builds V and grad V from the frequency vector; kind
    "custom-smooth" wraps user callables (V, grad V).
    """

    kind: str
    omega: Optional[np.ndarray] = None
    value: Callable = field(default=None, repr=False)
    gradient: Callable = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind == "harmonic":
            if self.omega is None:
                raise ValueError("harmonic potential needs omega")
            om = np.asarray(self.omega, dtype=float)
            if np.any(om <= 0):
                raise ValueError("all omega components must be positive")
            self.omega = om
            om2 = om**2
            self.value = lambda x: float(np.dot(om2, np.asarray(x, float) ** 2))
            self.gradient = lambda x: 2.0 * om2 * np.asarray(x, float)
        elif self.kind == "custom-smooth":
            if self.value is None or self.gradient is None:
                raise ValueError("custom-smooth potential needs value and gradient callables")
        else:
            raise ValueError(f"unknown potential kind {self.kind!r}")


def harmonic_potential(omega) -> Potential:
    return Potential(kind="harmonic", omega=np.asarray(omega, dtype=float))


def uniform_potential(value: float = 0.0) -> Potential:
    """Constant potential, V(x) = value everywhere; exerts no force."""
    c = float(value)
    return Potential(kind="custom-smooth",
                     value=lambda x: c,
                     gradient=lambda x: np.zeros_like(np.asarray(x, dtype=float)))


@dataclass
class NewtonTrajectory:
    """Sampled classical path: times, positions, velocities, initial energy."""

    times: np.ndarray
    positions: np.ndarray   # shape (len(times), N)
    velocities: np.ndarray  # shape (len(times), N)
    hamiltonian0: float

    def sample(self, t: float) -> tuple:
        """(x, xdot) at time t, linearly interpolated between stored steps."""
        ts = self.times
        if t <= ts[0]:
            return self.positions[0], self.velocities[0]
        if t >= ts[-1]:
            return self.positions[-1], self.velocities[-1]
        i = int(np.searchsorted(ts, t)) - 1
        w = (t - ts[i]) / (ts[i + 1] - ts[i])
        x = (1 - w) * self.positions[i] + w * self.positions[i + 1]
        v = (1 - w) * self.velocities[i] + w * self.velocities[i + 1]
        return x, v


def hamiltonian(x, xdot, potential: Potential) -> float:
    """Conserved energy (1/2)|xdot|^2 + V(x)."""
    xdot = np.asarray(xdot, dtype=float)
    return 0.5 * float(np.dot(xdot, xdot)) + potential.value(x)


def solve_newton(x0, xi0, potential: Potential, t_final: float, h: float) -> NewtonTrajectory:
    """Velocity-Verlet integration of x'' = -grad V(x), sampled every step."""
    if h <= 0:
        raise ValueError("step h must be positive")
    x = np.asarray(x0, dtype=float).copy()
    v = np.asarray(xi0, dtype=float).copy()
    n_steps = int(round(t_final / h))
    times = np.empty(n_steps + 1)
    xs = np.empty((n_steps + 1, x.size))
    vs = np.empty((n_steps + 1, x.size))
    times[0], xs[0], vs[0] = 0.0, x, v
    a = -potential.gradient(x)
    for i in range(n_steps):
        x = x + h * v + 0.5 * h * h * a
        a_new = -potential.gradient(x)
        v = v + 0.5 * h * (a + a_new)
        a = a_new
        if not np.all(np.isfinite(x)):
            raise FloatingPointError(f"Newton state nonfinite at step {i + 1}")
        times[i + 1], xs[i + 1], vs[i + 1] = (i + 1) * h, x, v
    return NewtonTrajectory(times=times, positions=xs, velocities=vs,
                            hamiltonian0=hamiltonian(xs[0], vs[0], potential))


def harmonic_analytic(x0, xi0, omega, t):
    """Closed-form (x, xdot) at time t for the harmonic trap.

    Component d oscillates as
    x_d(t) = x0_d cos(sqrt(2) w_d t) + xi0_d/(sqrt(2) w_d) sin(sqrt(2) w_d t).
    Accepts scalar or array t; arrays give shape t.shape + (N,).
    """
    x0 = np.asarray(x0, dtype=float)
    xi0 = np.asarray(xi0, dtype=float)
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ValueError("all omega components must be positive")
    w = np.sqrt(2.0) * omega
    t_arr = np.asarray(t, dtype=float)
    phase = np.multiply.outer(t_arr, w)
    x = x0 * np.cos(phase) + (xi0 / w) * np.sin(phase)
    xdot = -x0 * w * np.sin(phase) + xi0 * np.cos(phase)
    return x, xdot


def lissajous_period(omega, max_denominator: int = 1000) -> Optional[float]:
    """Common period of the two trap axes, or None when none exists.

    The path closes iff omega_1/omega_2 is rational; for the reduced
    fraction p/q the period is 2*pi*q / (sqrt(2)*omega_2).  Ratios not
    within 1e-12 of a fraction with denominator <= max_denominator are
    treated as irrational (ergodic path).
    """
    omega = np.asarray(omega, dtype=float)
    if omega.size != 2:
        raise ValueError("lissajous_period expects two frequencies")
    ratio = omega[0] / omega[1]
    frac = Fraction(ratio).limit_denominator(max_denominator)
    if abs(float(frac) - ratio) > 1e-12 * max(1.0, abs(ratio)):
        return None
    return 2.0 * np.pi * frac.denominator / (np.sqrt(2.0) * omega[1])


def write_trajectory_csv(trajectory: NewtonTrajectory, path) -> None:
    """CSV export: t, x_1..x_N, xdot_1..xdot_N with 17-significant-digit floats."""
    n = trajectory.positions.shape[1]
    header = ["t"] + [f"x_{d + 1}" for d in range(n)] + [f"xdot_{d + 1}" for d in range(n)]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for t, x, v in zip(trajectory.times, trajectory.positions, trajectory.velocities):
            writer.writerow([f"{val:.17g}" for val in (t, *x, *v)])
