"""Classical center-of-mass paths in anisotropic harmonic traps.

In the semiclassical limit the soliton's center obeys plain Newtonian
mechanics, so the geometry of the trap decides everything: each axis of
V(x) = sum omega_d^2 x_d^2 oscillates at sqrt(2) omega_d, a rational
frequency ratio closes the Lissajous figure, an irrational one fills a
rectangle ergodically.  This demo only integrates x'' = -grad V; no PDE.

Run from the repository root:  python3 demos/lissajous_trap.py
"""
import pathlib

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

import nlsoliton as nls

out = pathlib.Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

x0 = np.array([-3.0, -3.0])
v0 = np.zeros(2)
cases = [((1.4, 1.0), "rational 1.4 : 1"),
         ((np.sqrt(2.0), 1.0), "irrational sqrt(2) : 1")]

fig, axes = plt.subplots(1, 2, figsize=(11, 5.2), sharex=True, sharey=True)
for ax, (omega, label) in zip(axes, cases):
    period = nls.lissajous_period(omega)
    horizon = period if period is not None else 60.0
    traj = nls.solve_newton(x0, v0, nls.harmonic_potential(omega), horizon, 1e-3)

    # cross-check one sample against the closed form
    mid = len(traj.times) // 2
    exact, _ = nls.harmonic_analytic(x0, v0, omega, traj.times[mid])
    gap = np.abs(traj.positions[mid] - exact).max()

    ax.plot(traj.positions[:, 0], traj.positions[:, 1], lw=0.7)
    ax.plot(*x0, "ko", ms=5)
    ax.set_title(f"{label}\nperiod = "
                 + (f"{period:.4f}" if period else "none (ergodic)"))
    ax.set_xlabel("x_1")
    ax.set_aspect("equal")

    closing = np.abs(traj.positions[-1] - x0).max() if period else np.nan
    print(f"{label}: integrator vs closed form {gap:.2e}; "
          f"return gap after one period "
          + (f"{closing:.2e}" if period else "n/a"))
    nls.write_trajectory_csv(traj, out / f"trajectory_{omega[0]:.3f}.csv")

axes[0].set_ylabel("x_2")
fig.tight_layout()
fig.savefig(out / "lissajous_trap.png", dpi=130)
print(f"wrote {out / 'lissajous_trap.png'}")
