"""How fast does the soliton approximation improve as eps shrinks?

Rerun the same off-center release at several eps, recording the worst
weighted-norm distance between the propagated modulus and the ground
state recentered on the classical path.  The theory says this error is
of order eps; on a log-log plot the measured maxima should run parallel
to (or below) a slope-1 reference line.  About two minutes in total.

Run from the repository root:  python3 demos/error_sweep.py
"""
import math
import pathlib
import time

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

import nlsoliton as nls
from nlsoliton.cli_io import write_sweep_summary

out = pathlib.Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

grid = nls.make_grid(2, (10.0, 10.0), (256, 256))
omega = (2.0, 1.0)
center = np.array([-0.5, -0.5])
pot = nls.harmonic_potential(omega)
sweep = [0.16, 0.08, 0.04]

rows = []
for eps in sweep:
    par = nls.PhysicalParams(epsilon=eps, p=0.02, mass=1.0, dims=2)
    t0 = time.perf_counter()
    gs = nls.solve_ground_state(grid, par)
    bump = nls.Bump(mass=1.0, center=center, velocity=np.zeros(2), profile=gs)
    field0 = nls.initial_datum(grid, par, [bump])

    errs = []

    def watch(step, t, field, par=par, gs=gs):
        x = nls.harmonic_analytic(center, np.zeros(2), omega, t)[0]
        errs.append(nls.soliton_error(field, gs, x, par))

    cfg = nls.PropagatorConfig(step_k=1e-3, t_final=1.0, frame_stride=5)
    nls.propagate(field0, pot, par, cfg, observers=[watch])
    worst = max(errs)
    rows.append((eps, worst, worst / eps))
    print(f"eps = {eps:<5} max error = {worst:.4f}  error/eps = "
          f"{worst / eps:.2f}  ({time.perf_counter() - t0:.1f} s)")

write_sweep_summary(rows, out / "sweep_summary.csv")

eps_arr = np.array([r[0] for r in rows])
err_arr = np.array([r[1] for r in rows])
fig, ax = plt.subplots(figsize=(5.2, 4.2))
ax.loglog(eps_arr, err_arr, "o-", label="measured max error")
anchor = err_arr[0] / eps_arr[0]
ax.loglog(eps_arr, anchor * eps_arr, "k--", lw=1, label="slope 1 reference")
ax.set_xlabel("eps")
ax.set_ylabel("max soliton error")
ax.invert_xaxis()
ax.legend()
ax.set_title("error of order eps")
fig.tight_layout()
fig.savefig(out / "error_sweep.png", dpi=130)
print(f"wrote {out / 'error_sweep.png'}")
