"""White-noise reduction of the seaway and the closed-form velocity density.

The irregular surge force, collapsed onto the peak wavenumber, acts like
two independent white noises modulating cos(k_WP x) and sin(k_WP x).  For
that reduced system the stationary density of the velocity perturbation
is an explicit exponential of the integrated drift polynomial.  This
script calibrates the noise intensity from the synthesized seaway,
simulates the white-noise ensemble and overlays its histogram on the
closed form.

Runs in about twenty seconds; writes a PNG and the density CSV.
"""

from dataclasses import replace
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from surgesim import (SurgeState, calibrate_noise, compare_to_empirical,
                      load_campaign, load_ship_params, pool_samples,
                      simulate_white_ensemble, solve_revs, stationary_pdf,
                      synthesize)
from surgesim.io import output_root, write_pdf_csv

DATA = Path(__file__).resolve().parent.parent / "src" / "surgesim" / "data"
FN = 0.45

ship = load_ship_params(DATA / "synthetic.ship")
cfg = load_campaign(DATA / "example_campaign.cfg")
op = solve_revs(ship, ship.speed_of_froude(FN))

# 1. calibrate the white-noise intensity from one seaway realization:
#    D^2 is read off the force spectrum at the peak frequency
reference = synthesize(replace(cfg.spec, rng_seed=cfg.seed), cfg.force_model)
noise = calibrate_noise(reference, method=cfg.noise_method)
print(f"calibrated D^2 = {noise.d_squared:.1f} ({noise.method}), "
      f"split evenly over the two phases: D1 = D2 = {noise.d1:.3f}")

# 2. the closed-form stationary density at this operating point
spdf = stationary_pdf(ship, op, noise)
print(f"Fn {FN}: u_bar {op.u_bar:.3f} m/s, linearized sigma "
      f"{spdf.sigma_lin:.4f} m/s, mode {spdf.mode:.4f} m/s")

# 3. Monte-Carlo check: an ensemble of white-noise paths
trajs = simulate_white_ensemble(ship, op, noise, reference.k_wp,
                                SurgeState(), horizon=500.0, dt=0.005,
                                seed=cfg.seed, n_paths=32, record_stride=20)
samples = pool_samples(trajs, 50.0)
report = compare_to_empirical(spdf, samples)
print(f"{report.n_samples} pooled samples: L1 {report.l1_distance:.4f}, "
      f"KS {report.ks_statistic:.4f} "
      f"(1% critical {report.ks_critical_1pct:.4f})")
print("note: samples 0.1 s apart are strongly correlated, so the i.i.d. "
      "critical value is only a scale reference here")
print("  moment        empirical      closed form")
for name, emp, ana in report.moments:
    print(f"  {name:<12} {emp:12.6f}   {ana:12.6f}")

# 4. overlay
out = output_root(None)
write_pdf_csv(out / "demo_density.csv", spdf)
centers = 0.5 * (report.bin_edges[:-1] + report.bin_edges[1:])
grid = np.linspace(spdf.support[0], spdf.support[1], 801)
fig, ax = plt.subplots(figsize=(7, 4))
ax.bar(centers, report.empirical_density, width=np.diff(report.bin_edges),
       color="tab:blue", alpha=0.45, label="white-noise ensemble")
ax.plot(grid, spdf.pdf(grid), color="tab:red", lw=1.5, label="closed form")
ax.set_xlabel("surge velocity perturbation (m/s)")
ax.set_ylabel("probability density")
ax.legend(loc="upper left")
fig.tight_layout()
fig.savefig(out / "demo_density.png", dpi=150)
print(f"wrote {out / 'demo_density.png'}")
