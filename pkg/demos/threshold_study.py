"""Capture thresholds of the surge equation under a regular wave.

The transition into and out of the capture regime happens at two speeds:
above the lower threshold some initial conditions lock onto the wave, and
above the upper threshold the ship outruns it again.  This script bisects
both thresholds for the bundled ship, then scans the captured fraction of
a standard initial-condition fan across the speed range to show the band.

Runs in roughly one minute (the bisection dominates); writes a PNG and a
JSON report under the output root.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from surgesim import (GainTable, SeawaySpec, classify,
                      equivalent_regular_wave, find_thresholds,
                      load_ship_params, solve_revs, standard_grid)
from surgesim.io import output_root, write_json

DATA = Path(__file__).resolve().parent.parent / "src" / "surgesim" / "data"

ship = load_ship_params(DATA / "synthetic.ship")
spec = SeawaySpec(h13=0.1, t01=1.414, n_components=64)
gain = GainTable.from_csv(DATA / "synthetic_gain.csv")
wave = equivalent_regular_wave(spec, gain)
fn_celerity = ship.froude(wave.celerity)

# 1. bisect both band edges to a bracket width of 2e-3
result = find_thresholds(ship, wave, (0.30, 0.75), tol=2e-3)
print(f"lower threshold Fn {result.fn_lwr:.4f} "
      f"(bracket {result.bracket_lwr}, {result.iterations_lwr} steps)")
print(f"upper threshold Fn {result.fn_ups:.4f} "
      f"(bracket {result.bracket_ups}, {result.iterations_ups} steps)")
print(f"wave celerity sits at Fn {fn_celerity:.4f}, inside the band")

# 2. captured fraction over a coarse scan, for the picture
fns = np.linspace(0.30, 0.75, 13)
fractions = []
for fn in fns:
    op = solve_revs(ship, ship.speed_of_froude(fn))
    portrait = classify(ship, op, wave, standard_grid(wave, 4),
                        horizon=100.0 * wave.period)
    fractions.append(portrait.count("Captured") / 4.0)
    print(f"  Fn {fn:.3f}: captured fraction {fractions[-1]:.2f}")

out = output_root(None)
write_json(out / "demo_thresholds.json", {
    "fn_lwr": result.fn_lwr, "fn_ups": result.fn_ups,
    "bracket_lwr": list(result.bracket_lwr),
    "bracket_ups": list(result.bracket_ups),
    "fn_celerity": fn_celerity,
    "scan_fn": list(map(float, fns)), "scan_captured": fractions})

fig, ax = plt.subplots(figsize=(7, 4))
ax.step(fns, fractions, where="mid", color="tab:blue", label="captured fraction")
ax.axvspan(result.fn_lwr, result.fn_ups, color="tab:red", alpha=0.15,
           label="capture band")
ax.axvline(fn_celerity, color="k", ls="--", lw=0.8, label="celerity Fn")
ax.set_xlabel("nominal Froude number")
ax.set_ylabel("captured fraction of the IC fan")
ax.legend(loc="upper right")
fig.tight_layout()
fig.savefig(out / "demo_thresholds.png", dpi=150)
print(f"wrote {out / 'demo_thresholds.png'}")
