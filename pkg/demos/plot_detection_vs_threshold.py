"""
Detection probability against the sensing threshold
====================================================

One curve per target distance.  The rate threshold is swept from zero,
where every realisation counts as a detection, upward; nearby targets
keep a usable detection probability much longer than distant ones.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import isacnet as I

cfg = I.load_config("fig2-assumed")
print(cfg.description)

thresholds = np.linspace(0, 60, 61)

###############################################################################
# The analytic curves come from one quadrature per point; a few Monte-Carlo
# markers are overlaid as a check.

fig, ax = plt.subplots()
for d in (5, 10, 20, 50):
    scen = I.with_param(cfg, "d", d)
    pd = [I.pd_analytic(I.with_param(scen, "zeta_s", z).sensing, scen.geometry).value
          for z in thresholds]
    line, = ax.plot(thresholds, pd, label=f"D = {d} m")
    marks = thresholds[::10]
    mc = [I.mc_detection(I.with_param(scen, "zeta_s", z).sensing, scen.geometry,
                         n_trials=20_000, master_seed=1).p_hat for z in marks]
    ax.plot(marks, mc, "o", color=line.get_color(), fillstyle="none")

ax.set_xlabel("rate threshold zeta_s (bit/s)")
ax.set_ylabel("P_D")
ax.legend()
fig.savefig("detection_vs_threshold.png", dpi=120)
print("wrote detection_vs_threshold.png")
