"""
Trade-off under a bandwidth budget
==================================

Frequency-division split of B = 20 MHz.  Moving bandwidth to sensing
lowers its noise floor but also raises its SINR threshold, so P_D gains
slowly, while coverage collapses only once the communication band gets
very narrow.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

import isacnet as I

cfg = I.load_config("fig5-assumed")
budget = I.Budget.from_config("bandwidth", cfg)

analytic = I.sweep(budget, cfg)
coarse = I.Budget("bandwidth", budget.total, 11)
simulated = I.sweep(coarse, cfg, engine="montecarlo", n_trials=20_000)

print("endpoints: P_C(B_c = B) = %.3f, P_D(B_s = B) = %.3f"
      % (analytic.points[0].p_c, analytic.points[-1].p_d))

fig, ax = plt.subplots()
rho = [p.rho for p in analytic.points]
ax.plot(rho, [p.p_d for p in analytic.points], label="P_D analytic")
ax.plot(rho, [p.p_c for p in analytic.points], label="P_C analytic")
ax.plot([p.rho for p in simulated.points], [p.p_d for p in simulated.points], "o", fillstyle="none")
ax.plot([p.rho for p in simulated.points], [p.p_c for p in simulated.points], "s", fillstyle="none")
ax.set_xlabel("B_s / B")
ax.legend()
fig.savefig("bandwidth_tradeoff.png", dpi=120)
