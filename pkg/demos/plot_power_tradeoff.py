"""
Trade-off under a power budget
==============================

Power ``p_t`` is split as ``p_s = rho * p_t`` and ``p_c = (1 - rho) * p_t``.
Each curve is the set of reachable (P_D, P_C) pairs for one user count;
adding users pulls the whole frontier towards the origin.
"""

import matplotlib

matplotlib.use("Agg")
from dataclasses import replace

import matplotlib.pyplot as plt

import isacnet as I

cfg = I.load_config("fig4-assumed")
budget = I.Budget.from_config("power", cfg)

fig, ax = plt.subplots()
for n in (10, 30, 50):
    scen = replace(cfg, sensing=replace(cfg.sensing, n_interferers=n),
                   comm=replace(cfg.comm, m_transmitters=n))
    frontier = I.sweep(budget, scen)
    front = frontier.pareto()
    ax.plot([p.p_d for p in frontier.points], [p.p_c for p in frontier.points], label=f"n = m = {n}")
    print(f"n={n}: {len(front)} non-dominated points, best P_D {front[-1].p_d:.3f}, "
          f"best P_C {front[0].p_c:.3f}")

ax.set_xlabel("P_D")
ax.set_ylabel("P_C")
ax.legend()
fig.savefig("power_tradeoff.png", dpi=120)
