"""
Closed form against simulation
==============================

Runs both engines over a user-count grid and prints the distance between
them in Wilson standard errors.  Simulated realisations use counter-based
streams, so the numbers below do not change with the worker count.
"""

from dataclasses import replace

import isacnet as I

cfg = I.load_config("table1-defaults")
geo = cfg.geometry

print(f"{'n':>4} {'metric':>6} {'analytic':>9} {'mc':>9} {'z':>6}")
for n in (10, 20, 30, 40, 50):
    sp = replace(cfg.sensing, n_interferers=n)
    cp = replace(cfg.comm, m_transmitters=n)
    for name, exact, est in (
        ("P_D", I.pd_analytic(sp, geo).value, I.mc_detection(sp, geo, workers=4)),
        ("P_C", I.pc_analytic(cp, geo).value, I.mc_coverage(cp, geo, workers=4)),
    ):
        z = abs(exact - est.p_hat) / est.std_err
        print(f"{n:>4} {name:>6} {exact:9.5f} {est.p_hat:9.5f} {z:6.2f}")
