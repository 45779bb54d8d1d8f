"""Exit criteria.  Each test records one PASS/FAIL line, printed in the
pytest terminal summary under "acceptance criteria"."""
import io
import itertools
import time
from contextlib import redirect_stdout, redirect_stderr
from dataclasses import replace

import mpmath as mp
import numpy as np
import pytest

import isacnet as I
from isacnet import cli
from isacnet.analytic import inner_comm_factor, inner_sensing_factor, interference_factor
from isacnet.model import CommParams, Geometry, SensingParams

from conftest import ACCEPTANCE

R = 500.0
GEO = Geometry(R)


def record(key, ok, detail):
    ACCEPTANCE[key] = (bool(ok), detail)
    assert ok, detail


def table1_sensing(**kw):
    base = dict(p_s=1.0, g_t=10.0, g_r=10.0, lambda_w=0.0833, sigma_bar=10.0, d=20.0, alpha=2.0,
                b_s=2e7, loss_l=10.0, t_pulse=1e-6, duty=0.01, n_interferers=10, zeta_s=1000.0)
    base.update(kw)
    return SensingParams(**base)


def table1_comm(**kw):
    base = dict(p_c=1.0, g_t=10.0, g_r=10.0, alpha=2.0, b_c=2e7, loss_l=10.0,
                m_transmitters=10, zeta_c=1e5)
    base.update(kw)
    return CommParams(**base)


def test_1_trivial_limits():
    t0 = time.perf_counter()
    worst = 0.0
    zeros = []
    for name in I.available_scenarios():
        cfg = I.load_config(name)
        sp, cp = cfg.sensing, cfg.comm
        worst = max(worst,
                    abs(I.pd_analytic(replace(sp, zeta_s=0.0), GEO).value - 1.0),
                    abs(I.pc_analytic(replace(cp, zeta_c=0.0), GEO).value - 1.0))
        zeros += [I.pd_analytic(replace(sp, p_s=0.0), GEO).value,
                  I.pd_analytic(replace(sp, b_s=0.0), GEO).value,
                  I.pc_analytic(replace(cp, p_c=0.0), GEO).value,
                  I.pc_analytic(replace(cp, b_c=0.0), GEO).value]
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and all(z == 0.0 for z in zeros) and elapsed < 1.0
    record("1 trivial limits", ok,
           f"max |P-1| at zero threshold = {worst:.1e}, zero-resource values all 0, {elapsed:.3f}s")


def _closed_form(c):
    with mp.workdps(50):
        c, r2 = mp.mpf(c), mp.mpf(R) ** 2
        return float(2 / r2 * (r2 / 2 - c / 2 * mp.log1p(r2 / c)))


def test_2_closed_form_quadrature():
    t0 = time.perf_counter()
    worst = 0.0
    for c in np.logspace(-6, 6, 49) * R ** 2:
        expected = _closed_form(c)
        # sensing: choose gamma_s so that 4 pi gamma_s D^4 / sigma_bar == c
        sp = table1_sensing()
        gamma_s = c * sp.sigma_bar / (4 * np.pi * sp.d ** 4)
        ds = replace(I.derive_sensing(sp), gamma_s=gamma_s)
        s_val = inner_sensing_factor(ds, sp, GEO)
        # comm: gamma_c * r0^2 == c at r0 = R/2
        r0 = R / 2
        dc = replace(I.derive_comm(table1_comm()), gamma_c=c / r0 ** 2)
        c_val = inner_comm_factor(dc, r0, GEO, 2.0)
        for v in (s_val, c_val):
            worst = max(worst, abs(v - expected) / expected)
    elapsed = time.perf_counter() - t0
    record("2 closed-form quadrature", worst <= 1e-8 and elapsed < 1.0,
           f"max relative error {worst:.2e} over c/R^2 in [1e-6, 1e6], {elapsed:.3f}s")


THRESHOLDS = {2.0: (1000.0, 1e5), 3.0: (500.0, 3e4)}


def test_3_oracle_equivalence():
    t0 = time.perf_counter()
    checks = []
    cov_cache = {}
    grid = list(itertools.product((5.0, 20.0, 50.0), (0.01, 0.1, 1.0), (10, 50), (2.0, 3.0),
                                  (5e6, 2e7)))
    for i, (d, p, count, alpha, bw) in enumerate(grid):
        zs, zc = THRESHOLDS[alpha]
        sp = table1_sensing(d=d, p_s=p, n_interferers=count, alpha=alpha, b_s=bw, zeta_s=zs)
        cp = table1_comm(p_c=p, m_transmitters=count, alpha=alpha, b_c=bw, zeta_c=zc)
        est = I.mc_detection(sp, GEO, n_trials=100_000, master_seed=1000 + i)
        checks.append(("P_D", (d, p, count, alpha, bw), I.pd_analytic(sp, GEO).value, est))
        key = (p, count, alpha, bw)
        if key not in cov_cache:
            est = I.mc_coverage(cp, GEO, n_trials=100_000, master_seed=5000 + i)
            cov_cache[key] = est
            checks.append(("P_C", key, I.pc_analytic(cp, GEO).value, est))
    elapsed = time.perf_counter() - t0
    z = [abs(a - e.p_hat) / e.std_err for _, _, a, e in checks]
    excursions = [(m, k, round(zz, 2)) for (m, k, _, _), zz in zip(checks, z) if zz > 3]
    allowed = len(checks) // 40
    interior = sum(0.01 < a < 0.99 for _, _, a, _ in checks)
    ok = len(grid) >= 40 and len(excursions) <= allowed
    record("3 oracle equivalence", ok,
           f"{len(grid)} scenarios / {len(checks)} checks ({interior} interior), max z = {max(z):.2f}, "
           f"{len(excursions)} beyond 3 sigma (allowed {allowed}), {elapsed:.1f}s")


def _nonincreasing(xs, tol=1e-12):
    return all(b <= a + tol for a, b in zip(xs, xs[1:]))


def test_4_monotonicity():
    t0 = time.perf_counter()
    s3 = I.load_config("fig3-assumed").sensing
    cp = I.load_config("fig4-assumed").comm
    pd = lambda **kw: I.pd_analytic(replace(s3, **kw), GEO).value  # noqa: E731
    pc = lambda **kw: I.pc_analytic(replace(cp, **kw), GEO).value  # noqa: E731
    results = {
        "P_D(zeta_s)": _nonincreasing([pd(zeta_s=float(v)) for v in np.linspace(0, 100, 20)]),
        "P_D(D)": _nonincreasing([pd(d=float(v)) for v in np.linspace(5, 50, 20)]),
        "P_D(n)": _nonincreasing([pd(n_interferers=int(v)) for v in np.linspace(0, 57, 20)]),
        "P_D(p_s)": _nonincreasing([pd(p_s=float(v)) for v in np.linspace(1e-3, 1, 20)][::-1]),
        "P_C(zeta_c)": _nonincreasing([pc(zeta_c=float(v)) for v in np.linspace(0, 1e5, 20)]),
        "P_C(m)": _nonincreasing([pc(m_transmitters=int(v)) for v in np.linspace(1, 58, 20)]),
        "P_C(p_c)": _nonincreasing([pc(p_c=float(v)) for v in np.logspace(-12, 0, 20)][::-1]),
    }
    elapsed = time.perf_counter() - t0
    failed = [k for k, v in results.items() if not v]
    record("4 monotonicity", not failed and elapsed < 10.0,
           f"{len(results)} 20-point grids, failures: {failed or 'none'}, {elapsed:.2f}s")


def test_5_power_cancellation():
    sp = I.load_config("fig3-assumed").sensing
    factors = set()
    for p in np.logspace(-3, 0, 31):
        s = replace(sp, p_s=float(p))
        factors.add(inner_sensing_factor(I.derive_sensing(s), s, GEO))
    record("5 power cancellation", len(factors) == 1,
           f"{len(factors)} distinct interference factor(s) across p_s in [1 mW, 1 W]")


def test_6_tradeoff_structure():
    cfg = I.load_config("fig4-assumed")
    budget = I.Budget("power", cfg.tradeoff.p_t, 101)
    few = I.sweep(budget, cfg)
    many = I.sweep(budget, replace(cfg, sensing=replace(cfg.sensing, n_interferers=50),
                                   comm=replace(cfg.comm, m_transmitters=50)))
    ok_monotone = all(_nonincreasing([p.p_d for p in f.points][::-1])
                      and _nonincreasing([p.p_c for p in f.points]) for f in (few, many))
    ok_dominate = all(a.p_d >= b.p_d and a.p_c >= b.p_c for a, b in zip(few.points, many.points))
    record("6 trade-off structure", ok_monotone and ok_dominate,
           f"monotone in rho: {ok_monotone}; n=10 frontier dominates n=50 pointwise: {ok_dominate}")


def test_7_paper_numbers():
    fig3 = I.load_config("fig3-assumed")
    pd02 = I.pd_analytic(replace(fig3.sensing, p_s=0.2), GEO).value
    pd06 = I.pd_analytic(replace(fig3.sensing, p_s=0.6), GEO).value
    fig5 = I.load_config("fig5-assumed")
    front = I.sweep(I.Budget("bandwidth", fig5.tradeoff.b_total, 2), fig5).points
    pc_end, pd_end = front[0].p_c, front[-1].p_d
    targets = [(pd02, 0.3245), (pd06, 0.5926), (pc_end, 0.928), (pd_end, 0.596)]
    ok = all(abs(v - t) <= 0.08 for v, t in targets)
    record("7 paper numbers (best effort)", ok,
           "fig3 P_D(0.2 W) = %.4f [0.3245], P_D(0.6 W) = %.4f [0.5926]; "
           "fig5 P_C(B_c=20MHz) = %.4f [0.928], P_D(B_s=20MHz) = %.4f [0.596]"
           % (pd02, pd06, pc_end, pd_end))


def _cli_bytes(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main(argv)
    return code, out.getvalue()


def test_8_reproducibility():
    runs = {}
    for cmd, extra in (("mc", ["--sweep", "n:10:50:3"]), ("validate", ["--sweep", "d:5:50:4"])):
        argv = [cmd, "--config", "table1-defaults", "--seed", "123", "--trials", "50000"] + extra
        runs[cmd] = [_cli_bytes(argv + ["--workers", str(w)]) for w in (1, 4)]
    ok = all(a == b and a[0] == 0 for a, b in runs.values())
    record("8 reproducibility", ok,
           "mc and validate CSV byte-identical for 1 and 4 worker threads: " + str(ok))
