import math

import numpy as np
import pytest

from isacnet.analytic import pc_analytic, pd_analytic
from isacnet.model import CommParams, Geometry, SensingParams, derive_sensing
from isacnet.montecarlo import (
    McEstimate,
    coverage_block,
    coverage_trial,
    detection_block,
    detection_trial,
    detection_width,
    coverage_width,
    estimate,
    mc_coverage,
    mc_detection,
    wilson_interval,
)
from isacnet.rng import RngStream
from isacnet.units import PhysicalConstants

GEO = Geometry(500.0)
K = PhysicalConstants()


def sensing(**kw):
    base = dict(p_s=1.0, g_t=10.0, g_r=10.0, lambda_w=0.0833, sigma_bar=10.0, d=20.0, alpha=3.0,
                b_s=2e7, loss_l=10.0, t_pulse=1e-6, duty=0.01, n_interferers=10, zeta_s=500.0)
    base.update(kw)
    return SensingParams(**base)


def comm(**kw):
    base = dict(p_c=1.0, g_t=10.0, g_r=10.0, alpha=3.0, b_c=2e7, loss_l=10.0,
                m_transmitters=10, zeta_c=3e4)
    base.update(kw)
    return CommParams(**base)


def wilson_oracle(k, n, z=1.959963984540054):
    p = k / n
    centre = (p + z * z / (2 * n)) / (1 + z * z / n)
    half = z / (1 + z * z / n) * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
    return centre - half, centre + half


def test_wilson_example():
    lo, hi = wilson_interval(50, 100)
    assert (lo, hi) == pytest.approx(wilson_oracle(50, 100), rel=1e-14)
    assert lo == pytest.approx(0.404, abs=5e-4) and hi == pytest.approx(0.596, abs=5e-4)


def test_wilson_extremes():
    est = McEstimate.from_counts(100, 100)
    assert est.p_hat == 1.0 and est.ci_high == 1.0 and est.std_err > 0
    est = McEstimate.from_counts(0, 100)
    assert est.p_hat == 0.0 and est.ci_low == 0.0
    assert est.ci_low <= est.center <= est.ci_high
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


def test_estimate_from_generator():
    est = estimate(iter([True, False, True, True]), 4)
    assert est.p_hat == 0.75 and est.n_trials == 4
    with pytest.raises(ValueError):
        estimate(iter([True]), 2)
    with pytest.raises(ValueError):
        estimate(iter([]), 0)


def test_single_trial_matches_block():
    sp, cp = sensing(), comm()
    sinr, ok, _ = detection_block(sp, GEO, K, 11, 0, 20)
    csinr, cok, _ = coverage_block(cp, GEO, K, 11, 0, 20)
    for t in (0, 7, 19):
        out = detection_trial(sp, GEO, K, RngStream(11, t, detection_width(sp), tag=1))
        assert out.sinr == sinr[t] and out.success == ok[t]
        out = coverage_trial(cp, GEO, K, RngStream(11, t, coverage_width(cp), tag=2))
        assert out.sinr == csinr[t] and out.success == cok[t]


@pytest.mark.parametrize("kw", [dict(), dict(alpha=2.0, zeta_s=2000.0), dict(n_interferers=50)])
def test_rate_and_sinr_routes_agree(kw):
    _, by_sinr, by_rate = detection_block(sensing(**kw), GEO, K, 3, 0, 50_000)
    np.testing.assert_array_equal(by_sinr, by_rate)
    _, by_sinr, by_rate = coverage_block(comm(), GEO, K, 3, 0, 50_000)
    np.testing.assert_array_equal(by_sinr, by_rate)


def test_zero_cross_section_fails():
    sp = sensing()
    # the RCS uniform is column 0; u = 1 gives sigma = 0
    from isacnet.montecarlo import _detection_sinr
    u = np.full((1, detection_width(sp)), 0.5)
    u[0, 0] = 1.0
    sinr = _detection_sinr(sp, GEO, derive_sensing(sp), u, False)
    assert sinr[0] == 0.0
    assert not (sinr[0] > derive_sensing(sp).gamma_s)


def test_noise_only_detection():
    sp = sensing(n_interferers=0, alpha=5.0, zeta_s=30.0, p_s=0.2)
    ds = derive_sensing(sp)
    expected = math.exp(-ds.eta * sp.d ** 10 * ds.n0 / sp.sigma_bar)
    est = mc_detection(sp, GEO, K, n_trials=100_000, master_seed=1)
    assert abs(est.p_hat - expected) <= 3 * est.std_err


def test_coverage_degenerate_cases():
    no_noise = PhysicalConstants(k0=1e-300, t0=1e-300)
    # m = 1 with (numerically) no noise: infinite SINR every trial
    assert mc_coverage(comm(m_transmitters=1), GEO, no_noise, n_trials=1000).p_hat == 1.0
    assert mc_coverage(comm(zeta_c=0.0), GEO, K, n_trials=1000).p_hat == 1.0
    assert mc_coverage(comm(p_c=0.0), GEO, K, n_trials=1000).p_hat == 0.0
    assert mc_detection(sensing(zeta_s=0.0), GEO, no_noise, n_trials=1000).p_hat == 1.0
    assert mc_detection(sensing(b_s=0.0), GEO, K, n_trials=1000).p_hat == 0.0


def test_reproducible_across_workers_and_blocks():
    sp = sensing()
    ref = mc_detection(sp, GEO, K, n_trials=30_001, master_seed=42)
    for workers, block in [(1, 1000), (4, 8192), (3, 777)]:
        assert mc_detection(sp, GEO, K, n_trials=30_001, master_seed=42,
                            workers=workers, block=block) == ref
    assert mc_detection(sp, GEO, K, n_trials=30_001, master_seed=43) != ref


@pytest.mark.parametrize("kw", [dict(), dict(alpha=2.0, zeta_s=2000.0, n_interferers=50)])
def test_detection_matches_analytic(kw):
    sp = sensing(**kw)
    est = mc_detection(sp, GEO, K, n_trials=100_000, master_seed=5)
    assert abs(est.p_hat - pd_analytic(sp, GEO).value) <= 3 * est.std_err


@pytest.mark.parametrize("kw", [dict(), dict(alpha=4.0, m_transmitters=50, zeta_c=111.5)])
def test_coverage_matches_analytic(kw):
    cp = comm(**kw)
    est = mc_coverage(cp, GEO, K, n_trials=100_000, master_seed=5)
    assert abs(est.p_hat - pc_analytic(cp, GEO).value) <= 3 * est.std_err


def test_printed_coverage_formula_is_rejected_by_simulation():
    # Prefactor 2^m / R^(2m) on the outer integral, no r0 density: far from simulation.
    from scipy import integrate
    from isacnet.analytic import interference_factor
    from isacnet.model import derive_comm
    cp = comm()
    dc = derive_comm(cp)
    R, m, a = 500.0, cp.m_transmitters, cp.alpha

    def integrand(r0):
        f = interference_factor(dc.gamma_c * (r0 / R) ** a, a)[0]
        return math.exp(-dc.gamma_p * r0 ** a * dc.n_c) * f ** (m - 1)

    printed = 2 ** m / R ** (2 * m) * integrate.quad(integrand, 0, R)[0]
    est = mc_coverage(cp, GEO, K, n_trials=100_000, master_seed=5)
    assert abs(printed - est.p_hat) > 100 * est.std_err


def test_poisson_mode_runs_and_differs():
    sp = sensing(n_interferers=10)
    fixed = mc_detection(sp, GEO, K, n_trials=20_000, master_seed=2)
    pois = mc_detection(sp, GEO, K, n_trials=20_000, master_seed=2, poisson=True)
    assert 0.0 < pois.p_hat < 1.0
    assert pois != fixed
    assert detection_width(sp, poisson=True) > detection_width(sp)
    cov = mc_coverage(comm(), GEO, K, n_trials=20_000, poisson=True)
    assert 0.0 < cov.p_hat < 1.0
