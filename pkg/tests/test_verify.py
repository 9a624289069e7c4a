import math

import numpy as np
import pytest

from solitonlab.entropy import RadialProfile, TrialFunction, mu_closed_form, random_trials
from solitonlab.kernels import (
    EuclideanHeatKernel,
    cylinder_kernel,
    fd_kernel,
    green,
    sphere_kernel_series,
)
from solitonlab.spaces import make_space, parse_space
from solitonlab.spectral import discretize_radial, eigen_solve, sphere_spectrum
from solitonlab import verify


# ---------------------------------------------------------------------------
# kernel axioms
# ---------------------------------------------------------------------------


def test_kernel_axioms_gaussian_closed_form():
    rep = verify.kernel_axioms(EuclideanHeatKernel(make_space("gaussian", 2), 0.25), seed=0)
    assert rep.passed
    sym = [r for r in rep.points if r["check"] == "symmetry"][0]
    assert sym["violation"] <= 1e-14


def test_kernel_axioms_sphere_series():
    rep = verify.kernel_axioms(sphere_kernel_series(2, 0.25), seed=3)
    assert rep.passed


def test_kernel_axioms_fd():
    op = discretize_radial(make_space("gaussian", 3), 16.0, 512)
    rep = verify.kernel_axioms(fd_kernel(op, 1e-3, r_accuracy=4.0), seed=0, tol=1e-3)
    assert rep.passed


@pytest.mark.parametrize("seed", [1, 2, 6, 15])
def test_kernel_axioms_cylinder_far_line_pairs(seed):
    # regression: far line separations make the composition bump extremely
    # narrow; these seeds used to defeat the quadrature
    rep = verify.kernel_axioms(cylinder_kernel(3, 0.25), seed=seed)
    assert rep.passed


# ---------------------------------------------------------------------------
# ultracontractivity
# ---------------------------------------------------------------------------


def test_ultracontractivity_gaussian_sharp():
    ek = EuclideanHeatKernel(make_space("gaussian", 3), 0.25)
    rep = verify.ultracontractivity(ek, 0.0, seed=1)
    assert rep.passed
    assert rep.worst_case_slack == pytest.approx(1.0, abs=1e-13)
    # sharpness: the maximum sits on the diagonal
    diag = [r for r in rep.points if r["d"] == 0.0]
    assert all(abs(r["ratio"] - 1.0) <= 1e-13 for r in diag)
    off = [r for r in rep.points if r["d"] > 0.0]
    assert all(r["ratio"] < 1.0 for r in off)


def test_ultracontractivity_sphere_small_time_diagonal_limit():
    sp = parse_space("sphere:2")
    sk = sphere_kernel_series(2, 0.25)
    rep = verify.ultracontractivity(sk, mu_closed_form(sp), seed=1)
    assert rep.passed
    # short-time diagonal ratio approaches e^mu = 2/e
    t0 = 1e-3
    h, _ = sk.kernel_theta(0.0, t0)
    ratio = h * 4.0 * math.pi * t0 * math.exp(mu_closed_form(sp))
    assert ratio == pytest.approx(2.0 / math.e, rel=2e-3)


def test_ultracontractivity_cylinder():
    sp = parse_space("cylinder:3")
    rep = verify.ultracontractivity(cylinder_kernel(3, 0.25), mu_closed_form(sp), seed=1)
    assert rep.passed
    assert rep.worst_case_slack <= 1.0 + 1e-6


# ---------------------------------------------------------------------------
# gaussian bound
# ---------------------------------------------------------------------------


def test_gaussian_bound_flat_space_constant_is_one():
    ek = EuclideanHeatKernel(make_space("gaussian", 3), 0.25)
    rep = verify.gaussian_bound(ek, 0.0, 5.0, seed=2)
    assert rep.passed
    assert rep.extracted_constants["A_emp"] == pytest.approx(1.0, abs=1e-12)
    # one-dimensional optimization oracle over s = d^2/t >= 0
    s = np.linspace(0.0, 50.0, 2001)
    assert np.max(np.exp(-s / 4.0 + s / 5.0)) == 1.0


def test_gaussian_bound_c45_on_flat_space():
    ek = EuclideanHeatKernel(make_space("gaussian", 3), 0.25)
    rep = verify.gaussian_bound(ek, 0.0, 4.5, seed=2)
    assert rep.extracted_constants["A_emp"] == pytest.approx(1.0, abs=1e-12)


def test_gaussian_bound_rejects_small_c():
    ek = EuclideanHeatKernel(make_space("gaussian", 3), 0.25)
    with pytest.raises(ValueError):
        verify.gaussian_bound(ek, 0.0, 4.0)


def test_gaussian_bound_sphere_stable():
    sp = parse_space("sphere:2")
    rep = verify.gaussian_bound(sphere_kernel_series(2, 0.25), mu_closed_form(sp), 8.0, seed=2)
    assert rep.passed
    assert math.isfinite(rep.extracted_constants["A_emp"])
    assert rep.extracted_constants["splitting_max_ratio"] <= 1.0 + 1e-5


# ---------------------------------------------------------------------------
# curvature-corrected bound for the Laplace kernel
# ---------------------------------------------------------------------------


def test_cr_bound_gaussian_reduces_to_ultracontractivity():
    ek = EuclideanHeatKernel(make_space("gaussian", 3), 0.0)
    rep = verify.cr_bound(ek, 0.0, 0.0, seed=1)
    assert rep.passed
    assert rep.worst_case_slack == pytest.approx(1.0, abs=1e-12)


def test_cr_bound_sphere2_passes_and_half_exponent_fails():
    sp = parse_space("sphere:2")
    rep = verify.cr_bound(sphere_kernel_series(2, 0.0), mu_closed_form(sp), 1.0, seed=1)
    assert rep.passed
    # long-time diagonal: ratio (t/e) e^{-t/6} peaks at 6/e^2 < 1
    assert rep.worst_case_slack == pytest.approx(6.0 / math.e ** 2, rel=0.02)
    # the halved exponent is refuted empirically: the same peak becomes 12/e^2
    assert rep.extracted_constants["max_ratio_exponent_12"] > 1.5
    assert any("fails empirically" in note for note in rep.notes)


def test_cr_bound_sphere3():
    sp = parse_space("sphere:3")
    rep = verify.cr_bound(sphere_kernel_series(3, 0.0), mu_closed_form(sp), 1.5, seed=1)
    assert rep.passed


def test_cr_bound_requires_laplace_kernel():
    with pytest.raises(ValueError):
        verify.cr_bound(sphere_kernel_series(2, 0.25), 0.0, 1.0)


# ---------------------------------------------------------------------------
# green bound
# ---------------------------------------------------------------------------


def test_green_bound_gaussian3():
    gv = green(make_space("gaussian", 3), 0.25)
    rep = verify.green_bound(gv, 0.0, distances=[0.5, 1.0, 2.0, 4.0], seed=0)
    assert rep.passed
    assert rep.extracted_constants["B_emp"] == pytest.approx(1.0 / (4.0 * math.pi), rel=1e-6)
    assert rep.extracted_constants["slope"] == pytest.approx(-1.0, abs=0.01)


def test_green_bound_gaussian4_standard_constant():
    # B_emp equals the standard constant in four dimensions, at every radius
    gv = green(make_space("gaussian", 4), 0.25)
    rep = verify.green_bound(gv, 0.0, distances=[0.5, 1.0, 2.0], seed=0)
    assert rep.passed
    assert rep.extracted_constants["B_emp"] == pytest.approx(
        1.0 / (4.0 * math.pi ** 2), rel=1e-6)
    assert rep.extracted_constants["slope"] == pytest.approx(-2.0, abs=0.02)


def test_green_bound_sphere3_small_angle_slope():
    sp = make_space("sphere", 3)
    rep = verify.green_bound(green(sp, 0.25), mu_closed_form(sp), seed=0)
    assert rep.passed
    assert rep.extracted_constants["slope"] == pytest.approx(-1.0, abs=0.05)
    assert math.isfinite(rep.extracted_constants["B_emp"])


# ---------------------------------------------------------------------------
# eigenvalue bound
# ---------------------------------------------------------------------------


def test_eigenvalue_bound_first_two_levels():
    sp = parse_space("sphere:2")
    mu = mu_closed_form(sp)
    spec = sphere_spectrum(2, 0.25, 30)
    rep = verify.eigenvalue_bound(spec, mu, sp.volume, 50, n=2, seed=0)
    assert rep.passed
    # oracle: bound(k) = (4 pi / e)(k e^mu / V) = k / e^2 here
    rows = {r["x_id"]: r for r in rep.points if r["x_id"].startswith("k=")}
    assert rows["k=1"]["lhs"] == pytest.approx(1.0 / math.e ** 2, rel=1e-12)
    assert rows["k=1"]["rhs"] == pytest.approx(0.25, abs=1e-15)
    assert rows["k=2"]["lhs"] == pytest.approx(2.0 / math.e ** 2, rel=1e-12)
    assert rows["k=2"]["rhs"] == pytest.approx(1.25, abs=1e-15)


def test_eigenvalue_bound_requires_enough_spectrum():
    spec = sphere_spectrum(2, 0.25, 3)
    with pytest.raises(ValueError):
        verify.eigenvalue_bound(spec, 0.0, 8 * math.pi, 500, n=2)


def test_eigenvalue_bound_excludes_uncertified_partition_times():
    # a shallow spectrum cannot certify the partition sum at small times;
    # those rows are excluded and counted instead of reported as violations
    sp3 = parse_space("sphere:3")
    mu3 = mu_closed_form(sp3)
    spec = sphere_spectrum(3, 0.25, 40)
    rep = verify.eigenvalue_bound(spec, mu3, sp3.volume, 400, n=3,
                                  times=np.geomspace(1e-3, 1e2, 20), seed=0)
    assert rep.passed
    assert any("excluded" in note for note in rep.notes)
    excluded = [r for r in rep.points
                if r["x_id"] == "partition" and math.isnan(r["ratio"])]
    assert len(excluded) >= 1
    # the dimension-two Weyl window does not gate at n = 3 (recorded only)
    assert any("Weyl ratio" in note for note in rep.notes)
    assert not any("violated" in note for note in rep.notes) or rep.passed


# ---------------------------------------------------------------------------
# log-Sobolev
# ---------------------------------------------------------------------------


def test_log_sobolev_sharp_gaussian_case():
    for n in (1, 2, 3):
        sp = make_space("gaussian", n)
        for tau in (0.05, 1.0, 4.0):
            tr = verify.sharp_gaussian_trial(sp, tau)
            assert abs(verify.log_sobolev_slack(sp, 0.0, tr, tau)) <= 1e-6


def test_log_sobolev_random_trials_each_space():
    for tok in ("gaussian:2", "sphere:2", "cylinder:3"):
        sp = parse_space(tok)
        rep = verify.log_sobolev(sp, mu_closed_form(sp), trials=25, seed=9)
        assert rep.passed
        assert rep.worst_case_slack >= -1e-6


def test_log_sobolev_constant_trial_on_sphere():
    # phi = V^{-1/2}: slack = tau R - mu - n - (n/2) ln(4 pi tau) + ln V,
    # which vanishes identically at tau = 1 on the model 2-sphere
    sp = parse_space("sphere:2")
    mu = mu_closed_form(sp)
    tr = TrialFunction(sp, sp.pole(),
                       RadialProfile("const", 1.0, math.pi * sp.sphere_radius + 1.0))
    slack = verify.log_sobolev_slack(sp, mu, tr, 1.0)
    closed = 1.0 - mu - 2.0 - math.log(4.0 * math.pi) + math.log(sp.volume)
    assert closed == pytest.approx(0.0, abs=1e-14)
    assert slack == pytest.approx(closed, abs=1e-9)
    assert slack >= -1e-9


# ---------------------------------------------------------------------------
# Sobolev
# ---------------------------------------------------------------------------


def euclidean_sobolev_sharp_constant():
    # quotient of the exact extremal profile (1 + r^2)^{-1/2} in R^3 by
    # fixed-node radial quadrature plus the analytic 4 pi / R gradient tail
    R = 4000.0
    r = np.linspace(0.0, R, 2_000_001)
    u = (1.0 + r * r) ** -0.5
    du = -r * (1.0 + r * r) ** -1.5
    w = 4.0 * math.pi * r * r
    num = np.trapezoid(w * u ** 6, r) ** (1.0 / 3.0)
    den = np.trapezoid(w * du ** 2, r) + 4.0 * math.pi / R
    return num / den


def test_sobolev_gaussian_approaches_sharp_constant():
    sharp = euclidean_sobolev_sharp_constant()
    assert sharp == pytest.approx((4.0 / math.pi ** 2) ** (2.0 / 3.0) / 3.0, rel=1e-5)
    rep = verify.sobolev(make_space("gaussian", 3), 0.0, a=0.25, trials=10, seed=4)
    assert rep.passed
    c_emp = rep.extracted_constants["C_emp"]
    assert 0.9 * sharp <= c_emp <= sharp * (1.0 + 1e-6)
    assert rep.extracted_constants["dilation_deviation"] <= 1e-6


def test_sobolev_sphere3_finite():
    sp = parse_space("sphere:3")
    rep = verify.sobolev(sp, mu_closed_form(sp), a=0.25, trials=10, seed=4)
    assert rep.passed
    assert math.isfinite(rep.extracted_constants["C_emp"])


def test_sobolev_validation():
    with pytest.raises(ValueError):
        verify.sobolev(make_space("gaussian", 2), 0.0)
    with pytest.raises(ValueError):
        verify.sobolev(make_space("gaussian", 3), 0.0, a=0.1)


# ---------------------------------------------------------------------------
# weighted-energy machinery
# ---------------------------------------------------------------------------


def brute_force_m(gamma, kmax=200):
    return min(gamma ** (k + 1) / ((gamma - 1) * (k + 2) * (k + 3) ** 4)
               for k in range(kmax))


def test_grigoryan_constants_scan():
    c = verify.grigoryan_constants(2.0, 10.0)
    assert c.m == pytest.approx(brute_force_m(2.0), rel=1e-12)
    assert c.m == pytest.approx(0.002221, abs=1e-6)
    assert c.k_argmin in (4, 5)
    assert c.D0 == pytest.approx(2.0 / c.m, rel=1e-14)
    assert c.delta == pytest.approx((10.0 - 2.0) / (5.0 * c.D0 - 2.0) / 2.0, rel=1e-14)


def test_grigoryan_constants_limits():
    # (gamma - 1) factor drives m to zero and D0 to infinity as gamma -> 1+
    near = verify.grigoryan_constants(1.001, 10.0)
    assert near.m < 1e-5
    assert near.D0 > 1e5
    # D = 5 D0 sits exactly at the crossover delta = 1 / gamma / 1
    c = verify.grigoryan_constants(2.0, 10.0)
    at5 = verify.grigoryan_constants(2.0, 5.0 * c.D0)
    assert at5.delta == pytest.approx(0.5, rel=1e-12)


def test_grigoryan_constants_validation():
    with pytest.raises(ValueError):
        verify.grigoryan_constants(1.0, 10.0)
    with pytest.raises(ValueError):
        verify.grigoryan_constants(2.0, 2.0)


def test_energy_monotonicity_random_data():
    op = discretize_radial(make_space("gaussian", 1), 8.0, 384)
    rep = verify.energy_monotonicity(op, s=1.0, trials=8, seed=21, dt=1e-3)
    assert rep.passed
    assert rep.extracted_constants["max_violation"] <= 1e-6


def test_energy_monotonicity_eigenmode_decay():
    # cap radius zero turns the weight off and the energy decays at 2 lambda_1
    op = discretize_radial(make_space("gaussian", 1), 8.0, 384)
    spec = eigen_solve(op, 1, eigenvectors=True)
    lam1 = float(spec.values[0])
    probe = verify.GrigoryanProbe(op, 0.05, data0=spec.eigenvectors[:, 0], dt=2e-4)
    e1 = probe.weighted_energy(0.05, 0.0, 2.0)
    e2 = probe.weighted_energy(0.55, 0.0, 2.0)
    assert e2 / e1 == pytest.approx(math.exp(-2.0 * lam1 * 0.5), rel=1e-5)


def test_energy_monotonicity_violations_shrink_under_refinement():
    coarse = verify.energy_monotonicity(
        discretize_radial(make_space("gaussian", 1), 8.0, 192), s=1.0,
        trials=6, seed=5, dt=2e-3)
    fine = verify.energy_monotonicity(
        discretize_radial(make_space("gaussian", 1), 8.0, 384), s=1.0,
        trials=6, seed=5, dt=1e-3)
    assert fine.extracted_constants["max_violation"] <= \
        coarse.extracted_constants["max_violation"] + 1e-12


def test_weighted_energy_bound_gaussian1():
    op = discretize_radial(make_space("gaussian", 1), 8.0, 512)
    probe = verify.GrigoryanProbe(op, 1e-3, D=10.0, gamma=2.0)
    rep = verify.weighted_energy_bound(probe, 0.0, seed=0)
    assert rep.passed
    # I(t) <= E_D(t) rows present and consistent
    i_rows = {r["t"]: r["lhs"] for r in rep.points if r["x_id"] == "I"}
    e_rows = {r["t"]: r["lhs"] for r in rep.points if r["x_id"] == "E_D"}
    assert all(i_rows[t] <= e_rows[t] for t in i_rows)


def test_weighted_energy_hypothesis_failure_aborts():
    op = discretize_radial(make_space("gaussian", 1), 8.0, 128)
    bad = verify.GrigoryanProbe(op, 0.05, data0=np.full(op.m, 50.0) * (op.r < 6.0))
    rep = verify.weighted_energy_bound(bad, 0.0, times=np.linspace(0.06, 0.5, 5), seed=0)
    assert not rep.passed
    assert any("hypothesis" in n for n in rep.notes)


def test_exploratory_a_sweep_records_without_gating():
    sp = parse_space("sphere:2")
    mu = mu_closed_form(sp)
    rows = verify.exploratory_a_sweep(sp, [0.0, 0.1], lambda a: sphere_kernel_series(2, a),
                                      mu, seed=0)
    assert [r["a"] for r in rows] == [0.0, 0.1]
    # without the coupling the long-time diagonal grows past the bound
    assert rows[0]["max_ratio"] > 1.0
