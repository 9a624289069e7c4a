import math

import numpy as np
import pytest

from solitonlab.entropy import (
    DensityPerturbation,
    RadialProfile,
    TrialFunction,
    minimizer_check,
    mu,
    mu_closed_form,
    random_perturbations,
    random_trials,
    w_entropy,
)
from solitonlab.exceptions import NormalizationError
from solitonlab.spaces import parse_space


def test_mu_gaussian_vanishes():
    for n in (1, 2, 3, 5):
        sp = parse_space(f"gaussian:{n}")
        rep = mu(sp)
        assert rep.mu == 0.0
        assert abs(rep.normalization_check) <= 1e-10


def test_mu_sphere2_and_cylinder3():
    expected = math.log(2.0) - 1.0
    for tok in ("sphere:2", "cylinder:3"):
        rep = mu(parse_space(tok))
        assert rep.mu == pytest.approx(expected, abs=1e-14)
        assert abs(rep.normalization_check) <= 1e-8


def test_mu_sphere3_closed_form():
    # e^mu = 2 sqrt(pi) e^{-3/2}
    rep = mu(parse_space("sphere:3"))
    assert rep.mu == pytest.approx(math.log(2.0 * math.sqrt(math.pi)) - 1.5, abs=1e-14)
    assert abs(rep.normalization_check) <= 1e-8


def test_mu_nonpositive_with_gaussian_equality():
    values = {tok: mu_closed_form(parse_space(tok))
              for tok in ("gaussian:1", "gaussian:4", "sphere:2", "sphere:4",
                          "cylinder:3", "cylinder:5")}
    for tok, val in values.items():
        if tok.startswith("gaussian"):
            assert val == 0.0
        else:
            assert val < 0.0


def test_w_entropy_minimizer_values():
    # W(g, f + c, 1) equals mu on every catalogue space
    assert w_entropy(parse_space("gaussian:1"), None, 1.0) == pytest.approx(0.0, abs=1e-10)
    assert w_entropy(parse_space("sphere:2"), None, 1.0) == pytest.approx(
        math.log(2.0) - 1.0, abs=1e-10)
    for tok in ("gaussian:3", "sphere:3", "cylinder:3"):
        assert minimizer_check(parse_space(tok)) <= 1e-8


def test_w_entropy_rejects_bad_tau():
    with pytest.raises(ValueError):
        w_entropy(parse_space("gaussian:2"), None, 0.0)


def test_w_entropy_normalization_failure():
    with pytest.raises(NormalizationError):
        DensityPerturbation(math.inf, RadialProfile("bump", 1.0, 3.0))


@pytest.mark.parametrize("tok", ["gaussian:2", "sphere:2", "cylinder:3"])
def test_w_entropy_infimum_property(tok):
    # 1000 random perturbed densities never dip below mu (up to quadrature)
    sp = parse_space(tok)
    mu0 = mu_closed_form(sp)
    worst = math.inf
    for pert in random_perturbations(sp, 1000, seed=20260807):
        worst = min(worst, w_entropy(sp, pert, 1.0) - mu0)
    assert worst >= -1e-6


def test_perturbed_density_above_zero_on_flat_space_any_tau():
    # the flat-space entropy constant vanishes at every scale, so W >= 0
    sp = parse_space("gaussian:1")
    for pert in random_perturbations(sp, 25, seed=3):
        for tau in (0.5, 2.0):
            assert w_entropy(sp, pert, tau) >= -1e-6


def test_trial_normalization():
    for tok in ("gaussian:3", "sphere:2", "cylinder:3"):
        sp = parse_space(tok)
        for tr in random_trials(sp, 10, seed=5):
            assert abs(tr.int_phi2() - 1.0) <= 1e-8
            assert tr.norm_defect <= 1e-8


def test_trial_integrals_against_direct_quadrature():
    # independent oracle: flat-space radial quadrature at fixed nodes
    sp = parse_space("gaussian:3")
    tr = TrialFunction(sp, sp.pole(), RadialProfile("bump", 1.0, 2.0))
    r = np.linspace(0.0, 2.0, 20001)
    phi = tr.amplitude * (1.0 - (r / 2.0) ** 2) ** 2
    dphi = tr.amplitude * (-4.0 * r / 4.0) * (1.0 - (r / 2.0) ** 2)
    w = 4.0 * math.pi * r ** 2
    assert np.trapezoid(w * phi ** 2, r) == pytest.approx(1.0, abs=1e-8)
    assert tr.int_grad2() == pytest.approx(float(np.trapezoid(w * dphi ** 2, r)), rel=1e-7)
    p6 = float(np.trapezoid(w * phi ** 6, r))
    assert tr.int_power(6.0) == pytest.approx(p6, rel=1e-7)


def test_trial_dilation_restricted_to_flat_space():
    sp = parse_space("sphere:2")
    tr = random_trials(sp, 1, seed=0)[0]
    with pytest.raises(Exception):
        tr.dilated(2.0)


def test_cylinder_trial_needs_line_profile():
    sp = parse_space("cylinder:3")
    with pytest.raises(Exception):
        TrialFunction(sp, sp.pole(), RadialProfile("bump", 1.0, 2.0))
