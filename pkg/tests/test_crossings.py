import warnings

import numpy as np
import pytest

from spinorint.crossings import (
    IcaWarning,
    LZParams,
    ParabolicParams,
    composite_alpha_beta,
    crossing_diagnostics,
    dynamical_phase_sigma,
    lz_amplitude,
    lz_phase,
    lz_propagator,
    lz_two_level,
    sigma_diabatic_approx,
    sigma_elliptic_form,
    transition_prob_1_to_3,
    transition_prob_2level,
    zener_time_lz,
)
from spinorint.majorana import lift


# ----------------------------------------------------------- LZ amplitude

def test_lz_amplitude_limits():
    assert lz_amplitude(0.0) == 1.0
    assert lz_amplitude(50.0) < 1e-30
    with pytest.raises(ValueError):
        lz_amplitude(-0.1)


def test_lz_amplitude_paper_operating_point():
    # eps*mu = 10: R = exp(-pi / (4 sqrt(10))) close to 0.78
    lam = 1.0 / (2 * np.sqrt(10.0))
    assert abs(lz_amplitude(lam) - 0.78) < 0.005


# --------------------------------------------------------------- LZ phase

def test_lz_phase_endpoints():
    assert abs(lz_phase(0.0) - np.pi / 4) < 1e-15
    assert lz_phase(20.0) < 0.01


def test_lz_phase_against_high_precision_gamma():
    # frozen from 30-digit mpmath: pi/4 + (L/2) ln(L/2e) + Im loggamma(1 - iL/2)
    expected = {
        0.5: 0.327061913258717258,
        1.0: 0.182882872022903418,
        2.0: 0.087038483864981508,
        5.0: 0.033520587230399444,
    }
    for lam, val in expected.items():
        assert abs(lz_phase(lam) - val) < 1e-12


def test_lz_phase_strictly_decreasing():
    grid = np.linspace(0.0, 20.0, 200)
    vals = np.array([lz_phase(x) for x in grid])
    assert np.all(np.diff(vals) < 0)
    assert np.all(vals > 0) and np.all(vals <= np.pi / 4)


def test_lz_phase_rejects_negative():
    with pytest.raises(ValueError):
        lz_phase(-1.0)


# ---------------------------------------------------------- LZ propagator

def test_lz_propagator_full_diabatic_passage():
    assert np.abs(lz_propagator(0.0) - np.array([[0, -1], [1, 0]])).max() < 1e-15


def test_lz_propagator_adiabatic_limit():
    u = lz_propagator(50.0)
    # R ~ 0, phi(50) ~ 3e-3: essentially the identity
    assert np.abs(u - np.eye(2)).max() < 5e-3


def test_lz_propagator_offdiagonal_at_unit_lambda():
    u = lz_propagator(1.0)
    assert abs(abs(u[0, 1]) - np.exp(-np.pi / 2)) < 1e-15
    assert abs(abs(u[1, 0]) - np.exp(-np.pi / 2)) < 1e-15


def test_lz_two_level_pair_is_unit_norm():
    p = lz_two_level(0.3)
    assert abs(abs(p.alpha) ** 2 + abs(p.beta) ** 2 - 1) < 1e-15


# -------------------------------------------------------------- Zener time

def test_zener_time_branches():
    adiab = zener_time_lz(LZParams.from_slope_coupling(lambda_slope=1.0, v0=10.0))
    assert adiab.regime == "adiabatic" and abs(adiab.value - 10.0) < 1e-15
    sudden = zener_time_lz(LZParams.from_slope_coupling(lambda_slope=100.0, v0=1.0))
    assert sudden.regime == "sudden" and abs(sudden.value - 0.1) < 1e-15


def test_zener_time_branches_coincide_at_crossover():
    # Lambda = 1 means v0^2 = hbar * slope, where v0/slope = sqrt(hbar/slope)
    p = LZParams.from_slope_coupling(lambda_slope=4.0, v0=2.0)
    assert abs(p.Lambda - 1.0) < 1e-15
    assert abs(zener_time_lz(p).value - np.sqrt(1.0 / 4.0)) < 1e-15


def test_zener_time_needs_dimensional_params():
    with pytest.raises(ValueError):
        zener_time_lz(LZParams(0.5))


# ------------------------------------------------------------- diagnostics

def test_diagnostics_sudden_case():
    d = crossing_diagnostics(ParabolicParams(2.0, 5.0))
    assert abs(d.tau_c - 2 * np.sqrt(2.5)) < 1e-14
    assert abs(d.lambda_eff - 1 / (2 * np.sqrt(10))) < 1e-14
    assert d.regime == "sudden"
    assert abs(d.tau_z - np.sqrt(d.lambda_eff)) < 1e-14
    # sudden-limit margin 2 sqrt(2) (mu^3/eps)^{1/4}
    assert abs(d.ica_margin - 2 * np.sqrt(2) * (5.0 ** 3 / 2.0) ** 0.25) < 1e-12


def test_diagnostics_adiabatic_case():
    d = crossing_diagnostics(ParabolicParams(0.05, 2.0))
    assert d.regime == "adiabatic"
    # adiabatic-limit margin is exactly 4 mu
    assert abs(d.ica_margin - 8.0) < 1e-12


def test_margin_grows_with_mu():
    margins = [crossing_diagnostics(ParabolicParams(2.0, mu)).ica_margin
               for mu in (2.0, 5.0, 20.0, 100.0)]
    assert np.all(np.diff(margins) > 0)


def test_out_of_scope_parameters_rejected():
    with pytest.raises(ValueError):
        ParabolicParams(2.0, 0.0)
    with pytest.raises(ValueError):
        ParabolicParams(2.0, -1.0)
    with pytest.raises(ValueError):
        ParabolicParams(-2.0, 1.0)


def test_from_raw_scaling():
    p = ParabolicParams.from_raw(a=3.0, b=10.0, v=2.0, hbar=1.0)
    assert abs(p.epsilon - 3.0 / 8.0) < 1e-15
    assert abs(p.mu - 5.0) < 1e-15
    with pytest.raises(ValueError):
        ParabolicParams.from_raw(a=-1.0, b=1.0, v=1.0)


# ------------------------------------------------------------------- sigma

def test_sigma_exceeds_diabatic_value():
    rng = np.random.default_rng(8)
    for _ in range(25):
        p = ParabolicParams(rng.uniform(0.2, 8.0), rng.uniform(0.5, 30.0))
        assert dynamical_phase_sigma(p) > sigma_diabatic_approx(p)


def test_sigma_large_mu_asymptote():
    p = ParabolicParams(1.0, 20.0)
    sig = dynamical_phase_sigma(p)
    assert abs(sig - sigma_diabatic_approx(p)) / sig < 0.02


def test_sigma_asymptote_deviation_decreases_with_mu():
    devs = []
    for mu in (2.0, 5.0, 10.0, 20.0, 50.0):
        p = ParabolicParams(1.7, mu)
        sig = dynamical_phase_sigma(p)
        devs.append(abs(sig - sigma_diabatic_approx(p)) / sig)
    assert np.all(np.diff(devs) < 0)


def test_sigma_scales_as_tau_c_times_function_of_mu():
    ref = None
    for eps in (0.5, 2.0, 8.0):
        p = ParabolicParams(eps, 5.0)
        ratio = dynamical_phase_sigma(p) / p.tau_c
        if ref is None:
            ref = ratio
        assert abs(ratio - ref) < 1e-8


def test_sigma_matches_elliptic_closed_form():
    for eps, mu in [(2.0, 5.0), (1.0, 20.0), (0.5, 3.0), (4.0, 1.5)]:
        p = ParabolicParams(eps, mu)
        quad_val = dynamical_phase_sigma(p)
        ell_val = sigma_elliptic_form(p)
        assert abs(quad_val - ell_val) / ell_val < 1e-10


def test_sigma_frozen_reference_value():
    # cross-checked against the 30-digit elliptic evaluation
    assert abs(dynamical_phase_sigma(ParabolicParams(2.0, 5.0)) - 22.382955786689667) < 1e-8


# --------------------------------------------------------------- composite

def test_composite_is_unit_norm():
    rng = np.random.default_rng(17)
    for _ in range(50):
        p = ParabolicParams(rng.uniform(0.2, 4.0), rng.uniform(2.0, 20.0))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IcaWarning)
            c = composite_alpha_beta(p)
        assert abs(abs(c.alpha) ** 2 + abs(c.beta) ** 2 - 1) < 1e-12


def test_composite_equals_assembled_matrix_product():
    for eps, mu in [(2.0, 5.0), (0.7, 12.0), (3.0, 9.0)]:
        p = ParabolicParams(eps, mu)
        sig = dynamical_phase_sigma(p)
        u_lz = lz_propagator(p.Lambda)
        u_ph = np.diag([np.exp(-0.5j * sig), np.exp(0.5j * sig)])
        assembled = u_lz.T @ u_ph @ u_lz
        c = composite_alpha_beta(p)
        assert np.abs(c.as_matrix() - assembled).max() < 1e-12


def test_composite_adiabatic_limit_no_transfer():
    # eps*mu -> 0 makes R -> 0; margin is small there so a warning fires
    p = ParabolicParams(1e-3, 0.1)
    with pytest.warns(IcaWarning):
        c = composite_alpha_beta(p)
    assert abs(c.beta) < 1e-30
    assert abs(abs(c.alpha) - 1) < 1e-12


def test_ica_warning_threshold():
    with pytest.warns(IcaWarning):
        composite_alpha_beta(ParabolicParams(10.0, 0.1))
    with warnings.catch_warnings():
        warnings.simplefilter("error", IcaWarning)
        composite_alpha_beta(ParabolicParams(2.0, 5.0))  # margin ~ 8: no warning


# ---------------------------------------------------------- probabilities

def test_transition_probability_closed_form_structure():
    # prefactor zeros at R = 0 and R = 1; maximum 1 at R = 1/sqrt(2), angle pi/2
    assert 4 * 0.0 * (1 - 0.0) == 0
    r = 1 / np.sqrt(2)
    assert abs(4 * r ** 2 * (1 - r ** 2) * np.sin(np.pi / 2) ** 2 - 1.0) < 1e-15


def test_transition_probabilities_consistent():
    rng = np.random.default_rng(23)
    for _ in range(20):
        p = ParabolicParams(rng.uniform(0.5, 4.0), rng.uniform(2.0, 20.0))
        p2 = transition_prob_2level(p)
        assert 0.0 <= p2 <= 1.0
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IcaWarning)
            c = composite_alpha_beta(p)
        assert abs(p2 - abs(c.beta) ** 2) < 1e-12
        assert abs(transition_prob_1_to_3(p) - p2 ** 2) < 1e-12


def test_three_level_probability_matches_lifted_composite():
    p = ParabolicParams(2.0, 5.0)
    u3 = lift(composite_alpha_beta(p), 3)
    assert abs(transition_prob_1_to_3(p) - abs(u3[2, 0]) ** 2) < 1e-12
