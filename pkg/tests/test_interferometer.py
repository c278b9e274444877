import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from spinorint.crossings import ParabolicParams, composite_alpha_beta
from spinorint.interferometer import (
    InterferometerConfig,
    chi_psi,
    config_from_crossing,
    fringe_scan,
    population_1_to_m1,
    sharper_fringes_check,
    total_propagator,
    visibility_prefactor,
)
from spinorint.majorana import lift
from spinorint.spin_algebra import is_unitary


def random_config(rng):
    return InterferometerConfig(
        R=rng.uniform(0.05, 0.95),
        phi=rng.uniform(-np.pi, np.pi),
        sigma=rng.uniform(0.0, 6 * np.pi),
        theta1=rng.uniform(-2 * np.pi, 2 * np.pi),
        theta_m1=rng.uniform(-2 * np.pi, 2 * np.pi))


def test_config_validation():
    with pytest.raises(ValueError):
        InterferometerConfig(R=0.0, phi=0, sigma=0)
    with pytest.raises(ValueError):
        InterferometerConfig(R=1.0, phi=0, sigma=0)
    with pytest.raises(ValueError):
        InterferometerConfig(R=0.5, phi=np.nan, sigma=0)


def test_chi_psi_arithmetic():
    base = dict(R=0.5, phi=0.0, sigma=0.0)
    assert chi_psi(InterferometerConfig(**base)) == (0.0, 0.0)
    chi, psi = chi_psi(InterferometerConfig(**base, theta1=2.0, theta_m1=2.0))
    assert abs(chi + 1.0) < 1e-15 and psi == 0.0
    chi, psi = chi_psi(InterferometerConfig(**base, theta1=2.0, theta_m1=-2.0))
    assert chi == 0.0 and abs(psi - 1.0) < 1e-15


def test_total_propagator_reduces_to_double_crossing():
    p = ParabolicParams(2.0, 5.0)
    c = config_from_crossing(p)
    u_direct = lift(composite_alpha_beta(p), 3)
    assert np.abs(total_propagator(c) - u_direct).max() < 1e-12


def test_total_propagator_weak_splitting_is_nearly_diagonal():
    c = InterferometerConfig(R=1e-3, phi=0.2, sigma=1.0, theta1=0.3, theta_m1=-0.4)
    u = total_propagator(c)
    off = u - np.diag(np.diag(u))
    assert np.abs(off).max() < 3e-3


def test_total_propagator_unitary():
    rng = np.random.default_rng(6)
    for _ in range(50):
        u = total_propagator(random_config(rng))
        assert is_unitary(u, 1e-12)
        # row/column norms and total output population
        assert np.abs(np.linalg.norm(u, axis=0) - 1).max() < 1e-12
        assert np.abs(np.linalg.norm(u, axis=1) - 1).max() < 1e-12
        assert abs(np.sum(np.abs(u[:, 0]) ** 2) - 1) < 1e-12


def test_population_closed_form_equals_composition():
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(500):
        c = random_config(rng)
        worst = max(worst, abs(population_1_to_m1(c) - abs(total_propagator(c)[2, 0]) ** 2))
    assert worst < 1e-12


def test_population_reduces_to_quartic_form_without_arm_phases():
    rng = np.random.default_rng(15)
    for _ in range(100):
        c = InterferometerConfig(R=rng.uniform(0.1, 0.9), phi=rng.uniform(0, np.pi),
                                 sigma=rng.uniform(0, 4 * np.pi))
        quartic = (4 * c.R ** 2 * (1 - c.R ** 2) * np.sin(c.sigma / 2 + c.phi) ** 2) ** 2
        assert abs(population_1_to_m1(c) - quartic) < 1e-12


def test_full_transfer_point():
    c = InterferometerConfig(R=1 / np.sqrt(2), phi=0.0, sigma=np.pi)  # chi = pi/2
    assert abs(population_1_to_m1(c) - 1.0) < 1e-12


def test_quarter_transfer_point():
    # chi = pi/4, Psi = pi/4: prefactor 1 times {1/4 + cos(pi/2) * 1/2} = 1/4
    c = InterferometerConfig(R=1 / np.sqrt(2), phi=0.0, sigma=np.pi / 2,
                             theta1=np.pi / 2, theta_m1=-np.pi / 2)
    assert abs(population_1_to_m1(c) - 0.25) < 1e-12


def test_population_symmetric_under_arm_phase_swap():
    rng = np.random.default_rng(19)
    for _ in range(50):
        c = random_config(rng)
        swapped = InterferometerConfig(R=c.R, phi=c.phi, sigma=c.sigma,
                                       theta1=c.theta_m1, theta_m1=c.theta1)
        assert abs(population_1_to_m1(c) - population_1_to_m1(swapped)) < 1e-12


def test_common_mode_shift_moves_chi_only():
    c = InterferometerConfig(R=0.6, phi=0.2, sigma=1.0, theta1=0.5, theta_m1=-0.3)
    delta = 0.84
    shifted = InterferometerConfig(R=c.R, phi=c.phi, sigma=c.sigma + delta,
                                   theta1=c.theta1, theta_m1=c.theta_m1)
    chi0, psi0 = chi_psi(c)
    chi1, psi1 = chi_psi(shifted)
    assert abs((chi1 - chi0) - delta / 2) < 1e-15
    assert psi1 == psi0


# ------------------------------------------------------------------ fringes

def test_balanced_fringes_reach_zero_and_one():
    c = InterferometerConfig(R=1 / np.sqrt(2), phi=0.0, sigma=0.0)
    scan = fringe_scan(c, "chi", np.linspace(0.0, 2 * np.pi, 1001))
    assert scan.populations.min() < 1e-12
    assert abs(scan.populations.max() - 1.0) < 1e-6
    assert abs(scan.visibility - 1.0) < 1e-6
    assert scan.minima.size >= 1 and scan.maxima.size >= 2


def test_differential_phase_lifts_minima():
    c = InterferometerConfig(R=1 / np.sqrt(2), phi=0.0, sigma=0.0,
                             theta1=np.pi / 2, theta_m1=-np.pi / 2)  # Psi = pi/4
    scan = fringe_scan(c, "chi", np.linspace(0.0, 2 * np.pi, 2001))
    assert scan.populations.min() > 0.05
    assert scan.visibility < 1.0


def test_sigma_sweep_maps_to_chi():
    c = InterferometerConfig(R=0.5, phi=0.3, sigma=0.0, theta1=0.2, theta_m1=0.6)
    grid = np.linspace(0.0, 4 * np.pi, 100)
    scan = fringe_scan(c, "sigma", grid)
    assert np.allclose(scan.chi, grid / 2 + 0.3 - 0.2)
    direct = [population_1_to_m1(InterferometerConfig(R=0.5, phi=0.3, sigma=s,
                                                      theta1=0.2, theta_m1=0.6))
              for s in grid]
    assert np.abs(scan.populations - direct).max() < 1e-14


def test_scan_grid_validation():
    c = InterferometerConfig(R=0.5, phi=0.0, sigma=0.0)
    with pytest.raises(ValueError):
        fringe_scan(c, "chi", [])
    with pytest.raises(ValueError):
        fringe_scan(c, "chi", [0.0, 1.0, 0.5])
    with pytest.raises(ValueError):
        fringe_scan(c, "tau", [0.0, 1.0])


def test_prefactor_maximized_at_balanced_splitting():
    opt = minimize_scalar(lambda r: -visibility_prefactor(r),
                          bounds=(0.05, 0.999), method="bounded",
                          options={"xatol": 1e-10})
    assert abs(opt.x - 1 / np.sqrt(2)) < 1e-6
    assert abs(visibility_prefactor(1 / np.sqrt(2)) - 1.0) < 1e-12


def test_sharper_fringes():
    c = InterferometerConfig(R=1 / np.sqrt(2), phi=0.0, sigma=0.0)
    rec = sharper_fringes_check(c)
    assert rec.is_sharper and rec.ratio < 1.0
    # analytic widths: sin^2 -> pi/2, sin^4 -> pi - 2 arcsin(2^{-1/4})
    assert abs(rec.fwhm_quadratic - np.pi / 2) < 1e-3
    assert abs(rec.fwhm_quartic - (np.pi - 2 * np.arcsin(2 ** -0.25))) < 1e-3


def test_sharper_fringes_requires_symmetric_arms():
    c = InterferometerConfig(R=0.5, phi=0.0, sigma=0.0, theta1=1.0, theta_m1=0.0)
    with pytest.raises(ValueError):
        sharper_fringes_check(c)
