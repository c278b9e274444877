"""Three-level crossing interferometer: total propagator and fringes.

The two crossings of the parabolic sweep act as beam splitters for the
three Zeeman components, the stretch between them as the interferometer
arms.  The total propagator is

    U_tot = U_lz^T . U_ph . U_gp . U_lz

(second crossing transposed because one adiabatic state flips sign after
the first crossing), with U_lz the lifted per-crossing propagator, U_ph
the lifted dynamical-phase propagator and U_gp the diagonal collisional
phase propagator.  Starting from the maximal-m state, the end-to-end
population has the closed form

    P = 16 R^4 (1-R^2)^2 { sin^4(chi) + cos(2 chi) sin^2(Psi) },
    chi = sigma/2 + phi - (theta1 + theta_m1)/4,
    Psi = (theta1 - theta_m1)/4,

which this module evaluates and scans.  R and sigma are treated as
independent knobs here: upstream they both derive from (eps, mu), but the
sweep has three dimensional parameters, enough to fix them separately.

Basis ordering is (m=+1, 0, -1); "1 -> -1" population is the (3,1)
matrix element.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .majorana import TwoLevelPropagator, lift, lift_diagonal_phase

__all__ = [
    "InterferometerConfig",
    "FringeScan",
    "FringeWidths",
    "total_propagator",
    "population_1_to_m1",
    "chi_psi",
    "fringe_scan",
    "sharper_fringes_check",
    "visibility_prefactor",
    "config_from_crossing",
]


@dataclass(frozen=True)
class InterferometerConfig:
    """Per-crossing amplitude R, phases (phi, sigma) and arm phases."""

    R: float
    phi: float
    sigma: float
    theta1: float = 0.0
    theta_m1: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.R < 1.0):
            raise ValueError(f"R must lie strictly in (0, 1), got {self.R}")
        for nm in ("phi", "sigma", "theta1", "theta_m1"):
            if not np.isfinite(getattr(self, nm)):
                raise ValueError(f"{nm} must be finite")


@dataclass(frozen=True)
class FringeScan:
    swept_parameter: str     # "sigma" or "chi"
    grid: np.ndarray
    chi: np.ndarray
    psi: float
    populations: np.ndarray
    visibility: float
    minima: np.ndarray       # swept values of interior local minima
    maxima: np.ndarray


@dataclass(frozen=True)
class FringeWidths:
    fwhm_quartic: float      # sin^4 fringe
    fwhm_quadratic: float    # sin^2 reference fringe
    ratio: float
    is_sharper: bool


def config_from_crossing(p, theta1: float = 0.0, theta_m1: float = 0.0) -> InterferometerConfig:
    """Build a config with R, phi, sigma derived from ParabolicParams."""
    from .crossings import dynamical_phase_sigma, lz_amplitude, lz_phase

    return InterferometerConfig(
        R=lz_amplitude(p.Lambda), phi=lz_phase(p.Lambda),
        sigma=dynamical_phase_sigma(p), theta1=theta1, theta_m1=theta_m1)


def chi_psi(c: InterferometerConfig) -> tuple[float, float]:
    """Common-mode and differential phase combinations (chi, Psi)."""
    chi = c.sigma / 2 + c.phi - (c.theta1 + c.theta_m1) / 4
    psi = (c.theta1 - c.theta_m1) / 4
    return chi, psi


def total_propagator(c: InterferometerConfig) -> np.ndarray:
    """Unitary 3x3 propagator of the full crossing-arm-crossing sequence."""
    pair = TwoLevelPropagator(np.sqrt(1 - c.R ** 2) * np.exp(-1j * c.phi), -c.R)
    u_lz = lift(pair, 3)
    u_ph = lift_diagonal_phase(c.sigma, 3)
    u_gp = np.diag([np.exp(1j * c.theta1), 1.0, np.exp(-1j * c.theta_m1)])
    # beta = -R is real, so the lifted transpose equals the transposed lift
    return u_lz.T @ u_ph @ u_gp @ u_lz


def population_1_to_m1(c: InterferometerConfig) -> float:
    """Closed-form population transferred from m=+1 to m=-1."""
    chi, psi = chi_psi(c)
    pref = 16 * c.R ** 4 * (1 - c.R ** 2) ** 2
    val = pref * (np.sin(chi) ** 4 + np.cos(2 * chi) * np.sin(psi) ** 2)
    # the exact expression 4R^4(1-R^2)^2 [1 + cos^2 - 2 cos cos] is >= 0;
    # rounding may leave a tiny negative residue near zeros
    return float(max(0.0, val))


def visibility_prefactor(r: float) -> float:
    """Fringe amplitude 16 R^4 (1 - R^2)^2, maximal at R = 1/sqrt(2)."""
    return float(16 * r ** 4 * (1 - r ** 2) ** 2)


def _local_extrema(grid: np.ndarray, vals: np.ndarray):
    minima, maxima = [], []
    for i in range(1, len(vals) - 1):
        left, mid, right = vals[i - 1], vals[i], vals[i + 1]
        if mid <= left and mid <= right and (mid < left or mid < right):
            minima.append(grid[i])
        if mid >= left and mid >= right and (mid > left or mid > right):
            maxima.append(grid[i])
    return np.asarray(minima), np.asarray(maxima)


def fringe_scan(c: InterferometerConfig, sweep: str, grid) -> FringeScan:
    """Evaluate the output population over a monotone grid of sigma or chi."""
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("scan grid is empty")
    if grid.size > 1 and not (np.all(np.diff(grid) > 0) or np.all(np.diff(grid) < 0)):
        raise ValueError("scan grid must be strictly monotone")
    _, psi = chi_psi(c)
    if sweep == "sigma":
        chi = grid / 2 + c.phi - (c.theta1 + c.theta_m1) / 4
    elif sweep == "chi":
        chi = grid
    else:
        raise ValueError(f"sweep must be 'sigma' or 'chi', got {sweep!r}")
    pref = 16 * c.R ** 4 * (1 - c.R ** 2) ** 2
    pops = np.maximum(0.0, pref * (np.sin(chi) ** 4 + np.cos(2 * chi) * np.sin(psi) ** 2))
    hi, lo = float(pops.max()), float(pops.min())
    vis = (hi - lo) / (hi + lo) if hi + lo > 0 else 0.0
    minima, maxima = _local_extrema(grid, pops)
    return FringeScan(swept_parameter=sweep, grid=grid, chi=chi, psi=psi,
                      populations=pops, visibility=vis, minima=minima, maxima=maxima)


def sharper_fringes_check(c: InterferometerConfig, samples: int = 20001) -> FringeWidths:
    """Compare the sin^4 fringe width against a two-arm sin^2 fringe.

    Requires Psi = 0 (pure sin^4 line shape).  Widths are full widths at
    half maximum of one fringe period in chi, measured on a dense grid
    with linear interpolation of the half-max crossings.
    """
    _, psi = chi_psi(c)
    if abs(psi) > 1e-12:
        raise ValueError("fringe-width comparison assumes Psi = 0")
    chi = np.linspace(0.0, np.pi, samples)
    return FringeWidths(
        fwhm_quartic=_fwhm(chi, np.sin(chi) ** 4),
        fwhm_quadratic=_fwhm(chi, np.sin(chi) ** 2),
        ratio=_fwhm(chi, np.sin(chi) ** 4) / _fwhm(chi, np.sin(chi) ** 2),
        is_sharper=_fwhm(chi, np.sin(chi) ** 4) < _fwhm(chi, np.sin(chi) ** 2))


def _fwhm(x: np.ndarray, y: np.ndarray) -> float:
    half = y.max() / 2
    above = y >= half
    idx = np.nonzero(above)[0]
    lo, hi = idx[0], idx[-1]

    def cross(i, j):
        if i < 0 or j >= len(x):
            return x[max(i, 0)]
        return x[i] + (half - y[i]) * (x[j] - x[i]) / (y[j] - y[i])

    return float(cross(hi, hi + 1) - cross(lo - 1, lo))
