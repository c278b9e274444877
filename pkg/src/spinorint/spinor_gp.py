"""Spin-1 condensate phase dynamics between crossings (single-mode).

Between the two crossings the magnetic sweep is fast compared with spin
mixing, so collisional dynamics only rotates the phases of the spinor
components.  This module integrates the uniform single-mode reduction of
the spin-1 coupled equations

    i hbar dz1/dt  = ls n z1  + la n (z0^2 conj(z-1) + (N1 + N0 - N-1) z1)
    i hbar dz0/dt  = ls n z0  + la n (2 z1 z-1 conj(z0) + (N1 + N-1) z0)
    i hbar dz-1/dt = ls n z-1 + la n (z0^2 conj(z1) + (N-1 + N0 - N1) z-1)

(kinetic and trap terms dropped, density n a constant parameter,
N_m = |z_m|^2) and extracts the diagonal phase propagator

    U_gp = diag(e^{i theta1}, 1, e^{-i theta_m1})

with the m = 0 phase gauged to zero.  The symmetric coupling ls
contributes only a common phase, which the gauge removes; the
antisymmetric coupling la drives spin mixing, whose rate is bounded by
gamma = 4 |la| n_max / hbar.

Basis ordering is (m=+1, m=0, m=-1) everywhere.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from importlib import resources

import numpy as np
from scipy.integrate import solve_ivp

from .constants import BOHR_RADIUS, CM3, HBAR

__all__ = [
    "SpeciesParams",
    "SMAState",
    "SMATrajectory",
    "GPPhases",
    "load_species",
    "coupling_constants",
    "spin_mixing_rate_bound",
    "sma_rhs",
    "integrate_sma",
    "extract_gp_propagator",
]


@dataclass(frozen=True)
class SpeciesParams:
    """Scattering and Zeeman data of an F=1 species."""

    name: str
    a0_bohr: float
    a2_bohr: float
    mass_kg: float
    g_F: float
    n_max_cm3: float
    citation: str = ""

    def __post_init__(self):
        if self.mass_kg <= 0:
            raise ValueError("mass must be positive")
        if self.n_max_cm3 <= 0:
            raise ValueError("peak density must be positive")


@dataclass(frozen=True)
class SMAState:
    """Normalized spinor amplitudes (z1, z0, zm1) at fixed density."""

    zeta: np.ndarray
    density_cm3: float
    time_s: float = 0.0

    def __post_init__(self):
        z = np.asarray(self.zeta, dtype=complex)
        if z.shape != (3,):
            raise ValueError("zeta must hold exactly three amplitudes")
        if abs(np.sum(np.abs(z) ** 2) - 1.0) > 1e-9:
            raise ValueError("zeta must be normalized to 1e-9")
        object.__setattr__(self, "zeta", z)


@dataclass(frozen=True)
class SMATrajectory:
    times: np.ndarray           # seconds
    zetas: np.ndarray           # (len(times), 3) complex
    density_cm3: float
    species: SpeciesParams


@dataclass(frozen=True)
class GPPhases:
    """Relative phases defining diag(e^{i theta1}, 1, e^{-i theta_m1})."""

    theta1: float
    theta_m1: float

    def propagator(self) -> np.ndarray:
        return np.diag([np.exp(1j * self.theta1), 1.0, np.exp(-1j * self.theta_m1)])


def load_species(name: str, path=None, n_max_cm3: float = 1e14) -> SpeciesParams:
    """Load a species from the bundled (or a user-supplied) constants file."""
    cfg = configparser.ConfigParser()
    if path is None:
        with resources.files("spinorint").joinpath("data/species.ini").open() as fh:
            cfg.read_file(fh)
    else:
        if not cfg.read(path):
            raise OSError(f"cannot read species file {path}")
    if name not in cfg:
        raise ValueError(f"unknown species {name!r}; available: {cfg.sections()}")
    sec = cfg[name]
    return SpeciesParams(
        name=name,
        a0_bohr=sec.getfloat("a0_bohr"),
        a2_bohr=sec.getfloat("a2_bohr"),
        mass_kg=sec.getfloat("mass_kg"),
        g_F=sec.getfloat("g_F"),
        n_max_cm3=n_max_cm3,
        citation=sec.get("citation", ""),
    )


def coupling_constants(s: SpeciesParams) -> tuple[float, float]:
    """Symmetric and antisymmetric couplings (lambda_s, lambda_a) in J m^3.

    lambda_s = 4 pi hbar^2 (a0 + 2 a2) / (3 m),
    lambda_a = 4 pi hbar^2 (a2 - a0) / (3 m).
    """
    a0 = s.a0_bohr * BOHR_RADIUS
    a2 = s.a2_bohr * BOHR_RADIUS
    pref = 4 * np.pi * HBAR ** 2 / (3 * s.mass_kg)
    return pref * (a0 + 2 * a2), pref * (a2 - a0)


def spin_mixing_rate_bound(s: SpeciesParams) -> float:
    """Population mixing rate bound gamma = 4 |lambda_a| n_max / hbar (1/s)."""
    _, lam_a = coupling_constants(s)
    return 4 * abs(lam_a) * (s.n_max_cm3 / CM3) / HBAR


def sma_rhs(state: SMAState, s: SpeciesParams) -> np.ndarray:
    """Time derivative d zeta / dt of the single-mode amplitudes."""
    lam_s, lam_a = coupling_constants(s)
    n = state.density_cm3 / CM3
    cs = lam_s * n / HBAR
    ca = lam_a * n / HBAR
    z1, z0, zm1 = state.zeta
    n1, n0, nm1 = np.abs(state.zeta) ** 2
    dz1 = -1j * (cs * z1 + ca * (z0 * z0 * np.conj(zm1) + (n1 + n0 - nm1) * z1))
    dz0 = -1j * (cs * z0 + ca * (2 * z1 * zm1 * np.conj(z0) + (n1 + nm1) * z0))
    dzm1 = -1j * (cs * zm1 + ca * (z0 * z0 * np.conj(z1) + (nm1 + n0 - n1) * zm1))
    return np.array([dz1, dz0, dzm1])


def integrate_sma(initial: SMAState, s: SpeciesParams, duration: float,
                  rel_tol: float = 1e-10, samples: int = 257) -> SMATrajectory:
    """Integrate the single-mode equations for ``duration`` seconds.

    The dynamics is slow and smooth (rates of order gamma), so an
    adaptive Runge-Kutta integrator from scipy is entirely adequate; the
    returned trajectory conserves the norm and the magnetization
    |z1|^2 - |z-1|^2 to well below 1e-9.
    """
    if duration <= 0:
        raise ValueError("duration must be positive")
    if samples < 3:
        raise ValueError("need at least 3 samples")
    if initial.density_cm3 > s.n_max_cm3 * (1 + 1e-12):
        raise ValueError("state density exceeds the species peak density")

    lam_s, lam_a = coupling_constants(s)
    n = initial.density_cm3 / CM3
    cs = lam_s * n / HBAR
    ca = lam_a * n / HBAR

    def rhs(_t, z):
        z1, z0, zm1 = z
        n1, n0, nm1 = abs(z1) ** 2, abs(z0) ** 2, abs(zm1) ** 2
        return [
            -1j * (cs * z1 + ca * (z0 * z0 * np.conj(zm1) + (n1 + n0 - nm1) * z1)),
            -1j * (cs * z0 + ca * (2 * z1 * zm1 * np.conj(z0) + (n1 + nm1) * z0)),
            -1j * (cs * zm1 + ca * (z0 * z0 * np.conj(z1) + (nm1 + n0 - n1) * zm1)),
        ]

    times = initial.time_s + np.linspace(0.0, duration, samples)
    sol = solve_ivp(rhs, (times[0], times[-1]), initial.zeta, t_eval=times,
                    method="DOP853", rtol=rel_tol, atol=rel_tol * 1e-3)
    if not sol.success:
        raise RuntimeError(f"single-mode integration failed: {sol.message}")
    return SMATrajectory(times=times, zetas=sol.y.T.copy(),
                         density_cm3=initial.density_cm3, species=s)


def extract_gp_propagator(traj: SMATrajectory,
                          max_population_change: float = 0.01) -> tuple[GPPhases, np.ndarray]:
    """Phases (theta1, theta_m1) and the 3x3 diagonal propagator.

    theta1 is the phase advance of z1 relative to z0 over the trajectory;
    theta_m1 carries the sign convention that makes the propagator exactly
    diag(e^{i theta1}, 1, e^{-i theta_m1}).  Phases are unwrapped along
    the sampled trajectory, so the extraction is insensitive to global
    phase and to winding.  Raises when populations move by more than
    ``max_population_change``, since the pure-phase propagator model is
    then invalid.  Components that stay unpopulated contribute zero phase.
    """
    pops = np.abs(traj.zetas) ** 2
    drift = np.abs(pops - pops[0]).max()
    if drift > max_population_change:
        raise ValueError(
            f"populations changed by {drift:.3e} > {max_population_change}; "
            "the phase-propagator model does not apply"
        )
    angles = np.unwrap(np.angle(traj.zetas), axis=0)
    dphi = angles[-1] - angles[0]
    theta1 = float(dphi[0] - dphi[1])
    theta_m1 = float(-(dphi[2] - dphi[1]))
    phases = GPPhases(theta1=theta1, theta_m1=theta_m1)
    return phases, phases.propagator()
