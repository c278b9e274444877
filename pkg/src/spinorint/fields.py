"""Laboratory magnetic-field parameters -> dimensionless model parameters.

A linear-Zeeman F=1 atom in a transverse coupling field B_x and a bias
field B_z(t) sweeping quadratically through zero realizes the parabolic
double crossing.  With v = |g_F| mu_B B_x / 2 the identifications give

    mu      = |B_z(0)| / B_x
    eps*mu  = (hbar |dB_z/dt|_c / (|g_F| mu_B B_x^2))^2
    t_c     = 4 |B_z(0)| / |dB_z/dt|_c

where |dB_z/dt|_c is the sweep rate at the crossings.  mu and t_c carry
no g_F dependence; at g_F = 1/2 the eps*mu expression reduces to
(2 hbar Bdot / (mu_B B_x^2))^2.

Zener time convention
---------------------
``t_z`` follows the estimate conventionally quoted for this setup,

    adiabatic:  t_z = B_x / (2 Bdot)           [when Lambda >= 1]
    sudden:     t_z = sqrt(2 hbar / (mu_B Bdot))  [when Lambda < 1]

i.e. both branches of the single-crossing formula evaluated with the
effective slope mu_B Bdot / 2 and coupling mu_B B_x / 4, carrying no g_F
dependence.  Note that this display convention is NOT the tau = v t/hbar
rescaling of the dimensionless Zener time in
:func:`spinorint.crossings.crossing_diagnostics`: at g_F = 1/2 that
rescaling gives sqrt(2) * t_z in the sudden branch and 2 * t_z in the
adiabatic branch.  t_c, by contrast, rescales exactly.  The estimate is
only ever used for the order-of-magnitude ICA margin check, where the
sqrt(2) is immaterial.

Units: fields in Gauss, rates in Gauss/s, times in seconds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import GAUSS, HBAR, MU_BOHR

__all__ = [
    "LabFields",
    "MappedParams",
    "IcaValidation",
    "map_fields",
    "validate_ica",
    "load_lab_config",
]


@dataclass(frozen=True)
class LabFields:
    """Coupling field, bias at the sweep midpoint, sweep rate, g-factor."""

    B_x_gauss: float
    B_z0_gauss: float
    Bdot_gauss_per_s: float
    g_F: float = 0.5

    def __post_init__(self):
        for nm in ("B_x_gauss", "B_z0_gauss", "Bdot_gauss_per_s"):
            val = getattr(self, nm)
            if not (np.isfinite(val) and val > 0):
                raise ValueError(f"{nm} must be positive, got {val}")
        if self.g_F == 0 or not np.isfinite(self.g_F):
            raise ValueError("g_F must be finite and nonzero")


@dataclass(frozen=True)
class MappedParams:
    epsilon: float
    mu: float
    t_c_s: float
    t_z_s: float
    R: float
    Lambda: float
    regime: str          # "adiabatic" or "sudden"
    v_coupling_J: float  # |g_F| mu_B B_x / 2, for scaled-time conversions


@dataclass(frozen=True)
class IcaValidation:
    ok: bool
    ratio: float      # t_c / t_z
    margin: float


def map_fields(f: LabFields) -> MappedParams:
    """Derive (eps, mu), timescales and the per-crossing amplitude R."""
    bx = f.B_x_gauss * GAUSS
    bdot = f.Bdot_gauss_per_s * GAUSS
    g = abs(f.g_F)

    mu = f.B_z0_gauss / f.B_x_gauss
    sqrt_epsmu = HBAR * bdot / (g * MU_BOHR * bx * bx)
    epsilon = sqrt_epsmu ** 2 / mu
    t_c = 4.0 * f.B_z0_gauss / f.Bdot_gauss_per_s
    lam = 1.0 / (2.0 * sqrt_epsmu)
    r = float(np.exp(-np.pi * lam / 2))

    if lam >= 1.0:
        regime = "adiabatic"
        t_z = f.B_x_gauss / (2.0 * f.Bdot_gauss_per_s)
    else:
        regime = "sudden"
        t_z = float(np.sqrt(2.0 * HBAR / (MU_BOHR * bdot)))

    return MappedParams(epsilon=epsilon, mu=mu, t_c_s=t_c, t_z_s=t_z,
                        R=r, Lambda=lam, regime=regime,
                        v_coupling_J=g * MU_BOHR * bx / 2)


def validate_ica(m: MappedParams, margin: float = 5.0) -> IcaValidation:
    """Check t_c / t_z >= margin (margin must exceed 1 to mean anything)."""
    if not (np.isfinite(margin) and margin > 1.0):
        raise ValueError(f"margin must be > 1, got {margin}")
    ratio = m.t_c_s / m.t_z_s
    return IcaValidation(ok=ratio >= margin, ratio=ratio, margin=margin)


def load_lab_config(path) -> LabFields:
    """Read a key-value lab configuration file.

    Expected keys (one ``key = value`` pair per line, '#' comments):
    B_x_gauss, B_z0_gauss, Bdot_gauss_per_s, g_F.
    """
    values: dict[str, float] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key, _, val = line.partition("=")
            values[key.strip()] = float(val.strip())
    required = {"B_x_gauss", "B_z0_gauss", "Bdot_gauss_per_s"}
    missing = required - values.keys()
    if missing:
        raise ValueError(f"{path}: missing keys {sorted(missing)}")
    return LabFields(B_x_gauss=values["B_x_gauss"],
                     B_z0_gauss=values["B_z0_gauss"],
                     Bdot_gauss_per_s=values["Bdot_gauss_per_s"],
                     g_F=values.get("g_F", 0.5))
