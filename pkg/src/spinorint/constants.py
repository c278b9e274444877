"""Physical constants and unit conversions used across the package.

Values are CODATA 2018. They are pinned here (instead of pulled from
scipy.constants) so that emitted numbers are identical across scipy
versions.
"""

HBAR = 1.054571817e-34          # J s
MU_BOHR = 9.2740100783e-24      # J / T
BOHR_RADIUS = 5.29177210903e-11  # m
ATOMIC_MASS = 1.66053906660e-27  # kg

GAUSS = 1e-4                    # T per Gauss
CM3 = 1e-6                      # m^3 per cm^3
