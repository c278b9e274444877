"""The three-arm interferometer signal and what shapes it.

Three panels:
  1) output population vs the common phase chi for several splittings R:
     the fringe amplitude 16 R^4 (1-R^2)^2 peaks at R = 1/sqrt(2);
  2) the differential arm phase Psi lifts the fringe minima: reading the
     min/max contrast off a chi scan measures Psi;
  3) the sin^4 line shape is sharper than a two-arm sin^2 fringe.
"""

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from spinorint import InterferometerConfig, fringe_scan, sharper_fringes_check, visibility_prefactor

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

chi = np.linspace(0.0, 2 * np.pi, 1200)
fig, axes = plt.subplots(1, 3, figsize=(12.5, 3.6))

for r in (0.45, 1 / np.sqrt(2), 0.9):
    c = InterferometerConfig(R=r, phi=0.0, sigma=0.0)
    scan = fringe_scan(c, "chi", chi)
    axes[0].plot(chi, scan.populations, label=f"R={r:.2f}")
axes[0].set_title("fringe amplitude vs splitting")
axes[0].legend()

for psi_4 in (0.0, np.pi / 8, np.pi / 4):
    c = InterferometerConfig(R=1 / np.sqrt(2), phi=0.0, sigma=0.0,
                             theta1=2 * psi_4, theta_m1=-2 * psi_4)
    scan = fringe_scan(c, "chi", chi)
    axes[1].plot(chi, scan.populations,
                 label=rf"$\Psi={psi_4 / np.pi:.3f}\pi$, vis={scan.visibility:.2f}")
axes[1].set_title("arm-phase difference lifts the minima")
axes[1].legend()

axes[2].plot(chi, np.sin(chi) ** 4, label=r"three-arm $\sin^4\chi$")
axes[2].plot(chi, np.sin(chi) ** 2, "--", label=r"two-arm $\sin^2\chi$")
axes[2].set_title("sharper fringes with three arms")
axes[2].legend()
for ax in axes:
    ax.set_xlabel(r"$\chi$")
    ax.set_ylabel(r"$P_{+1\to-1}$")
fig.tight_layout()
fig.savefig(os.path.join(OUT, "interferometer_fringes.png"), dpi=150)
print("wrote", os.path.join(OUT, "interferometer_fringes.png"))

widths = sharper_fringes_check(InterferometerConfig(R=1 / np.sqrt(2), phi=0.0, sigma=0.0))
print(f"\nFWHM: sin^4 fringe {widths.fwhm_quartic:.4f} rad "
      f"vs sin^2 fringe {widths.fwhm_quadratic:.4f} rad "
      f"(ratio {widths.ratio:.3f})")
r_grid = np.linspace(0.05, 0.99, 500)
best = r_grid[np.argmax([visibility_prefactor(r) for r in r_grid])]
print(f"fringe amplitude maximal near R = {best:.4f} (1/sqrt(2) = {1 / np.sqrt(2):.4f})")
