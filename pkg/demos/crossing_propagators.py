"""Single linear crossing: amplitude, phase and the three-level lift.

Sweeps the crossing parameter Lambda, plots the per-crossing amplitude
R = exp(-pi Lambda / 2) and the crossing phase phi(Lambda), and prints the
two-level propagator next to its three-level lift at one operating point.
"""

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from spinorint import lz_amplitude, lz_phase, lz_propagator, lz_two_level, lift

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

lambdas = np.linspace(0.0, 6.0, 400)
r_vals = [lz_amplitude(x) for x in lambdas]
phi_vals = [lz_phase(x) for x in lambdas]

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.4))
ax1.plot(lambdas, r_vals)
ax1.axhline(1 / np.sqrt(2), ls="--", c="gray", lw=0.8)
ax1.set_xlabel(r"$\Lambda$")
ax1.set_ylabel(r"$R$")
ax1.set_title("splitting amplitude (dashed: balanced 50/50)")
ax2.plot(lambdas, phi_vals)
ax2.set_xlabel(r"$\Lambda$")
ax2.set_ylabel(r"$\phi$")
ax2.set_title(r"crossing phase: $\pi/4 \to 0$")
fig.tight_layout()
fig.savefig(os.path.join(OUT, "lz_amplitude_phase.png"), dpi=150)
print("wrote", os.path.join(OUT, "lz_amplitude_phase.png"))

# a balanced beam splitter sits at R = 1/sqrt(2), i.e. Lambda = ln(2)/pi
lam_balanced = np.log(2) / np.pi
print(f"\nbalanced splitting at Lambda = ln(2)/pi = {lam_balanced:.6f}")
print("two-level propagator:")
print(np.round(lz_propagator(lam_balanced), 6))
print("\nthree-level lift (each crossing mixes all three Zeeman components):")
print(np.round(lift(lz_two_level(lam_balanced), 3), 6))
print("\nfive-level lift, first column magnitudes (binomial splitting):")
u5 = lift(lz_two_level(lam_balanced), 5)
print(np.round(np.abs(u5[:, 0]) ** 2, 6), "sum:", np.abs(u5[:, 0] @ u5[:, 0].conj()).round(12))
