"""Analytic level-crossing propagators.

Two models:

* Landau-Zener (linear crossing, constant coupling): asymptotic propagator
  in the adiabatic basis, parametrized by the dimensionless
  Lambda = V0^2 / (hbar * slope).

* Parabolic double crossing (detuning quadratic in time, b > 0): under the
  independent crossing approximation (ICA) the propagator is the product
  of one Landau-Zener event per crossing joined by a pure phase
  propagator, giving a closed-form composite (alpha, beta) pair.  The
  dimensionless parameters are eps = hbar^2 a / v^3 and mu = b / v with
  scaled time tau = v t / hbar.

Only the double-crossing regime (mu > 0) is in scope; single-crossing
(b = 0) and tunneling (b < 0) parameters are rejected.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import loggamma

from .majorana import TwoLevelPropagator

__all__ = [
    "LZParams",
    "ParabolicParams",
    "CrossingDiagnostics",
    "ZenerTime",
    "lz_amplitude",
    "lz_phase",
    "lz_propagator",
    "lz_two_level",
    "zener_time_lz",
    "crossing_diagnostics",
    "dynamical_phase_sigma",
    "sigma_diabatic_approx",
    "sigma_elliptic_form",
    "composite_alpha_beta",
    "transition_prob_2level",
    "transition_prob_1_to_3",
    "IcaWarning",
]

ICA_MARGIN_WARN = 5.0


class IcaWarning(UserWarning):
    """Emitted when the independent crossing approximation is marginal."""


@dataclass(frozen=True)
class LZParams:
    """Linear-crossing parameters.

    Either construct directly from the dimensionless ``Lambda`` or from
    the diabatic slope and coupling via :meth:`from_slope_coupling`, in
    which case Lambda = v0^2 / (hbar * lambda_slope) and dimensional
    Zener times become available.
    """

    Lambda: float
    lambda_slope: float | None = None  # energy / time
    v0: float | None = None            # energy
    hbar: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.Lambda) or self.Lambda < 0:
            raise ValueError(f"Lambda must be finite and >= 0, got {self.Lambda}")

    @classmethod
    def from_slope_coupling(cls, lambda_slope: float, v0: float, hbar: float = 1.0) -> "LZParams":
        if lambda_slope <= 0 or v0 <= 0 or hbar <= 0:
            raise ValueError("slope, coupling and hbar must all be positive")
        return cls(Lambda=v0 ** 2 / (hbar * lambda_slope),
                   lambda_slope=lambda_slope, v0=v0, hbar=hbar)


@dataclass(frozen=True)
class ParabolicParams:
    """Dimensionless parabolic-model parameters (double crossing only)."""

    epsilon: float
    mu: float

    def __post_init__(self):
        if not (np.isfinite(self.epsilon) and self.epsilon > 0):
            raise ValueError(f"epsilon must be finite and > 0, got {self.epsilon}")
        if not (np.isfinite(self.mu) and self.mu > 0):
            raise ValueError(
                f"mu must be > 0 (single-crossing and tunneling regimes are out of scope), got {self.mu}"
            )

    @classmethod
    def from_raw(cls, a: float, b: float, v: float, hbar: float = 1.0) -> "ParabolicParams":
        """From the dimensional quadratic rate a, offset b and coupling v."""
        if a <= 0 or v <= 0 or hbar <= 0:
            raise ValueError("a, v and hbar must be positive")
        return cls(epsilon=hbar ** 2 * a / v ** 3, mu=b / v)

    @property
    def Lambda(self) -> float:
        """Effective Landau-Zener parameter of each crossing, 1/(2 sqrt(eps mu))."""
        return 1.0 / (2.0 * np.sqrt(self.epsilon * self.mu))

    @property
    def tau_c(self) -> float:
        """Scaled separation between the two crossings, 2 sqrt(mu/eps)."""
        return 2.0 * np.sqrt(self.mu / self.epsilon)


@dataclass(frozen=True)
class CrossingDiagnostics:
    """ICA diagnostics of a parabolic double crossing (scaled units)."""

    tau_c: float
    tau_z: float
    lambda_eff: float
    ica_margin: float   # tau_c / tau_z
    regime: str         # "adiabatic" (Lambda >= 1) or "sudden"


@dataclass(frozen=True)
class ZenerTime:
    value: float
    regime: str


def lz_amplitude(Lambda: float) -> float:
    """Off-diagonal amplitude R = exp(-pi Lambda / 2) of the LZ propagator."""
    if not np.isfinite(Lambda) or Lambda < 0:
        raise ValueError(f"Lambda must be finite and >= 0, got {Lambda}")
    return float(np.exp(-np.pi * Lambda / 2))


def lz_phase(Lambda: float) -> float:
    """Landau-Zener phase phi(Lambda).

    phi = pi/4 + (Lambda/2) ln(Lambda/(2e)) + arg Gamma(1 - i Lambda/2);
    it decreases monotonically from pi/4 at Lambda = 0 towards 0.  The
    arg-Gamma term uses the loggamma analytic continuation, which keeps
    phi continuous at large Lambda.
    """
    if not np.isfinite(Lambda) or Lambda < 0:
        raise ValueError(f"Lambda must be finite and >= 0, got {Lambda}")
    if Lambda == 0.0:
        return float(np.pi / 4)  # x ln x -> 0 limit
    return float(np.pi / 4
                 + (Lambda / 2) * np.log(Lambda / (2 * np.e))
                 + np.imag(loggamma(1 - 0.5j * Lambda)))


def lz_two_level(Lambda: float) -> TwoLevelPropagator:
    """LZ propagator in the adiabatic basis as an (alpha, beta) pair.

    alpha = sqrt(1 - R^2) e^{-i phi}, beta = -R.
    """
    r = lz_amplitude(Lambda)
    phi = lz_phase(Lambda)
    return TwoLevelPropagator(np.sqrt(max(0.0, 1.0 - r * r)) * np.exp(-1j * phi), -r)


def lz_propagator(Lambda: float) -> np.ndarray:
    """2x2 LZ propagator [[sqrt(1-R^2) e^{-i phi}, -R], [R, sqrt(1-R^2) e^{i phi}]]."""
    return lz_two_level(Lambda).as_matrix()


def zener_time_lz(params: LZParams) -> ZenerTime:
    """Zener time of a single linear crossing.

    Returns V0/lambda in the adiabatic limit and sqrt(hbar/lambda) in the
    sudden limit; the branch is selected by Lambda >= 1 (a labeled
    convention; the two branches coincide exactly at Lambda = 1).
    Requires dimensional parameters (slope and coupling).
    """
    if params.lambda_slope is None or params.v0 is None:
        raise ValueError("Zener time needs dimensional slope/coupling; "
                         "construct LZParams.from_slope_coupling")
    if params.Lambda >= 1.0:
        return ZenerTime(params.v0 / params.lambda_slope, "adiabatic")
    return ZenerTime(float(np.sqrt(params.hbar / params.lambda_slope)), "sudden")


def crossing_diagnostics(p: ParabolicParams) -> CrossingDiagnostics:
    """Scaled timescales and ICA margin of the parabolic double crossing.

    tau_c = 2 sqrt(mu/eps); tau_z is Lambda (adiabatic, Lambda >= 1) or
    sqrt(Lambda) (sudden), with Lambda = 1/(2 sqrt(eps mu)).  The margin
    tau_c/tau_z grows as 4 mu in the adiabatic limit and as
    2 sqrt(2) (mu^3/eps)^{1/4} in the sudden limit.
    """
    lam = p.Lambda
    tau_c = p.tau_c
    if lam >= 1.0:
        tau_z, regime = lam, "adiabatic"
    else:
        tau_z, regime = float(np.sqrt(lam)), "sudden"
    return CrossingDiagnostics(tau_c=tau_c, tau_z=tau_z, lambda_eff=lam,
                               ica_margin=tau_c / tau_z, regime=regime)


def sigma_diabatic_approx(p: ParabolicParams) -> float:
    """Large-mu (no-coupling) approximation 8 mu^{3/2} / (3 sqrt(eps))."""
    return 8.0 * p.mu ** 1.5 / (3.0 * np.sqrt(p.epsilon))


def dynamical_phase_sigma(p: ParabolicParams, rel_tol: float = 1e-10) -> float:
    """Adiabatic phase sigma accumulated between the crossings.

    sigma = 4 * integral_0^{sqrt(mu/eps)} sqrt((eps tau^2 - mu)^2 + 1) dtau,
    evaluated by adaptive quadrature to relative accuracy ``rel_tol``.
    Always exceeds the diabatic approximation, since the integrand
    majorizes |eps tau^2 - mu| pointwise.
    """
    if not (0 < rel_tol < 1e-2):
        raise ValueError("rel_tol out of range")
    eps, mu = p.epsilon, p.mu
    upper = np.sqrt(mu / eps)
    val, err = quad(lambda t: np.sqrt((eps * t * t - mu) ** 2 + 1.0),
                    0.0, upper, epsabs=0.0, epsrel=rel_tol / 10, limit=200)
    sigma = 4.0 * val
    if not np.isfinite(sigma) or err * 4.0 > rel_tol * sigma:
        raise ArithmeticError(
            f"sigma quadrature did not converge (estimate {sigma}, error {4 * err})"
        )
    return float(sigma)


def sigma_elliptic_form(p: ParabolicParams) -> float:
    """Cross-check of sigma via the incomplete-elliptic closed form.

    Uses mpmath's complex-argument EllipticE/EllipticF.  This exists only
    to validate the quadrature route; the quadrature is the primary
    implementation because the integrand is smooth and cheap while the
    complex elliptic branches are easy to get wrong.
    """
    import mpmath as mp

    with mp.workdps(30):
        mu = mp.mpf(p.mu)
        tau_c = 2 * mp.sqrt(mu / mp.mpf(p.epsilon))
        m = (mu - 1j) / (mu + 1j)
        phi = mp.asin(mp.sqrt(mu / (mu - 1j)))
        val = (2 * tau_c / 3) * (1 + 2 * mp.sqrt((mu + 1j) / mu)
                                 * (mu * mp.ellipe(phi, m) - 1j * mp.ellipf(phi, m)))
        if abs(mp.im(val)) > 1e-20 * abs(mp.re(val)):
            raise ArithmeticError(f"elliptic form returned a complex value: {val}")
        return float(mp.re(val))


def composite_alpha_beta(p: ParabolicParams) -> TwoLevelPropagator:
    """Closed-form ICA composite of the double crossing.

    alpha = e^{i sigma/2} [R^2 + e^{-i(sigma + 2 phi)} (1 - R^2)],
    beta  = 2 i R sqrt(1 - R^2) sin(phi + sigma/2),

    identical (not approximately) to the element-wise product of the
    transposed first-crossing propagator, the diagonal phase propagator
    and the first-crossing propagator.  The transpose at the second
    crossing accounts for the sign flip of one adiabatic state after the
    first crossing.  Warns (does not fail) when the ICA margin
    tau_c/tau_z drops below 5: the closed form is still returned, but
    only the numerical integrator can quantify its error there.
    """
    diag = crossing_diagnostics(p)
    if diag.ica_margin < ICA_MARGIN_WARN:
        warnings.warn(
            f"ICA margin tau_c/tau_z = {diag.ica_margin:.2f} < {ICA_MARGIN_WARN}; "
            "the composite propagator may be inaccurate",
            IcaWarning, stacklevel=2)
    r = lz_amplitude(p.Lambda)
    phi = lz_phase(p.Lambda)
    sigma = dynamical_phase_sigma(p)
    alpha = np.exp(0.5j * sigma) * (r * r + np.exp(-1j * (sigma + 2 * phi)) * (1 - r * r))
    beta = 2j * r * np.sqrt(1 - r * r) * np.sin(phi + sigma / 2)
    return TwoLevelPropagator(alpha, beta)


def transition_prob_2level(p: ParabolicParams) -> float:
    """P(1 -> 2) = |beta|^2 = 4 R^2 (1 - R^2) sin^2(sigma/2 + phi)."""
    r = lz_amplitude(p.Lambda)
    phi = lz_phase(p.Lambda)
    sigma = dynamical_phase_sigma(p)
    return float(4 * r * r * (1 - r * r) * np.sin(sigma / 2 + phi) ** 2)


def transition_prob_1_to_3(p: ParabolicParams) -> float:
    """Three-level end-to-end probability P(1 -> 3) = |beta|^4."""
    return transition_prob_2level(p) ** 2
