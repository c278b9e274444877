"""Multilevel level-crossing interferometry in spinor condensates.

Building blocks, bottom to top:

* :mod:`spinorint.spin_algebra` -- spin operators, unitarity checks,
  Hermitian matrix exponentials.
* :mod:`spinorint.majorana` -- lift of a two-level propagator to 2F+1
  levels.
* :mod:`spinorint.crossings` -- analytic Landau-Zener and parabolic
  double-crossing propagators with ICA diagnostics.
* :mod:`spinorint.tdse` -- adaptive unitary integrator of the
  time-dependent Schrodinger equation; the numerical ground truth.
* :mod:`spinorint.spinor_gp` -- spin-1 single-mode collisional phase
  dynamics between the crossings.
* :mod:`spinorint.interferometer` -- composed interferometer propagator,
  output population and fringe scans.
* :mod:`spinorint.fields` -- laboratory field values to model parameters.
* :mod:`spinorint.cli` -- ``spinorint`` command-line interface.
"""

__version__ = "0.1.0"

from .spin_algebra import (
    SpinOperators,
    make_spin_operators,
    compose,
    is_unitary,
    expm_hermitian_generator,
)
from .majorana import TwoLevelPropagator, lift, lift_diagonal_phase
from .crossings import (
    LZParams,
    ParabolicParams,
    CrossingDiagnostics,
    lz_amplitude,
    lz_phase,
    lz_propagator,
    lz_two_level,
    zener_time_lz,
    crossing_diagnostics,
    dynamical_phase_sigma,
    sigma_diabatic_approx,
    sigma_elliptic_form,
    composite_alpha_beta,
    transition_prob_2level,
    transition_prob_1_to_3,
)
from .tdse import (
    HamiltonianSpec,
    IntegrationWindow,
    OracleResult,
    IntegrationError,
    build_hamiltonian,
    integrate,
    compare_with_ica,
    sigma_scan_comparison,
)
from .spinor_gp import (
    SpeciesParams,
    SMAState,
    GPPhases,
    load_species,
    coupling_constants,
    spin_mixing_rate_bound,
    sma_rhs,
    integrate_sma,
    extract_gp_propagator,
)
from .interferometer import (
    InterferometerConfig,
    FringeScan,
    total_propagator,
    population_1_to_m1,
    chi_psi,
    fringe_scan,
    sharper_fringes_check,
    visibility_prefactor,
    config_from_crossing,
)
from .fields import LabFields, MappedParams, map_fields, validate_ica, load_lab_config
