"""Photon addition and subtraction on squeezed vacuum states.

Adding a photon to a pure squeezed vacuum produces, after renormalization,
exactly the same state as subtracting one — and the same holds for incoherent
mixtures of equally squeezed pure states, while impure, displaced or
unequal-width inputs break the coincidence. This package implements the
closed gaussian forms, a truncated number-basis route and a phase-space grid
route for these operations, together with cross-representation checks that
the three descriptions agree.
"""

from .errors import (ConfigurationError, DegenerateInputError, DomainError,
                     GeometryError, SqvacError, TruncationError)
from .fock import (DensityMatrix, FockVector, OutcomeRatio, SqueezeParams,
                   StateMetrics, annihilate, bogoliubov_annihilate,
                   coherent_state, create, displacement_operator,
                   lowering_matrix, outcome_ratio, quadrature_moments,
                   squeeze_operator, squeezed_vacuum, state_metrics,
                   suggested_truncation)
from .gaussian import (AngularAverageSpec, GaussianComponent, GaussianWignerSpec,
                       added_outcome_value, amplitude_ratio,
                       angular_average_purity, angular_average_value,
                       norm_ratio, outcome_factors, spec_norm_ratio,
                       squeeze_parameter, squeezed_wavefunction,
                       subtracted_outcome_value, wigner_value)
from .phasespace import (GridGeometry, GridReport, IdentityCheck, WignerGrid,
                         add_photon, default_geometry, grid_metrics,
                         identity_residual, l1_relative_residual,
                         photon_outcomes, policy_extent, rasterize,
                         refined_geometry, renormalize, sub_photon,
                         wigner_from_density)
from .special import (bessel_i0, bessel_i0_scaled, elliptic_k, hermite_psi,
                      hermite_psi_table)
from .verify import (SUITE_NAMES, CaseResult, SuiteConfig, VerificationReport,
                     figure_data, run_all, run_suite)

__version__ = "0.1.0"
