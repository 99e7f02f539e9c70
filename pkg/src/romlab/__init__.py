"""Stability of projection-based reduced-order models.

Spectral diagnostics (numerical range, pseudospectra, transient growth),
Krylov and POD reduction, bounds on the Ritz values of orthogonal
projections, constructions that force unstable reduced models, and a
filtered-restart stabilization loop.
"""

__version__ = "0.1.0"

from .adversarial import (
    GreenbaumPrescription,
    RitzPrescription,
    greenbaum_system,
    prescribed_ritz_system,
    verify_greenbaum,
    verify_prescribed_ritz,
)
from .bounds import (
    check_rom_disks,
    check_rom_strips,
    count_unstable,
    disk_bounds,
    strip_bounds,
    strip_interval,
    unstable_subspace,
)
from .diagnostics import (
    hermitian_part,
    in_numerical_range,
    numerical_abscissa,
    numerical_radius,
    numerical_range_boundary,
    pseudo_abscissa_estimate,
    pseudo_radius_estimate,
    pseudospectra_grid,
    spectral_summary,
    stone_bound_check,
    transient_envelope_continuous,
    transient_envelope_discrete,
    transient_lower_bound,
)
from .errors import *  # noqa: F403
from .gallery import dm12_demo, geometric_superdiag, greenbaum_demo, toeplitz_tridiag
from .krylov import arnoldi, bilanczos, block_arnoldi, filtered_start_vector, pod_basis, shift_invert_basis
from .linalg import TOL
from .stabilization import compare_transients, numerical_abscissa_comparison, stabilize_by_restart
from .systems import (
    LTISystem,
    ReducedModel,
    moments,
    project_oblique,
    project_orthogonal,
    simulate_discrete,
    simulate_homogeneous,
    transfer_function,
    verify_moment_match,
)
