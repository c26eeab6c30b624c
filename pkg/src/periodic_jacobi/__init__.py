"""Forward and inverse spectral theory for N-periodic Jacobi matrices."""
from .errors import *  # noqa: F401,F403
from .gradients import (
    b_field,
    grad_lambda_crit,
    grad_nu,
    grad_psi1,
    grad_xi,
    mo_jacobian,
    symplectic_form,
    verify_basis,
    verify_identities,
)
from .inverse import InverseOptions, InverseResult, roundtrip_check, solve_inverse
from .mo_map import MOData, mo_data, mo_map, norming_constant, pack, slit_height, unpack
from .potential import Potential, embed, project, project_gradient, random_potential, validate
from .quasimomentum import EstimateReport, KappaSample, kappa_on_real_axis, slit_data, verify_estimates
from .recurrence import (
    discriminant,
    discriminant_gradient,
    discriminant_values,
    evaluate_solutions,
    q_gradient_solutions,
    wronskian,
    wronskian_sequence,
)
from .spectrum import (
    SpectralData,
    band_edges,
    critical_points,
    dirichlet_eigenvalues,
    neumann_eigenvalues,
    spectral_data,
)

__version__ = "0.1.0"
