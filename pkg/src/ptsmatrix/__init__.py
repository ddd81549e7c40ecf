"""Analytically continued S-matrices of 1-D Schroedinger operators with
compactly supported, possibly PT-symmetric potentials."""
from .coeffs import ScatteringCoefficients, point_interaction_coefficients, scattering_coefficients
from .estimators import MetricRecovery, SMatrixTransformer
from .exceptions import *  # noqa: F401,F403
from .imageset import (BoundaryData, TkMatrix, boundary_triplet_coords, delta_k, tk_closed_form,
                       tk_from_boundary_data, traveling_wave_boundary_values)
from .inverse import MetricEstimate, c_operator, constrain_Q, recover_metric
from .potential import (Free, PiecewiseConstant, PointInteraction, Sampled, pt_step_well,
                        pt_symmetry_residual, square_well, support_radius)
from .propagate import beta_from_gamma, transfer_matrix, transfer_matrix_sampled
from .smatrix import (Route, SMatrixSample, Status, smatrix_from_coeffs, smatrix_from_tk, smatrix_grid,
                      smatrix_sample)
from .verify import (check_contraction, check_hermitian_analyticity, check_metric_relations,
                     check_pt_relation, verify_potential)

__version__ = "0.1.0"
