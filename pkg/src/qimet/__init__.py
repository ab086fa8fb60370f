"""Distances between finite metric spaces: Gromov-Hausdorff, quasi-isometric
distance, and the correspondence metric D, with exact and heuristic solvers."""

from .correspondence import (
    Correspondence,
    MapPair,
    QiParams,
    coupling,
    dis,
    dis_map,
    qdis,
    union_correspondence,
)
from .dmetric import bound_d_from_qhat, bound_qhat_from_d, compose_correspondences, d_exact, d_search, solve_d
from .errors import (
    AsymmetricMatrix,
    BadExponent,
    BudgetExceeded,
    MetricSpaceError,
    NegativeEntry,
    NonpositiveAlpha,
    OutOfRange,
    SizeMismatch,
    TriangleViolation,
    ZeroOffDiagonal,
)
from .ghdist import eps_isometry_check, gh_exact, gh_lower_bound_diam, gh_search, pointed_gh_check, solve_gh
from .interpolation import InterpolationFamily, path_length_estimate, sample, step_bound, step_distortion
from .metricspace import (
    P_INF,
    FiniteMetricSpace,
    PointedSpace,
    PseudoMetricSpace,
    diameter,
    gen_interpolated_norm_grid,
    gen_lp_grid,
    gen_polyline_chain,
    gen_scaled_lattice,
    load_space,
    quotient,
    save_space,
    validate,
)
from .qidist import (
    QiCertificate,
    compose_params,
    min_r_for_pair,
    qhat_exact,
    qhat_search,
    rho,
    solve_qhat,
    triangle_bound_qhat,
    upgrade_dense_embedding,
    verify_qi,
)
from .search import SearchBudget, SearchResult

__version__ = "0.1.0"
