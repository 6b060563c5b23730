"""Centroid-free fuzzy k-means clustering on pairwise distance matrices.

The solver minimizes a membership-regularized within-cluster distance sum
directly over the fuzzy membership matrix; cluster centroids never appear.
Any nonnegative zero-diagonal distance matrix works: squared Euclidean,
mutual k-NN graph distance, Butterworth-filtered similarity, or Gaussian
kernel-induced distance.
"""

from .baselines import (
    FcmConfig,
    centerless_objective_exact,
    fcm_fit,
    fcm_membership,
    kmeans_fit,
    kmeans_pp_init,
    optimal_centroids,
    rsfkm_objective,
)
from .dataset import (
    canonicalize_labels,
    gaussian_blobs,
    load_labels,
    load_matrix_csv,
    write_labels,
    write_matrix_csv,
)
from .distance import (
    DistanceMatrix,
    butterworth_distance_matrix,
    default_kernel_width,
    default_omega,
    kernel_distance_matrix,
    knn_distance_matrix,
    squared_euclidean_matrix,
    validate_distance_matrix,
)
from .errors import NumericError, ValidationError
from .estimator import CentroidFreeFuzzyKMeans
from .metrics import (
    ContingencyTable,
    accuracy,
    align_labels,
    contingency_table,
    nmi,
    purity_majority,
    purity_pairs,
)
from .solver import (
    SolverConfig,
    SolverState,
    analytic_gradient,
    fit,
    hard_labels,
    init_membership,
    initial_state,
    iterate_once,
    objective,
)

__version__ = "0.1.0"

__all__ = [
    "CentroidFreeFuzzyKMeans",
    "ContingencyTable",
    "DistanceMatrix",
    "FcmConfig",
    "NumericError",
    "SolverConfig",
    "SolverState",
    "ValidationError",
    "accuracy",
    "align_labels",
    "analytic_gradient",
    "butterworth_distance_matrix",
    "canonicalize_labels",
    "centerless_objective_exact",
    "contingency_table",
    "default_kernel_width",
    "default_omega",
    "fcm_fit",
    "fcm_membership",
    "fit",
    "gaussian_blobs",
    "hard_labels",
    "init_membership",
    "initial_state",
    "iterate_once",
    "kernel_distance_matrix",
    "kmeans_fit",
    "kmeans_pp_init",
    "knn_distance_matrix",
    "load_labels",
    "load_matrix_csv",
    "nmi",
    "objective",
    "optimal_centroids",
    "purity_majority",
    "purity_pairs",
    "rsfkm_objective",
    "squared_euclidean_matrix",
    "validate_distance_matrix",
    "write_labels",
    "write_matrix_csv",
]
