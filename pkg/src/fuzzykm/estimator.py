"""Estimator-style wrapper around the centroid-free solver."""

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .distance import (
    default_kernel_width,
    kernel_distance_matrix,
    knn_distance_matrix,
    squared_euclidean_matrix,
    validate_distance_matrix,
)
from .errors import ValidationError
from .solver import SolverConfig, fit as solver_fit, hard_labels
from .validation import check_data_matrix


class CentroidFreeFuzzyKMeans(ClusterMixin, BaseEstimator):
    """Fuzzy k-means on a pairwise distance matrix, no centroids.

    Parameters
    ----------
    n_clusters : number of clusters K.
    lam : membership regularization weight; larger values push memberships
        toward uniform, lam = 0 recovers hard assignments in the limit.
    distance : one of "euclidean" (squared Euclidean from features), "knn"
        (mutual k-nearest-neighbor graph distance), "kernel" (Gaussian
        kernel-induced squared feature-space distance), or "precomputed"
        (X is already an N x N distance matrix).
    knn_k : neighbor count for distance="knn".
    kernel_width : bandwidth for distance="kernel"; None picks the median
        pairwise distance.
    tol, max_iter, seed : solver stopping rule and initialization seed.

    Attributes set by fit: membership_, labels_, objective_, n_iter_,
    converged_, objective_trace_.

    There is no out-of-sample predict: memberships are defined only for
    the samples whose pairwise distances were clustered. Use fit_predict.
    """

    def __init__(
        self,
        n_clusters: int = 3,
        lam: float = 10.0,
        distance: str = "euclidean",
        knn_k: int = 10,
        kernel_width: float | None = None,
        tol: float = 1e-3,
        max_iter: int = 2000,
        seed: int = 0,
    ):
        self.n_clusters = n_clusters
        self.lam = lam
        self.distance = distance
        self.knn_k = knn_k
        self.kernel_width = kernel_width
        self.tol = tol
        self.max_iter = max_iter
        self.seed = seed

    def _distance_matrix(self, x: np.ndarray) -> np.ndarray:
        if self.distance == "precomputed":
            validate_distance_matrix(x)
            return np.asarray(x, dtype=float)
        x = check_data_matrix(x)
        if self.distance == "euclidean":
            return squared_euclidean_matrix(x).values
        if self.distance == "knn":
            return knn_distance_matrix(x, self.knn_k).values
        if self.distance == "kernel":
            width = self.kernel_width
            if width is None:
                width = default_kernel_width(x)
            return kernel_distance_matrix(x, width).values
        raise ValidationError(
            f"unknown distance {self.distance!r}; expected euclidean, knn, "
            "kernel, or precomputed"
        )

    def fit(self, X, y=None):
        d = self._distance_matrix(np.asarray(X, dtype=float))
        cfg = SolverConfig(
            lam=self.lam, tol=self.tol, max_iter=self.max_iter, seed=self.seed
        )
        state = solver_fit(d, self.n_clusters, cfg)
        self.membership_ = state.membership
        self.labels_ = hard_labels(state.membership)
        self.objective_ = state.objective_final
        self.n_iter_ = state.n_iter
        self.converged_ = state.converged
        self.objective_trace_ = state.trace_pairs()
        return self
