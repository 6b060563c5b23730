"""Reference algorithms and centroid-based oracles.

These exist to cross-check the centroid-free solver: k-means (Lloyd with
careful seeding), standard fuzzy c-means, the weighted-mean centroid
formula, and two forms of the regularized soft k-means objective whose
equality with the distance-only objective is the core identity the solver
relies on.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .validation import check_data_matrix, check_membership


@dataclass
class FcmConfig:
    """Fuzzy c-means hyperparameters; fuzzifier must exceed 1 because the
    membership update divides by (fuzzifier - 1)."""

    fuzzifier: float = 2.0
    tol: float = 1e-5
    max_iter: int = 300
    seed: int = 0

    def __post_init__(self):
        if not self.fuzzifier > 1:
            raise ValidationError(f"fuzzifier must be > 1, got {self.fuzzifier}")
        if not self.tol > 0:
            raise ValidationError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValidationError(f"max_iter must be >= 1, got {self.max_iter}")


def _pairwise_sq(x: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = x[:, None, :] - centroids[None, :, :]
    return np.einsum("ilm,ilm->il", diff, diff)


def kmeans_pp_init(x, k: int, seed: int = 0) -> np.ndarray:
    """Careful seeding: first centroid uniform over samples, each next one
    drawn with probability proportional to squared distance to the nearest
    centroid chosen so far. Falls back to uniform when all remaining
    distances are zero (duplicate-only data)."""
    x = check_data_matrix(x)
    n = x.shape[0]
    if not 1 <= k <= n:
        raise ValidationError(f"need 1 <= k <= n, got k={k}, n={n}")
    rng = np.random.default_rng(seed)
    chosen = np.empty(k, dtype=np.int64)
    chosen[0] = rng.integers(n)
    nearest_sq = ((x - x[chosen[0]]) ** 2).sum(axis=1)
    for m in range(1, k):
        total = nearest_sq.sum()
        if total > 0:
            idx = rng.choice(n, p=nearest_sq / total)
        else:
            idx = rng.integers(n)
        chosen[m] = idx
        np.minimum(nearest_sq, ((x - x[idx]) ** 2).sum(axis=1), out=nearest_sq)
    return x[chosen].copy()


def kmeans_fit(x, k: int, seed: int = 0, max_iter: int = 300):
    """Lloyd iterations from a careful-seeding start.

    Assignment ties go to the smallest centroid index. An empty cluster is
    re-seeded to the sample currently farthest from its own centroid, which
    keeps every cluster nonempty without randomness.

    Returns (labels, centroids, objective) with
    objective = sum_i ||x_i - u_label(i)||^2.
    """
    x = check_data_matrix(x)
    n = x.shape[0]
    if not 1 <= k <= n:
        raise ValidationError(f"need 1 <= k <= n, got k={k}, n={n}")
    if max_iter < 1:
        raise ValidationError(f"max_iter must be >= 1, got {max_iter}")
    centroids = kmeans_pp_init(x, k, seed)
    labels = np.full(n, -1, dtype=np.int64)
    for _ in range(max_iter):
        d2 = _pairwise_sq(x, centroids)
        new_labels = d2.argmin(axis=1).astype(np.int64)
        dist_own = d2[np.arange(n), new_labels]
        for j in range(k):
            if not (new_labels == j).any():
                idx = int(dist_own.argmax())
                new_labels[idx] = j
                dist_own[idx] = -1.0
        if (new_labels == labels).all():
            break
        labels = new_labels
        for j in range(k):
            centroids[j] = x[labels == j].mean(axis=0)
    objective = float(((x - centroids[labels]) ** 2).sum())
    return labels, centroids, objective


def fcm_membership(x, centroids, fuzzifier: float) -> np.ndarray:
    """Inverse-distance-ratio membership rows for fixed centroids:
    y_il proportional to ||x_i - u_l||^(-2/(fuzzifier-1)), normalized per
    row. A sample exactly coincident with a centroid gets a one-hot row at
    the first such centroid (the formula divides by zero there)."""
    x = check_data_matrix(x)
    centroids = np.asarray(centroids, dtype=float)
    if centroids.ndim != 2 or centroids.shape[1] != x.shape[1]:
        raise ValidationError(
            f"centroid shape {centroids.shape} does not match dimension {x.shape[1]}"
        )
    if not fuzzifier > 1:
        raise ValidationError(f"fuzzifier must be > 1, got {fuzzifier}")
    d2 = _pairwise_sq(x, centroids)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        inv = d2 ** (-1.0 / (fuzzifier - 1.0))
        y = inv / inv.sum(axis=1, keepdims=True)
    bad = (d2 == 0).any(axis=1) | ~np.isfinite(y).all(axis=1)
    if bad.any():
        y[bad] = 0.0
        y[bad, d2[bad].argmin(axis=1)] = 1.0
    return y


def fcm_fit(x, k: int, cfg: FcmConfig | None = None):
    """Standard fuzzy c-means: alternate the fuzzified weighted-mean
    centroid update and the fcm_membership update until the largest
    membership change drops below cfg.tol.

    Returns (membership, centroids).
    """
    x = check_data_matrix(x)
    n = x.shape[0]
    cfg = cfg if cfg is not None else FcmConfig()
    if not 1 <= k <= n:
        raise ValidationError(f"need 1 <= k <= n, got k={k}, n={n}")
    rng = np.random.default_rng(cfg.seed)
    y = rng.uniform(size=(n, k))
    y /= y.sum(axis=1, keepdims=True)
    centroids = np.empty((k, x.shape[1]))
    for _ in range(cfg.max_iter):
        weights = y**cfg.fuzzifier
        centroids = (weights.T @ x) / weights.sum(axis=0)[:, None]
        y_new = fcm_membership(x, centroids, cfg.fuzzifier)
        delta = np.abs(y_new - y).max()
        y = y_new
        if delta < cfg.tol:
            break
    return y, centroids


def optimal_centroids(x, y) -> np.ndarray:
    """Membership-weighted means u_j = (sum_i y_ij x_i) / (sum_i y_ij),
    the minimizer of sum_ij y_ij ||x_i - u_j||^2 over the centroids."""
    x = check_data_matrix(x)
    y = check_membership(y, x.shape[0])
    mass = y.sum(axis=0)
    if (mass <= 0).any():
        j = int(mass.argmin())
        raise ValidationError(f"cluster {j} has zero total membership")
    return (y.T @ x) / mass[:, None]


def rsfkm_objective(x, y, centroids, lam: float) -> float:
    """sum_il y_il ||x_i - u_l||^2 + lam * ||Y||_F^2 (squared-Euclidean
    regularized soft k-means objective)."""
    x = check_data_matrix(x)
    y = np.asarray(y, dtype=float)
    centroids = np.asarray(centroids, dtype=float)
    if y.ndim != 2 or y.shape[0] != x.shape[0]:
        raise ValidationError(
            f"membership shape {y.shape} does not match {x.shape[0]} samples"
        )
    if centroids.ndim != 2 or centroids.shape != (y.shape[1], x.shape[1]):
        raise ValidationError(
            f"centroid shape {centroids.shape} does not match "
            f"({y.shape[1]}, {x.shape[1]})"
        )
    d2 = _pairwise_sq(x, centroids)
    return float(np.einsum("il,il->", y, d2) + lam * np.einsum("il,il->", y, y))


def centerless_objective_exact(x, y) -> float:
    """tr(X^T (I - Y P^-1 Y^T) X) computed without forming the N x N
    similarity: ||X||_F^2 - sum_j ||X^T y_j||^2 / mass_j.

    Equals rsfkm_objective at the optimal centroids with lam = 0, and
    equals half the membership-weighted sum of pairwise squared distances.
    """
    x = check_data_matrix(x)
    y = check_membership(y, x.shape[0])
    mass = y.sum(axis=0)
    if (mass <= 0).any():
        j = int(mass.argmin())
        raise ValidationError(f"cluster {j} has zero total membership")
    projected = x.T @ y
    return float(
        np.einsum("ij,ij->", x, x)
        - (np.einsum("dj,dj->j", projected, projected) / mass).sum()
    )
