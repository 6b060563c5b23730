"""Distance-matrix constructions feeding the centroid-free solver.

Four constructions: squared Euclidean, mutual k-nearest-neighbor with a
constant fill for non-neighbors, a Butterworth filter over a similarity
(adjacency) matrix, and RBF kernel-space distance. All produce symmetric
matrices with zero diagonal; the solver itself would also accept an
asymmetric matrix.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .validation import check_data_matrix, check_square_matrix


@dataclass(frozen=True)
class DistanceMatrix:
    """An N x N distance matrix plus a record of how it was built."""

    values: np.ndarray
    kind: str
    params: dict = field(default_factory=dict)

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]


def as_distance_array(d) -> np.ndarray:
    """Accept a DistanceMatrix or a bare array; return the float64 values."""
    if isinstance(d, DistanceMatrix):
        d = d.values
    return check_square_matrix(d, "distance matrix")


def squared_euclidean_matrix(x) -> DistanceMatrix:
    """d_ij = ||x_i - x_j||^2, computed as an explicit sum of squared
    coordinate differences (no norm-expansion cancellation)."""
    x = check_data_matrix(x)
    diff = x[:, None, :] - x[None, :, :]
    values = np.einsum("ijk,ijk->ij", diff, diff)
    np.fill_diagonal(values, 0.0)
    return DistanceMatrix(values, "euclidean_sq")


def _knn_sets(sq: np.ndarray, k_neighbors: int) -> np.ndarray:
    """Boolean matrix: entry (i, j) true iff j is among i's k nearest
    neighbors by squared distance, self excluded, ties broken by smaller
    index (stable sort on distance)."""
    n = sq.shape[0]
    member = np.zeros((n, n), dtype=bool)
    order = np.argsort(sq, axis=1, kind="stable")
    for i in range(n):
        row = order[i]
        row = row[row != i]
        member[i, row[:k_neighbors]] = True
    return member


def knn_distance_matrix(x, k_neighbors: int) -> DistanceMatrix:
    """Mutual k-NN distance: squared Euclidean where both points appear in
    each other's k-NN sets, a constant sigma (the maximum pairwise squared
    distance) everywhere else, zero diagonal."""
    x = check_data_matrix(x)
    n = x.shape[0]
    if not 1 <= k_neighbors <= n - 1:
        raise ValidationError(
            f"k_neighbors must be in [1, {n - 1}] for {n} samples, got {k_neighbors}"
        )
    sq = squared_euclidean_matrix(x).values
    member = _knn_sets(sq, k_neighbors)
    mutual = member & member.T
    sigma = float(sq.max())
    values = np.where(mutual, sq, sigma)
    np.fill_diagonal(values, 0.0)
    return DistanceMatrix(
        values, "knn", {"k_neighbors": int(k_neighbors), "sigma_fill": sigma}
    )


def butterworth_distance_matrix(s, omega: float) -> DistanceMatrix:
    """Distance from a similarity matrix through a fourth-order Butterworth
    filter: d_ij = sqrt(1 / (1 + (s_ij/omega)^4)), zero diagonal."""
    s = check_square_matrix(s, "adjacency matrix")
    if not np.isfinite(s).all():
        raise ValidationError("adjacency matrix contains non-finite values")
    if (s < 0).any():
        i, j = np.argwhere(s < 0)[0]
        raise ValidationError(f"negative similarity at ({i}, {j})")
    if not omega > 0:
        raise ValidationError(f"omega must be positive, got {omega}")
    values = np.sqrt(1.0 / (1.0 + (s / omega) ** 4))
    np.fill_diagonal(values, 0.0)
    return DistanceMatrix(values, "butterworth", {"omega": float(omega)})


def kernel_distance_matrix(x, kernel_width: float) -> DistanceMatrix:
    """RBF kernel-space squared distance d_ij = 2 - 2*exp(-||x_i - x_j||^2
    / (2*width^2)), zero diagonal. Entries lie in [0, 2)."""
    x = check_data_matrix(x)
    if not kernel_width > 0:
        raise ValidationError(f"kernel_width must be positive, got {kernel_width}")
    sq = squared_euclidean_matrix(x).values
    values = 2.0 - 2.0 * np.exp(-sq / (2.0 * kernel_width**2))
    np.fill_diagonal(values, 0.0)
    return DistanceMatrix(values, "kernel", {"kernel_width": float(kernel_width)})


def default_omega(s) -> float:
    """Mean of the nonzero similarities; filter knee at typical scale."""
    s = check_square_matrix(s, "adjacency matrix")
    nz = s[s > 0]
    if nz.size == 0:
        raise ValidationError("adjacency matrix has no positive entries; pass omega explicitly")
    return float(nz.mean())


def default_kernel_width(x) -> float:
    """Median heuristic: median pairwise Euclidean distance."""
    x = check_data_matrix(x)
    sq = squared_euclidean_matrix(x).values
    n = sq.shape[0]
    if n < 2:
        raise ValidationError("kernel width heuristic needs at least 2 samples")
    med = float(np.median(np.sqrt(sq[np.triu_indices(n, 1)])))
    if med == 0.0:
        raise ValidationError("all points coincide; pass kernel_width explicitly")
    return med


def validate_distance_matrix(d) -> None:
    """Check the hard distance-matrix contract: square, finite, nonnegative,
    zero diagonal. Asymmetry is allowed (the solver symmetrizes); use
    is_symmetric() to report it."""
    values = as_distance_array(d)
    if not np.isfinite(values).all():
        i, j = np.argwhere(~np.isfinite(values))[0]
        raise ValidationError(f"non-finite distance at ({i}, {j})")
    if (values < 0).any():
        i, j = np.argwhere(values < 0)[0]
        raise ValidationError(f"negative distance at ({i}, {j}): {values[i, j]!r}")
    diag = np.diagonal(values)
    if (diag != 0).any():
        i = int(np.argwhere(diag != 0)[0][0])
        raise ValidationError(f"nonzero diagonal at ({i}, {i}): {diag[i]!r}")


def is_symmetric(d, rtol: float = 1e-12) -> bool:
    values = as_distance_array(d)
    scale = np.abs(values).max()
    if scale == 0.0:
        return True
    return bool(np.abs(values - values.T).max() <= rtol * scale)
