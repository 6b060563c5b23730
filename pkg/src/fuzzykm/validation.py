"""Input-validation helpers used by the estimator, the functional API and
the CLI. Each returns a validated float64/int64 numpy array or raises
ValidationError naming what failed."""

import numpy as np

from .errors import ValidationError

ROW_SUM_TOL = 1e-12


def check_data_matrix(x) -> np.ndarray:
    """Validate an N x d feature matrix: 2-D, at least one row, all finite."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValidationError(f"data matrix must be 2-D, got ndim={x.ndim}")
    if x.shape[0] < 1 or x.shape[1] < 1:
        raise ValidationError(f"data matrix must be non-empty, got shape {x.shape}")
    if not np.isfinite(x).all():
        i, j = np.argwhere(~np.isfinite(x))[0]
        raise ValidationError(f"non-finite value in data matrix at row {i}, column {j}")
    return x


def check_labels(labels, n_rows: int | None = None) -> np.ndarray:
    """Validate a 1-D integer label vector, optionally against a row count."""
    labels = np.asarray(labels)
    if labels.ndim != 1:
        raise ValidationError(f"label vector must be 1-D, got ndim={labels.ndim}")
    if labels.size < 1:
        raise ValidationError("label vector is empty")
    if not np.issubdtype(labels.dtype, np.integer):
        as_float = np.asarray(labels, dtype=float)
        if not np.isfinite(as_float).all() or (as_float != np.round(as_float)).any():
            raise ValidationError("labels must be integers")
        labels = as_float.astype(np.int64)
    if n_rows is not None and labels.shape[0] != n_rows:
        raise ValidationError(
            f"label count {labels.shape[0]} does not match row count {n_rows}"
        )
    return labels.astype(np.int64, copy=False)


def check_square_matrix(m, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {m.shape}")
    if m.shape[0] < 1:
        raise ValidationError(f"{name} is empty")
    return m


def check_membership(y, n_rows: int | None = None) -> np.ndarray:
    """Validate an N x K membership matrix: nonnegative, finite, rows
    summing to 1 within ROW_SUM_TOL."""
    y = np.asarray(y, dtype=float)
    if y.ndim != 2:
        raise ValidationError(f"membership matrix must be 2-D, got ndim={y.ndim}")
    if n_rows is not None and y.shape[0] != n_rows:
        raise ValidationError(
            f"membership rows {y.shape[0]} do not match sample count {n_rows}"
        )
    if not np.isfinite(y).all():
        raise ValidationError("membership matrix contains non-finite values")
    if (y < 0).any():
        i, j = np.argwhere(y < 0)[0]
        raise ValidationError(f"negative membership at row {i}, column {j}")
    row_err = np.abs(y.sum(axis=1) - 1.0)
    if (row_err > ROW_SUM_TOL).any():
        i = int(row_err.argmax())
        raise ValidationError(
            f"membership row {i} sums to {y[i].sum():.17g}, expected 1"
        )
    return y
