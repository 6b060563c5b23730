"""CSV ingestion, label canonicalization, and a synthetic blob generator.

CSV is the single data format: rows are samples, comma separator, '.'
decimal point, optional single header line. Label files carry one integer
per line. No implicit feature scaling happens here.
"""

import numpy as np

from .errors import ValidationError
from .validation import check_data_matrix


def load_matrix_csv(path, has_header: bool = False) -> np.ndarray:
    """Load an N x d feature matrix from a CSV file.

    Every row must have the same number of numeric, finite fields. Errors
    name the offending line and column (1-based, counting the header).
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}") from None
    rows = []
    width = None
    for lineno, line in enumerate(lines, start=1):
        if lineno == 1 and has_header:
            continue
        if line.strip() == "":
            if lineno == len(lines):  # tolerate one trailing newline
                continue
            raise ValidationError(f"{path}: empty line {lineno}")
        fields = line.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise ValidationError(
                f"{path}: line {lineno} has {len(fields)} fields, expected {width}"
            )
        row = []
        for col, field in enumerate(fields, start=1):
            try:
                value = float(field)
            except ValueError:
                raise ValidationError(
                    f"{path}: non-numeric field at line {lineno}, column {col}: {field!r}"
                ) from None
            if not np.isfinite(value):
                raise ValidationError(
                    f"{path}: non-finite value at line {lineno}, column {col}"
                )
            row.append(value)
        rows.append(row)
    if not rows:
        raise ValidationError(f"{path}: no data rows")
    return check_data_matrix(np.array(rows, dtype=float))


def canonicalize_labels(raw) -> tuple[np.ndarray, int]:
    """Map arbitrary integer ids to 0-based contiguous ids in
    first-appearance order. Returns (labels, n_classes)."""
    raw = np.asarray(raw)
    mapping: dict = {}
    out = np.empty(raw.shape[0], dtype=np.int64)
    for i, value in enumerate(raw):
        key = int(value)
        if key not in mapping:
            mapping[key] = len(mapping)
        out[i] = mapping[key]
    return out, len(mapping)


def load_labels(path) -> tuple[np.ndarray, int]:
    """Load a label file (one integer per line) and canonicalize it.

    Returns (labels, n_classes) with ids renumbered 0..n_classes-1 in
    first-appearance order.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}") from None
    values = []
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if text == "":
            if lineno == len(lines):
                continue
            raise ValidationError(f"{path}: empty line {lineno}")
        try:
            values.append(int(text))
        except ValueError:
            raise ValidationError(
                f"{path}: non-integer label at line {lineno}: {text!r}"
            ) from None
    if not values:
        raise ValidationError(f"{path}: empty label file")
    return canonicalize_labels(np.array(values))


def blob_centers(k: int, dim: int, separation: float, rng) -> np.ndarray:
    """Seeded cluster centers with minimum pairwise distance == separation.

    Standard-normal directions scaled so the closest pair sits exactly
    `separation` apart; every other pair is then at least that far.
    """
    centers = rng.normal(size=(k, dim))
    if k > 1:
        diffs = centers[:, None, :] - centers[None, :, :]
        dists = np.sqrt((diffs**2).sum(-1))
        closest = dists[np.triu_indices(k, 1)].min()
        if closest == 0.0:
            # coincident draws (measure zero); nudge deterministically
            centers += rng.normal(size=(k, dim)) * 1e-8
            diffs = centers[:, None, :] - centers[None, :, :]
            closest = np.sqrt((diffs**2).sum(-1))[np.triu_indices(k, 1)].min()
        centers *= separation / closest
    return centers


def gaussian_blobs(
    n_per_cluster: int,
    k: int,
    dim: int,
    separation: float,
    spread: float,
    seed: int,
    return_centers: bool = False,
):
    """Generate k isotropic Gaussian clusters of n_per_cluster points each.

    Centers are pairwise at least `separation` apart; points are drawn
    around them with standard deviation `spread` (0 allowed: points land on
    their centers). Deterministic for a fixed seed. Returns (x, labels) or
    (x, labels, centers) when return_centers is set.
    """
    if n_per_cluster < 1 or k < 1 or dim < 1:
        raise ValidationError("n_per_cluster, k and dim must be positive")
    if separation <= 0:
        raise ValidationError("separation must be positive")
    if spread < 0:
        raise ValidationError("spread must be nonnegative")
    rng = np.random.default_rng(seed)
    centers = blob_centers(k, dim, separation, rng)
    x = np.vstack(
        [c + spread * rng.normal(size=(n_per_cluster, dim)) for c in centers]
    )
    labels = np.repeat(np.arange(k, dtype=np.int64), n_per_cluster)
    if return_centers:
        return x, labels, centers
    return x, labels


def write_matrix_csv(m, path) -> None:
    """Write a matrix as CSV with 17 significant digits so that
    load_matrix_csv(write(m)) round-trips exactly."""
    m = check_data_matrix(m)
    with open(path, "w", encoding="utf-8") as fh:
        for row in m:
            fh.write(",".join(format(v, ".17g") for v in row))
            fh.write("\n")


def write_labels(labels, path) -> None:
    """Write a label vector, one integer per line."""
    labels = np.asarray(labels)
    with open(path, "w", encoding="utf-8") as fh:
        for value in labels:
            fh.write(f"{int(value)}\n")
