"""Centroid-free fuzzy k-means solver.

Minimizes, over row-stochastic positive membership matrices Y,

    J(Y) = 0.5 * tr(Y^T D Y P^-1) + lam * ||Y||_F^2,   P = diag(Y^T 1),

where D is any nonnegative distance matrix with zero diagonal. The first
term is the membership-weighted average of pairwise distances inside each
cluster, each unordered pair counted once; for squared-Euclidean D it
equals the classical within-cluster scatter at the optimal (weighted-mean)
centroids, which is what makes the method centroid-free. The solver is a
fixed-point multiplicative update: writing W = D + D^T,

    numer_j  = 0.5 * quad_j / mass_j^2,      quad_j = y_j^T D y_j
    denom_ij = 0.5 * (W Y)_ij / mass_j + 2 * lam * y_ij
    y_ij    <- y_ij * sqrt(numer_j / denom_ij)

followed by an entry floor and row renormalization. The update step equals
the gradient step y - eta * dJ/dy with the particular positive step size
eta = y / (denom + sqrt(denom * numer)), so fixed points with positive
entries are stationary points of J.
"""

from dataclasses import dataclass, field

import numpy as np
from threadpoolctl import threadpool_limits

from .distance import as_distance_array, validate_distance_matrix
from .errors import NumericError, ValidationError
from .validation import check_membership

# Guard for the division in the multiplicative update; denom can reach 0
# only at lam = 0 with degenerate D.
DIV_GUARD = 1e-300


@dataclass
class SolverConfig:
    """Solver hyperparameters.

    lam is the membership regularization weight; tol is the absolute
    objective-change stopping threshold; floor is the minimum membership
    entry kept alive (multiplicative updates cannot revive an exact zero).
    """

    lam: float = 10.0
    tol: float = 1e-3
    max_iter: int = 2000
    seed: int = 0
    floor: float = 1e-15

    def __post_init__(self):
        if self.lam < 0:
            raise ValidationError(f"lam must be nonnegative, got {self.lam}")
        if not self.tol > 0:
            raise ValidationError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValidationError(f"max_iter must be >= 1, got {self.max_iter}")
        if not self.floor > 0:
            raise ValidationError(f"floor must be positive, got {self.floor}")


@dataclass
class SolverState:
    """State after zero or more update steps.

    objective_trace holds one value per completed iteration (length ==
    n_iter); the objective of the initial membership is kept separately in
    initial_objective so the trace never exceeds max_iter entries.
    """

    membership: np.ndarray
    col_mass: np.ndarray
    quad: np.ndarray
    update_denom: np.ndarray | None
    objective_trace: list = field(default_factory=list)
    n_iter: int = 0
    converged: bool = False
    initial_objective: float = np.nan

    @property
    def objective_final(self) -> float:
        if self.objective_trace:
            return self.objective_trace[-1]
        return self.initial_objective

    def trace_pairs(self) -> list:
        """Objective trace as (iteration, value) pairs, iteration 0 being
        the initial membership."""
        pairs = [(0, self.initial_objective)]
        pairs.extend((t + 1, v) for t, v in enumerate(self.objective_trace))
        return pairs


def init_membership(n: int, k: int, seed: int, floor: float = 1e-15) -> np.ndarray:
    """Uniform(0,1) rows normalized to sum 1; strictly positive, seeded."""
    if not 1 <= k <= n:
        raise ValidationError(f"need 1 <= k <= n, got k={k}, n={n}")
    rng = np.random.default_rng(seed)
    y = rng.uniform(size=(n, k))
    np.maximum(y, floor, out=y)
    y /= y.sum(axis=1, keepdims=True)
    return y


def _check_weights(y, n_rows: int) -> np.ndarray:
    """Validate a nonnegative weight matrix without requiring rows to sum
    to 1: objective and gradient are defined off the simplex, which is what
    finite-difference probes of the gradient evaluate."""
    y = np.asarray(y, dtype=float)
    if y.ndim != 2 or y.shape[0] != n_rows:
        raise ValidationError(
            f"weight matrix shape {y.shape} does not match {n_rows} samples"
        )
    if not np.isfinite(y).all():
        raise ValidationError("weight matrix has non-finite entries")
    if (y < 0).any():
        raise ValidationError("weight matrix has negative entries")
    return y


def _col_mass(y: np.ndarray) -> np.ndarray:
    mass = y.sum(axis=0)
    if (mass <= 0).any():
        j = int(mass.argmin())
        raise ValidationError(f"cluster {j} has zero total membership")
    return mass


def objective(d, y, lam: float) -> float:
    """J(Y) = 0.5 * tr(Y^T D Y P^-1) + lam * ||Y||_F^2.

    Accepts any nonnegative Y with positive column masses: row-stochastic
    memberships, hard one-hot partitions (the k-means equivalence check),
    and off-simplex finite-difference probes all evaluate through here.
    """
    values = as_distance_array(d)
    y = _check_weights(y, values.shape[0])
    mass = _col_mass(y)
    quad = np.einsum("ij,ij->j", y, values @ y)
    return float(0.5 * (quad / mass).sum() + lam * np.einsum("ij,ij->", y, y))


def analytic_gradient(d, y, lam: float) -> np.ndarray:
    """Entrywise partial derivatives of objective() at Y.

    grad_ij = 0.5 * [(D + D^T) Y P^-1]_ij + 2*lam*y_ij - 0.5 * quad_j / mass_j^2
    """
    values = as_distance_array(d)
    y = _check_weights(y, values.shape[0])
    mass = _col_mass(y)
    w = values + values.T
    wy = w @ y
    quad = 0.5 * np.einsum("ij,ij->j", y, wy)
    return 0.5 * wy / mass + (2.0 * lam) * y - 0.5 * quad / mass**2


def _objective_sym(w: np.ndarray, y: np.ndarray, lam: float) -> float:
    # w = d + d.T, so the quadratic form carries an extra factor of 2
    mass = y.sum(axis=0)
    quad = 0.5 * np.einsum("ij,ij->j", y, w @ y)
    return float(0.5 * (quad / mass).sum() + lam * np.einsum("ij,ij->", y, y))


def _step(w: np.ndarray, y: np.ndarray, lam: float, floor: float):
    """One multiplicative update + floor clamp + row renormalization."""
    k = y.shape[1]
    mass = y.sum(axis=0)
    if mass.min() < k * floor:
        j = int(mass.argmin())
        raise NumericError(
            f"cluster {j} membership mass {mass[j]:.3e} fell below {k * floor:.3e}"
        )
    wy = w @ y
    quad = 0.5 * np.einsum("ij,ij->j", y, wy)
    numer = 0.5 * quad / mass**2
    denom = 0.5 * wy / mass + (2.0 * lam) * y
    np.maximum(denom, DIV_GUARD, out=denom)
    y_new = y * np.sqrt(numer / denom)
    np.maximum(y_new, floor, out=y_new)
    y_new /= y_new.sum(axis=1, keepdims=True)
    return y_new, denom


def _check_finite(y: np.ndarray, obj: float, iteration: int) -> None:
    if np.isfinite(obj) and np.isfinite(y).all():
        return
    bad = np.argwhere(~np.isfinite(y))
    where = f"entry ({bad[0][0]}, {bad[0][1]})" if bad.size else "objective"
    raise NumericError(f"non-finite value at iteration {iteration}: {where}")


def initial_state(d, k: int, cfg: SolverConfig | None = None, init=None) -> SolverState:
    """Build the iteration-0 state (membership initialized, nothing run)."""
    values = as_distance_array(d)
    n = values.shape[0]
    if not 1 <= k <= n:
        raise ValidationError(f"need 1 <= k <= n, got k={k}, n={n}")
    cfg = cfg if cfg is not None else SolverConfig()
    if init is None:
        y = init_membership(n, k, cfg.seed, cfg.floor)
    else:
        y = check_membership(init, n).copy()
        np.maximum(y, cfg.floor, out=y)
        y /= y.sum(axis=1, keepdims=True)
    w = values + values.T
    mass = y.sum(axis=0)
    quad = 0.5 * np.einsum("ij,ij->j", y, w @ y)
    return SolverState(
        membership=y,
        col_mass=mass,
        quad=quad,
        update_denom=None,
        objective_trace=[],
        n_iter=0,
        converged=False,
        initial_objective=_objective_sym(w, y, cfg.lam),
    )


def iterate_once(d, state: SolverState, cfg: SolverConfig) -> SolverState:
    """Apply one update step to `state`, appending the new objective."""
    values = as_distance_array(d)
    w = values + values.T
    y, denom = _step(w, state.membership, cfg.lam, cfg.floor)
    obj = _objective_sym(w, y, cfg.lam)
    _check_finite(y, obj, state.n_iter + 1)
    mass = y.sum(axis=0)
    quad = 0.5 * np.einsum("ij,ij->j", y, w @ y)
    return SolverState(
        membership=y,
        col_mass=mass,
        quad=quad,
        update_denom=denom,
        objective_trace=list(state.objective_trace) + [obj],
        n_iter=state.n_iter + 1,
        converged=False,
        initial_objective=state.initial_objective,
    )


def fit(d, k: int, cfg: SolverConfig | None = None, init=None) -> SolverState:
    """Run the multiplicative update from a fresh (or given) membership
    until the absolute objective change is <= cfg.tol or cfg.max_iter is
    reached.

    The loop runs with BLAS pinned to one thread so results are
    bit-identical across machine thread settings.
    """
    values = as_distance_array(d)
    validate_distance_matrix(values)
    cfg = cfg if cfg is not None else SolverConfig()
    trace = []
    converged = False
    denom = None
    with threadpool_limits(limits=1):
        state = initial_state(values, k, cfg, init=init)
        y = state.membership
        w = values + values.T
        obj_prev = state.initial_objective
        for t in range(1, cfg.max_iter + 1):
            y, denom = _step(w, y, cfg.lam, cfg.floor)
            obj = _objective_sym(w, y, cfg.lam)
            _check_finite(y, obj, t)
            trace.append(obj)
            if abs(obj - obj_prev) <= cfg.tol:
                converged = True
                break
            obj_prev = obj
        mass = y.sum(axis=0)
        quad = 0.5 * np.einsum("ij,ij->j", y, w @ y)
    return SolverState(
        membership=y,
        col_mass=mass,
        quad=quad,
        update_denom=denom,
        objective_trace=trace,
        n_iter=len(trace),
        converged=converged,
        initial_objective=state.initial_objective,
    )


def hard_labels(y) -> np.ndarray:
    """argmax over clusters per row; ties go to the smallest index."""
    y = np.asarray(y, dtype=float)
    if y.ndim != 2:
        raise ValidationError("membership matrix must be 2-D")
    return y.argmax(axis=1).astype(np.int64)
