"""External clustering-quality metrics.

All metrics compare a predicted label vector against ground truth and are
invariant to how the predicted clusters are numbered: accuracy relabels
predictions through an optimal assignment, normalized mutual information
and both purity variants depend only on the contingency counts.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import ValidationError
from .validation import check_labels


@dataclass(frozen=True)
class ContingencyTable:
    """Joint counts between truth classes (rows) and predicted clusters
    (columns), with the distinct ids each axis refers to."""

    counts: np.ndarray
    truth_ids: np.ndarray
    pred_ids: np.ndarray

    @property
    def n(self) -> int:
        return int(self.counts.sum())


def contingency_table(truth, pred) -> ContingencyTable:
    truth = check_labels(truth)
    pred = check_labels(pred, truth.shape[0])
    truth_ids, truth_idx = np.unique(truth, return_inverse=True)
    pred_ids, pred_idx = np.unique(pred, return_inverse=True)
    counts = np.zeros((truth_ids.size, pred_ids.size), dtype=np.int64)
    np.add.at(counts, (truth_idx, pred_idx), 1)
    return ContingencyTable(counts, truth_ids, pred_ids)


def align_labels(truth, pred) -> dict:
    """Mapping predicted id -> truth id that maximizes the number of
    matching samples (optimal assignment on the contingency table).

    When there are more predicted clusters than truth classes, the
    leftover predicted ids map to fresh ids that match nothing.
    """
    table = contingency_table(truth, pred)
    rows, cols = linear_sum_assignment(table.counts, maximize=True)
    mapping = {
        int(table.pred_ids[c]): int(table.truth_ids[r]) for r, c in zip(rows, cols)
    }
    fresh = int(table.truth_ids.max()) + 1 if table.truth_ids.size else 0
    for pid in table.pred_ids:
        if int(pid) not in mapping:
            mapping[int(pid)] = fresh
            fresh += 1
    return mapping


def accuracy(truth, pred) -> float:
    """Fraction of samples whose optimally relabeled prediction matches
    the truth."""
    truth = check_labels(truth)
    pred = check_labels(pred, truth.shape[0])
    if truth.shape[0] < 1:
        raise ValidationError("accuracy needs at least one sample")
    mapping = align_labels(truth, pred)
    mapped = np.array([mapping[int(p)] for p in pred], dtype=np.int64)
    return float((mapped == truth).mean())


def nmi(truth, pred) -> float:
    """Mutual information normalized by sqrt(H(truth) * H(pred)), natural
    logarithms.

    Conventions for degenerate partitions: 1.0 when both sides are a
    single class (identical trivial partitions), 0.0 when exactly one side
    is.
    """
    table = contingency_table(truth, pred)
    joint = table.counts / table.n
    pt = joint.sum(axis=1)
    pp = joint.sum(axis=0)
    h_truth = float(-(pt * np.log(pt)).sum())
    h_pred = float(-(pp * np.log(pp)).sum())
    if h_truth == 0.0 and h_pred == 0.0:
        return 1.0
    if h_truth == 0.0 or h_pred == 0.0:
        return 0.0
    nz = joint[joint > 0]
    h_joint = float(-(nz * np.log(nz)).sum())
    mi = h_truth + h_pred - h_joint
    return float(np.clip(mi / np.sqrt(h_truth * h_pred), 0.0, 1.0))


def purity_majority(truth, pred) -> float:
    """Average over predicted clusters of the dominant truth-class share."""
    table = contingency_table(truth, pred)
    return float(table.counts.max(axis=0).sum() / table.n)


def _pairs(counts: np.ndarray) -> float:
    return float((counts * (counts - 1) // 2).sum())


def purity_pairs(truth, pred) -> float:
    """Fraction of unordered sample pairs on which prediction and truth
    agree (co-clustered in both, or separated in both)."""
    table = contingency_table(truth, pred)
    n = table.n
    if n < 2:
        raise ValidationError("pair purity needs at least two samples")
    total = n * (n - 1) / 2
    same_both = _pairs(table.counts)
    same_truth = _pairs(table.counts.sum(axis=1))
    same_pred = _pairs(table.counts.sum(axis=0))
    agree = total + 2 * same_both - same_truth - same_pred
    return float(agree / total)
