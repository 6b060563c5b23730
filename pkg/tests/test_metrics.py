import itertools

import numpy as np
import pytest

from fuzzykm import (
    ValidationError,
    accuracy,
    align_labels,
    contingency_table,
    nmi,
    purity_majority,
    purity_pairs,
)


def exhaustive_accuracy(truth, pred):
    """Max over ALL injective maps from predicted ids into truth ids (a
    predicted id may also map to nothing) of the match fraction."""
    t_ids = sorted(set(truth))
    p_ids = sorted(set(pred))
    pool = t_ids + [None] * len(p_ids)
    best = 0
    for choice in itertools.permutations(pool, len(p_ids)):
        mapping = dict(zip(p_ids, choice))
        matches = sum(
            1 for a, b in zip(truth, pred) if mapping[b] is not None and mapping[b] == a
        )
        best = max(best, matches)
    return best / len(truth)


def exhaustive_pair_agreement(truth, pred):
    n = len(truth)
    agree = 0
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            total += 1
            agree += (truth[i] == truth[j]) == (pred[i] == pred[j])
    return agree / total


def test_contingency_counts():
    table = contingency_table([0, 0, 1, 1, 2], [1, 1, 0, 2, 2])
    assert table.n == 5
    assert table.counts.sum() == 5
    assert table.counts.shape == (3, 3)
    assert table.counts[0].tolist() == [0, 2, 0]


def test_align_labels_spec_cases():
    assert align_labels([0, 0, 1, 1], [1, 1, 0, 0]) == {1: 0, 0: 1}
    assert align_labels([0, 0, 1, 1], [0, 0, 1, 1]) == {0: 0, 1: 1}
    mapping = align_labels([0, 0, 1, 1], [0, 1, 0, 1])
    matched = sum(mapping[p] == t for t, p in zip([0, 0, 1, 1], [0, 1, 0, 1]))
    assert matched == 2


def test_align_labels_rectangular_gets_fresh_ids():
    truth = [0, 0, 0, 1]
    pred = [0, 1, 2, 3]
    mapping = align_labels(truth, pred)
    assert sorted(mapping) == [0, 1, 2, 3]
    mapped = set(mapping.values())
    assert {0, 1} <= mapped
    fresh = mapped - {0, 1}
    assert len(fresh) == 2 and all(v > 1 for v in fresh)


def test_accuracy_direct_cases():
    assert accuracy([0, 1, 2], [0, 1, 2]) == 1.0
    assert accuracy([0, 0, 1, 1], [1, 1, 0, 0]) == 1.0
    assert accuracy([0, 0, 1, 1], [0, 1, 0, 1]) == 0.5
    with pytest.raises(ValidationError):
        accuracy([0, 1], [0, 1, 2])


def test_accuracy_matches_exhaustive_oracle():
    rng = np.random.default_rng(0)
    for _ in range(300):
        n = int(rng.integers(2, 9))
        truth = rng.integers(0, 3, size=n)
        pred = rng.integers(0, 3, size=n)
        got = accuracy(truth, pred)
        want = exhaustive_accuracy(truth.tolist(), pred.tolist())
        assert got == pytest.approx(want, abs=1e-12), (truth, pred)


def test_accuracy_invariant_under_id_permutations():
    rng = np.random.default_rng(4)
    for _ in range(50):
        truth = rng.integers(0, 4, size=12)
        pred = rng.integers(0, 4, size=12)
        base = accuracy(truth, pred)
        perm_t = rng.permutation(4)
        perm_p = rng.permutation(4)
        assert accuracy(perm_t[truth], pred) == pytest.approx(base)
        assert accuracy(truth, perm_p[pred]) == pytest.approx(base)


def test_nmi_conventions_and_symmetry():
    assert nmi([0, 0, 1, 1], [1, 1, 0, 0]) == 1.0
    assert nmi([0, 0, 1, 1], [0, 1, 0, 1]) == 0.0
    assert nmi([0, 0, 0], [0, 0, 0]) == 1.0
    assert nmi([0, 0, 0], [0, 1, 2]) == 0.0
    assert nmi([0, 1, 2], [0, 0, 0]) == 0.0

    rng = np.random.default_rng(1)
    for _ in range(50):
        truth = rng.integers(0, 3, size=15)
        pred = rng.integers(0, 4, size=15)
        a = nmi(truth, pred)
        assert 0.0 <= a <= 1.0
        assert a == pytest.approx(nmi(pred, truth), abs=1e-12)


def test_purity_majority_cases():
    assert purity_majority([0, 0, 1, 1], [0, 0, 1, 1]) == 1.0
    assert purity_majority([0, 1, 0, 1], [0, 0, 0, 0]) == 0.5
    assert purity_majority([0, 0, 1, 1], [0, 1, 2, 3]) == 1.0


def test_purity_pairs_cases_and_oracle():
    assert purity_pairs([0, 0, 1, 1], [0, 0, 1, 1]) == 1.0
    assert purity_pairs([0, 0, 1, 1], [0, 1, 0, 1]) == pytest.approx(1.0 / 3.0)
    with pytest.raises(ValidationError):
        purity_pairs([0], [0])

    rng = np.random.default_rng(2)
    for _ in range(100):
        n = int(rng.integers(2, 31))
        truth = rng.integers(0, 4, size=n)
        pred = rng.integers(0, 4, size=n)
        got = purity_pairs(truth, pred)
        want = exhaustive_pair_agreement(truth.tolist(), pred.tolist())
        assert got == pytest.approx(want, abs=1e-12)
        relabeled = rng.permutation(4)[pred]
        assert purity_pairs(truth, relabeled) == pytest.approx(got, abs=1e-12)


def test_metrics_range_property():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(2, 20))
        truth = rng.integers(0, 5, size=n)
        pred = rng.integers(0, 5, size=n)
        for metric in (accuracy, nmi, purity_majority, purity_pairs):
            value = metric(truth, pred)
            assert 0.0 <= value <= 1.0, metric.__name__
