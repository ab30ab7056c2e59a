import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ganed.classify import (
    ErrorRate,
    LabeledDataset,
    holdout_error,
    holdout_error_from_matrix,
    loocv_error,
    loocv_error_from_matrix,
    nn1,
)
from ganed.distances import edit_distance, edit_distance_matrix
from ganed.exceptions import AlphabetMismatchError, ValidationError
from ganed.sequence import Alphabet, make_sequence, sequences_from_text


def absdiff(a, b):
    return abs(a - b)


def test_nn1_identity_and_ties():
    refs = LabeledDataset((1, 2, 3, 4), (5.0, 3.0, 7.0, 3.0))
    assert nn1(3.0, refs, absdiff) == (2, 1, 0.0)
    # 3 and 5 are both 1 away from 4: the earlier index wins
    assert nn1(4.0, LabeledDataset((1, 2), (3.0, 5.0)), absdiff).index == 0


def test_nn1_single_reference():
    assert nn1(100.0, LabeledDataset((9,), (0.0,)), absdiff).label == 9


def test_nn1_empty_refs():
    with pytest.raises(ValidationError):
        nn1(1.0, LabeledDataset((), ()), absdiff)


def test_loocv_duplicates_give_zero():
    ds = LabeledDataset((1, 1, 2, 2), (0.0, 0.0, 9.0, 9.0))
    assert loocv_error(ds, absdiff) == ErrorRate(0, 4)


def test_loocv_two_items_different_labels():
    assert loocv_error(LabeledDataset((1, 2), (0.0, 1.0)), absdiff).value == 1.0


def test_loocv_needs_two():
    with pytest.raises(ValidationError):
        loocv_error(LabeledDataset((1,), (0.0,)), absdiff)


def test_clusters_under_ed():
    texts = ["aaaaaa", "aaaaab", "baaaaa", "bbbbbb", "bbbbba", "abbbbb", "cccccc", "ccccca", "bccccc"]
    labels = (0, 0, 0, 1, 1, 1, 2, 2, 2)
    seqs = sequences_from_text(*texts)
    D = edit_distance_matrix(seqs)
    # brute-force check that the construction is separated
    for i in range(9):
        for j in range(9):
            if i != j and labels[i] == labels[j]:
                assert D[i, j] < min(D[i, k] for k in range(9) if labels[k] != labels[i])
    ds = LabeledDataset(labels, tuple(seqs))
    assert loocv_error(ds, edit_distance).value == 0.0
    assert holdout_error(ds, ds, edit_distance).value == 0.0


def test_holdout_single_class_train():
    train = LabeledDataset((1, 1), (0.0, 1.0))
    test = LabeledDataset((1, 2, 2, 1), (0.0, 1.0, 2.0, 3.0))
    assert holdout_error(train, test, absdiff) == ErrorRate(2, 4)


def test_error_rate_text_round_trip():
    e = ErrorRate(3, 150)
    assert str(e) == "3/150"
    assert ErrorRate.parse(str(e)) == e
    assert e.rounded() == 0.02
    with pytest.raises(ValidationError):
        ErrorRate(5, 4)


def test_dataset_rejects_mixed_alphabets():
    with pytest.raises(AlphabetMismatchError):
        LabeledDataset((1, 2), (make_sequence("ab", Alphabet.sax(2)), make_sequence("ab", Alphabet.sax(3))))


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(0, 2), st.text("ab", max_size=6)), min_size=2, max_size=10),
       st.randoms(use_true_random=False))
def test_matrix_path_equals_callable_path_and_is_shuffle_invariant(pairs, rnd):
    labels = [p[0] for p in pairs]
    seqs = sequences_from_text(*[p[1] for p in pairs])
    ds = LabeledDataset(tuple(labels), tuple(seqs))
    D = edit_distance_matrix(seqs)
    expected = loocv_error(ds, edit_distance)
    assert loocv_error_from_matrix(D, labels) == expected
    assert holdout_error_from_matrix(D, labels, labels) == holdout_error(ds, ds, edit_distance)

    # shuffling the items changes tie-breaking only, so compare on distinct distances
    if len(set(D[np.triu_indices(len(seqs), 1)])) == len(seqs) * (len(seqs) - 1) // 2:
        order = list(range(len(seqs)))
        rnd.shuffle(order)
        shuffled = LabeledDataset(tuple(labels[i] for i in order), tuple(seqs[i] for i in order))
        assert loocv_error(shuffled, edit_distance) == expected
