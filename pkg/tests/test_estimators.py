import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from ganed.estimators import (
    GanedClassifier,
    NearestNeighborClassifier,
    SAXMindistClassifier,
    SAXTransformer,
)
from ganed.distances import edit_distance
from ganed.exceptions import AlphabetMismatchError, ValidationError
from ganed.sequence import Alphabet, make_sequence, sequences_from_text

from conftest import two_class_series


@pytest.fixture
def toy():
    train, test = two_class_series(4, seed=1), two_class_series(3, seed=2)
    return list(train.items), np.array(train.labels), list(test.items), np.array(test.labels)


def test_get_params_and_clone():
    est = GanedClassifier(n_max=2, random_state=3)
    params = est.get_params()
    assert params["n_max"] == 2 and params["random_state"] == 3
    assert clone(est).get_params() == params
    est.set_params(n_gen=5)
    assert est.n_gen == 5


def test_sax_transformer():
    words = SAXTransformer(4, 4).fit_transform(np.arange(40.0).reshape(2, 20))
    assert [w.symbols for w in words] == [(0, 1, 2, 3)] * 2


def test_transform_before_fit():
    with pytest.raises(NotFittedError):
        SAXTransformer().transform([[1.0, 2.0]])


def test_single_series_rejected():
    with pytest.raises(ValidationError):
        SAXTransformer().fit_transform(np.arange(10.0))


def test_pipeline_separates_toy(toy):
    Xtr, ytr, Xte, yte = toy
    pipe = make_pipeline(SAXTransformer(8, 5), GanedClassifier(n_max=2, n_gen=3, random_state=0))
    pipe.fit(Xtr, ytr)
    assert pipe.score(Xte, yte) == 1.0
    clf = pipe[-1]
    assert len(clf.lambdas_) == 2 and clf.train_error_.value == 0.0
    assert clf.ga_result_.evaluations <= 12 * 4


def test_fixed_lambdas_skip_search(toy):
    Xtr, ytr, _, _ = toy
    words = SAXTransformer(8, 5).fit_transform(Xtr)
    clf = GanedClassifier(lambdas=[0.3, 0.1]).fit(words, ytr)
    assert clf.ga_result_ is None and clf.lambdas_.lambdas == (0.3, 0.1)


def test_ganed_classifier_is_deterministic(toy):
    Xtr, ytr, _, _ = toy
    words = SAXTransformer(8, 10).fit_transform(Xtr)
    a = GanedClassifier(n_max=3, n_gen=4, random_state=9).fit(words, ytr)
    b = GanedClassifier(n_max=3, n_gen=4, random_state=9).fit(words, ytr)
    assert a.lambdas_ == b.lambdas_


def test_metric_callable_matches_builtin():
    seqs = sequences_from_text("abab", "bbbb", "abaa", "aaaa")
    y = [0, 1, 0, 1]
    a = NearestNeighborClassifier("ed").fit(seqs, y)
    b = NearestNeighborClassifier(edit_distance).fit(seqs, y)
    np.testing.assert_array_equal(a.predict(seqs), b.predict(seqs))
    assert a.holdout_error(seqs, y).value == 0.0


def test_ganed_metric_needs_lambdas():
    with pytest.raises(ValidationError):
        NearestNeighborClassifier("ganed").fit(sequences_from_text("ab", "ba"), [0, 1])


def test_unknown_metric():
    with pytest.raises(ValidationError):
        NearestNeighborClassifier("dtw").fit(sequences_from_text("ab", "ba"), [0, 1])


def test_mixed_alphabets_rejected():
    seqs = [make_sequence("ab", Alphabet.sax(2)), make_sequence("ab", Alphabet.sax(3))]
    with pytest.raises(AlphabetMismatchError):
        NearestNeighborClassifier().fit(seqs, [0, 1])


def test_predict_before_fit():
    with pytest.raises(NotFittedError):
        NearestNeighborClassifier().predict(sequences_from_text("ab"))


def test_mindist_classifier(toy):
    Xtr, ytr, Xte, yte = toy
    clf = SAXMindistClassifier(8, 5).fit(Xtr, ytr)
    assert clf.score(Xte, yte) == 1.0
    assert clf.holdout_error(Xte, yte).misclassified == 0
