"""scikit-learn compatible wrappers.

:class:`SAXTransformer` turns raw series into SAX words and the classifiers
consume lists of :class:`~ganed.sequence.SymbolicSequence`, so the two chain
in an ordinary :class:`sklearn.pipeline.Pipeline`::

    make_pipeline(SAXTransformer(16, 10), GanedClassifier(n_max=2, random_state=0))

Sequences are ragged, so ``X`` is a list rather than a 2-D array throughout.
"""

from __future__ import annotations

from numbers import Integral

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted, check_consistent_length

from .classify import ErrorRate, holdout_error_from_matrix, loocv_error_from_matrix
from .distances import (
    UNIT_COSTS,
    FrequencyFactors,
    GanedPairwise,
    edit_distance_matrix,
    mindist_matrix,
    ned_matrix,
)
from .exceptions import AlphabetMismatchError, LengthMismatchError, ValidationError
from .ga import GaConfig, optimize
from .sax import as_time_series, gaussian_breakpoints, paa, discretize, znormalize
from .sequence import SymbolicSequence

_METRICS = ("ed", "ned", "ganed")


def check_series_collection(X) -> list[np.ndarray]:
    """Validate ``X`` as a collection of 1-D finite series (2-D array or ragged list)."""
    if isinstance(X, np.ndarray) and X.ndim == 2:
        rows = list(X)
    elif isinstance(X, np.ndarray) and X.ndim == 1 and X.dtype != object:
        raise ValidationError("expected a collection of series, got a single 1-D array")
    else:
        rows = list(X)
    if not rows:
        raise ValidationError("empty collection of series")
    return [as_time_series(r) for r in rows]


def check_sequences(X) -> list[SymbolicSequence]:
    seqs = list(X)
    if not seqs:
        raise ValidationError("empty collection of sequences")
    for i, s in enumerate(seqs):
        if not isinstance(s, SymbolicSequence):
            raise ValidationError(f"item {i} is {type(s).__name__}, expected SymbolicSequence")
    first = seqs[0].alphabet
    if any(s.alphabet != first for s in seqs):
        raise AlphabetMismatchError("all sequences must share one alphabet")
    return seqs


def _resolve_seed(random_state) -> int:
    if random_state is None:
        return int(np.random.SeedSequence().generate_state(1, np.uint64)[0])
    if isinstance(random_state, Integral) and 0 <= random_state < 2**64:
        return int(random_state)
    raise ValidationError(f"random_state must be None or a non-negative 64-bit int, got {random_state!r}")


class SAXTransformer(TransformerMixin, BaseEstimator):
    """Map each series to its SAX word.

    Parameters
    ----------
    n_segments : int, default=8
        Word length (number of PAA segments). Every series must have at
        least this many samples.
    alphabet_size : int, default=5
        Number of symbols, between 2 and 64.

    Attributes
    ----------
    breakpoints_ : Breakpoints
        Gaussian cut points used for discretisation.
    """

    def __init__(self, n_segments=8, alphabet_size=5):
        self.n_segments = n_segments
        self.alphabet_size = alphabet_size

    def fit(self, X=None, y=None):
        if not isinstance(self.n_segments, Integral) or self.n_segments < 1:
            raise ValidationError("n_segments must be a positive integer")
        self.breakpoints_ = gaussian_breakpoints(self.alphabet_size)
        return self

    def transform(self, X):
        check_is_fitted(self, "breakpoints_")
        return [discretize(paa(znormalize(ts), self.n_segments), self.breakpoints_)
                for ts in check_series_collection(X)]


class _NearestNeighborBase(ClassifierMixin, BaseEstimator):
    def _store(self, X, y):
        X = check_sequences(X)
        y = np.asarray(y)
        check_consistent_length(X, y)
        self.X_fit_ = X
        self.y_fit_ = y
        self.classes_ = np.unique(y)
        return X, y

    def _pairwise(self, X):
        raise NotImplementedError

    def predict(self, X):
        check_is_fitted(self, "X_fit_")
        D = self._pairwise(check_sequences(X))
        return self.y_fit_[np.argmin(D, axis=1)]

    def holdout_error(self, X, y) -> ErrorRate:
        """Exact 1-NN error on ``(X, y)`` against the fitted references."""
        check_is_fitted(self, "X_fit_")
        return holdout_error_from_matrix(self._pairwise(check_sequences(X)), self.y_fit_, np.asarray(y))


class NearestNeighborClassifier(_NearestNeighborBase):
    """1-NN over symbolic sequences with a fixed distance.

    Parameters
    ----------
    metric : {"ed", "ned", "ganed"} or callable, default="ed"
        A callable receives two sequences and returns a distance.
    lambdas : sequence of float, optional
        Frequency factors; required when ``metric="ganed"``.
    costs : EditCosts, optional
        Edit operation costs (unit costs by default).
    per_gram : bool, default=False
        Divide each GANED n-gram term by its own ``n`` rather than by the depth.
    """

    def __init__(self, metric="ed", lambdas=None, costs=None, per_gram=False):
        self.metric = metric
        self.lambdas = lambdas
        self.costs = costs
        self.per_gram = per_gram

    def fit(self, X, y):
        if not callable(self.metric) and self.metric not in _METRICS:
            raise ValidationError(f"metric must be one of {_METRICS} or a callable")
        if self.metric == "ganed" and self.lambdas is None:
            raise ValidationError("metric='ganed' needs lambdas; use GanedClassifier to tune them")
        self._store(X, y)
        return self

    def _pairwise(self, X):
        costs = self.costs or UNIT_COSTS
        if callable(self.metric):
            return np.array([[self.metric(q, r) for r in self.X_fit_] for q in X], dtype=float)
        if self.metric == "ed":
            return edit_distance_matrix(X, self.X_fit_, costs)
        if self.metric == "ned":
            return ned_matrix(X, self.X_fit_, costs)
        factors = FrequencyFactors(tuple(self.lambdas))
        return GanedPairwise(X, self.X_fit_, factors.n_max, costs, self.per_gram).distances(factors)


class GanedClassifier(_NearestNeighborBase):
    """1-NN under GANED, with frequency factors tuned by a genetic algorithm.

    ``fit`` minimises the leave-one-out 1-NN error on the training set over
    ``lambdas`` in ``[0, 1] ** n_max``. Passing ``lambdas`` skips the search.

    Parameters
    ----------
    n_max : int, default=1
        Deepest n-gram length used (number of frequency factors).
    lambdas : sequence of float, optional
        Fixed frequency factors; overrides ``n_max`` when given.
    p_size, n_gen, m_rate, s_rate
        Population size, generations, mutation rate, selection rate.
    random_state : int or None
        Seed of the genetic algorithm.
    costs : EditCosts, optional
    per_gram : bool, default=False
        Divide each n-gram term by its own ``n`` rather than by the depth.

    Attributes
    ----------
    lambdas_ : FrequencyFactors
    train_error_ : ErrorRate
        Leave-one-out training error at ``lambdas_``.
    ga_result_ : GaResult or None
    """

    def __init__(self, n_max=1, lambdas=None, p_size=12, n_gen=20, m_rate=0.2, s_rate=0.5,
                 random_state=None, costs=None, per_gram=False):
        self.n_max = n_max
        self.lambdas = lambdas
        self.p_size = p_size
        self.n_gen = n_gen
        self.m_rate = m_rate
        self.s_rate = s_rate
        self.random_state = random_state
        self.costs = costs
        self.per_gram = per_gram

    def fit(self, X, y):
        X, y = self._store(X, y)
        if len(X) < 2:
            raise ValidationError("GanedClassifier needs at least two training sequences")
        costs = self.costs or UNIT_COSTS
        n_max = len(self.lambdas) if self.lambdas is not None else self.n_max
        pairwise = GanedPairwise(X, None, n_max, costs, self.per_gram)

        def fitness(genes):
            return loocv_error_from_matrix(pairwise.distances(genes), y).value

        if self.lambdas is None:
            cfg = GaConfig(self.p_size, self.n_gen, self.m_rate, self.s_rate, n_max,
                           _resolve_seed(self.random_state))
            self.ga_result_ = optimize(fitness, cfg)
            self.lambdas_ = self.ga_result_.factors
        else:
            self.ga_result_ = None
            self.lambdas_ = FrequencyFactors(tuple(self.lambdas))
        self.train_error_ = loocv_error_from_matrix(pairwise.distances(self.lambdas_), y)
        return self

    def _pairwise(self, X):
        costs = self.costs or UNIT_COSTS
        return GanedPairwise(X, self.X_fit_, self.lambdas_.n_max, costs, self.per_gram).distances(self.lambdas_)


class SAXMindistClassifier(ClassifierMixin, BaseEstimator):
    """1-NN on raw equal-length series under MINDIST between their SAX words."""

    def __init__(self, n_segments=8, alphabet_size=5):
        self.n_segments = n_segments
        self.alphabet_size = alphabet_size

    def _words(self, X):
        series = check_series_collection(X)
        lengths = {len(s) for s in series}
        if len(lengths) != 1 or (hasattr(self, "length_") and lengths != {self.length_}):
            raise LengthMismatchError("MINDIST needs series of one common length")
        return SAXTransformer(self.n_segments, self.alphabet_size).fit().transform(series), lengths.pop()

    def fit(self, X, y):
        words, self.length_ = self._words(X)
        y = np.asarray(y)
        check_consistent_length(words, y)
        self.words_ = words
        self.y_fit_ = y
        self.classes_ = np.unique(y)
        self.breakpoints_ = gaussian_breakpoints(self.alphabet_size)
        return self

    def _pairwise(self, X):
        check_is_fitted(self, "words_")
        words, _ = self._words(X)
        return mindist_matrix(words, self.words_, self.length_, self.breakpoints_)

    def predict(self, X):
        return self.y_fit_[np.argmin(self._pairwise(X), axis=1)]

    def holdout_error(self, X, y) -> ErrorRate:
        return holdout_error_from_matrix(self._pairwise(X), self.y_fit_, np.asarray(y))
