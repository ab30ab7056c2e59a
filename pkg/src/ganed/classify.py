"""One-nearest-neighbour classification and its error estimates.

Ties between equally distant references are always resolved in favour of
the smallest reference index, so every error reported here is
deterministic. The ``*_from_matrix`` variants take precomputed distance
matrices and follow exactly the same rule as the callable-based versions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, NamedTuple, Sequence

import numpy as np

from .exceptions import AlphabetMismatchError, ValidationError
from .sequence import SymbolicSequence

DistanceFunction = Callable[[Any, Any], float]


@dataclass(frozen=True)
class LabeledDataset:
    """Parallel tuples of integer class labels and items (sequences or series)."""

    labels: tuple[int, ...]
    items: tuple[Any, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(y) for y in self.labels))
        object.__setattr__(self, "items", tuple(self.items))
        if len(self.labels) != len(self.items):
            raise ValidationError(f"{len(self.labels)} labels for {len(self.items)} items")
        symbolic = [x for x in self.items if isinstance(x, SymbolicSequence)]
        if symbolic and any(s.alphabet != symbolic[0].alphabet for s in symbolic):
            raise AlphabetMismatchError("all sequences of a dataset must share one alphabet")

    @classmethod
    def from_pairs(cls, pairs, name: str = "") -> "LabeledDataset":
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), name)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return zip(self.labels, self.items)

    def __getitem__(self, i):
        return self.labels[i], self.items[i]

    def map(self, fn, name=None) -> "LabeledDataset":
        """Apply ``fn`` to every item, keeping labels."""
        return LabeledDataset(self.labels, tuple(fn(x) for x in self.items),
                              self.name if name is None else name)


@dataclass(frozen=True, order=True)
class ErrorRate:
    """An exact misclassification rate ``misclassified / total``."""

    misclassified: int
    total: int

    def __post_init__(self):
        if self.total < 1 or not 0 <= self.misclassified <= self.total:
            raise ValidationError(f"invalid error count {self.misclassified}/{self.total}")

    @property
    def value(self) -> float:
        return self.misclassified / self.total

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.misclassified, self.total)

    def rounded(self, digits: int = 3) -> float:
        return round(self.value, digits)

    def __float__(self):
        return self.value

    def __str__(self):
        return f"{self.misclassified}/{self.total}"

    @classmethod
    def parse(cls, text: str) -> "ErrorRate":
        k, _, n = text.strip().partition("/")
        return cls(int(k), int(n))


class Neighbor(NamedTuple):
    label: int
    index: int
    distance: float


def nn1(query, refs: LabeledDataset, dist: DistanceFunction) -> Neighbor:
    """Label, index and distance of the nearest reference to ``query``."""
    if len(refs) == 0:
        raise ValidationError("reference set is empty")
    best_i, best_d = -1, np.inf
    for i, item in enumerate(refs.items):
        d = dist(query, item)
        if d < best_d or best_i < 0:
            best_i, best_d = i, d
    return Neighbor(refs.labels[best_i], best_i, float(best_d))


def loocv_error(ds: LabeledDataset, dist: DistanceFunction) -> ErrorRate:
    """Leave-one-out 1-NN error: each item is classified against all the others."""
    if len(ds) < 2:
        raise ValidationError("leave-one-out needs at least two items")
    wrong = 0
    for i, (label, item) in enumerate(ds):
        others = LabeledDataset(ds.labels[:i] + ds.labels[i + 1 :], ds.items[:i] + ds.items[i + 1 :])
        wrong += nn1(item, others, dist).label != label
    return ErrorRate(wrong, len(ds))


def holdout_error(train: LabeledDataset, test: LabeledDataset, dist: DistanceFunction) -> ErrorRate:
    """1-NN error of ``test`` items classified against the whole of ``train``."""
    if len(train) == 0 or len(test) == 0:
        raise ValidationError("train and test splits must both be non-empty")
    wrong = sum(nn1(item, train, dist).label != label for label, item in test)
    return ErrorRate(wrong, len(test))


def nearest_from_matrix(D: np.ndarray) -> np.ndarray:
    """Row-wise argmin; ``np.argmin`` returns the first minimum, i.e. the smallest index."""
    return np.argmin(D, axis=1)


def loocv_error_from_matrix(D: np.ndarray, labels: Sequence[int]) -> ErrorRate:
    D = np.array(D, dtype=np.float64)
    labels = np.asarray(labels)
    if D.shape != (len(labels), len(labels)):
        raise ValidationError(f"distance matrix of shape {D.shape} for {len(labels)} items")
    if len(labels) < 2:
        raise ValidationError("leave-one-out needs at least two items")
    np.fill_diagonal(D, np.inf)
    pred = labels[nearest_from_matrix(D)]
    return ErrorRate(int(np.sum(pred != labels)), len(labels))


def holdout_error_from_matrix(D: np.ndarray, train_labels, test_labels) -> ErrorRate:
    """``D[i, j]`` is the distance from test item ``i`` to train item ``j``."""
    D = np.asarray(D, dtype=np.float64)
    train_labels = np.asarray(train_labels)
    test_labels = np.asarray(test_labels)
    if D.shape != (len(test_labels), len(train_labels)):
        raise ValidationError(f"distance matrix of shape {D.shape} does not match the splits")
    if D.size == 0:
        raise ValidationError("train and test splits must both be non-empty")
    pred = train_labels[nearest_from_matrix(D)]
    return ErrorRate(int(np.sum(pred != test_labels)), len(test_labels))
