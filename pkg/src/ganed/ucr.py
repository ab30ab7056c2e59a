"""Reader for the UCR time series archive's plain-text format.

One series per line: the class label first, then the values. Fields may be
separated by commas, whitespace, or both. Rows may differ in length.
"""

from __future__ import annotations

import math
import re
from pathlib import Path

import numpy as np

from .classify import LabeledDataset
from .exceptions import DataError

_SPLIT = re.compile(r"[,\s]+")


def _parse_label(token: str, path, lineno) -> int:
    try:
        return int(token)
    except ValueError:
        pass
    # the classic archive writes labels as reals, e.g. "1.0000000e+00"
    try:
        value = float(token)
    except ValueError:
        raise DataError(f"class label {token!r} is not an integer", path, lineno) from None
    if not math.isfinite(value) or value != int(value):
        raise DataError(f"class label {token!r} is not an integer", path, lineno)
    return int(value)


def dataset_name(path) -> str:
    """``GunPoint_TRAIN.txt`` -> ``GunPoint``."""
    stem = Path(path).stem
    return re.sub(r"_(TRAIN|TEST)$", "", stem, flags=re.IGNORECASE)


def parse_ucr(text: str, path=None, name: str = "") -> LabeledDataset:
    labels, series = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        fields = [f for f in _SPLIT.split(line) if f]
        label = _parse_label(fields[0], path, lineno)
        if len(fields) < 2:
            raise DataError("row has a label but no values", path, lineno)
        try:
            values = np.array([float(f) for f in fields[1:]])
        except ValueError as exc:
            raise DataError(f"non-numeric field: {exc}", path, lineno) from None
        if not np.all(np.isfinite(values)):
            raise DataError("row contains NaN or infinite values", path, lineno)
        labels.append(label)
        series.append(values)
    if not series:
        raise DataError("file contains no series", path)
    return LabeledDataset(tuple(labels), tuple(series), name)


def load_ucr(path) -> LabeledDataset:
    """Load a UCR-format file into a :class:`LabeledDataset` of float arrays."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DataError(f"cannot read file: {exc.strerror}", path) from None
    return parse_ucr(text, path, dataset_name(path))
