from pathlib import Path

import numpy as np
import pytest

from ganed.classify import LabeledDataset

UCR_DIR = Path(__file__).parent / "data" / "ucr"


def ucr_pair(name):
    train, test = UCR_DIR / f"{name}_TRAIN.txt", UCR_DIR / f"{name}_TEST.txt"
    if not (train.exists() and test.exists()):
        pytest.skip(f"{name} not available under {UCR_DIR}")
    return train, test


def two_class_series(n_per_class=4, length=32, seed=0):
    """Sine vs. square-ish bumps with small noise: trivially separable after SAX."""
    rng = np.random.default_rng(seed)
    t = np.linspace(0, 2 * np.pi, length)
    items, labels = [], []
    for k in range(n_per_class):
        items.append(np.sin(t) + 0.05 * rng.standard_normal(length))
        labels.append(1)
        items.append(np.sign(np.sin(3 * t)) + 0.05 * rng.standard_normal(length))
        labels.append(2)
    return LabeledDataset(tuple(labels), tuple(items))


def write_ucr(path, ds):
    lines = [",".join([str(label)] + [f"{v:.6f}" for v in ts]) for label, ts in ds]
    path.write_text("\n".join(lines) + "\n")
    return path


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def synthetic_files(tmp_path):
    train = write_ucr(tmp_path / "Toy_TRAIN.txt", two_class_series(4, seed=1))
    test = write_ucr(tmp_path / "Toy_TEST.txt", two_class_series(3, seed=2))
    return train, test
