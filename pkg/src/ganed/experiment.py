"""Table-style experiments: SAX words, GA-tuned GANED, and a MINDIST baseline.

For every alphabet size the train and test series are converted to SAX
words once. For every n-gram depth the frequency factors are either tuned
on the training set (leave-one-out 1-NN error as fitness) or replayed from
the configuration, then evaluated on the test set. The MINDIST error for the
same words is reported alongside.

Row seeds are derived from ``(seed, alpha, nmax)`` through
``numpy.random.SeedSequence``, so rows are independent of evaluation order.
"""

from __future__ import annotations

import csv
import dataclasses
import hashlib
import io
import json
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .classify import (
    ErrorRate,
    LabeledDataset,
    holdout_error_from_matrix,
    loocv_error_from_matrix,
)
from .distances import GanedPairwise, mindist_matrix, ned_matrix
from .exceptions import ExperimentError, GanedError, ValidationError
from .ga import GaConfig, optimize
from .sax import MAX_ALPHABET_SIZE, gaussian_breakpoints, sax_transform
from .ucr import load_ucr

CSV_HEADER = ("dataset", "alpha", "nmax", "lambdas", "train_error", "test_error", "mindist_error", "seed")


class Distance(str, Enum):
    GANED = "ganed"
    ED = "ed"
    NED = "ned"
    MINDIST = "mindist"


class Evaluation(str, Enum):
    HOLDOUT = "holdout"
    LOOCV_ON_TEST = "loocv_on_test"


@dataclass(frozen=True)
class ExperimentConfig:
    train_path: Optional[str]
    test_path: Optional[str]
    paa_segments: int
    alphabet_sizes: tuple[int, ...] = (3, 10, 20)
    gram_depths: tuple[int, ...] = (1, 2, 3)
    ga: GaConfig = field(default_factory=GaConfig)
    distance: Distance = Distance.GANED
    evaluation: Evaluation = Evaluation.HOLDOUT
    fixed_lambdas: Optional[tuple[float, ...]] = None
    output_path: Optional[str] = None
    output_format: str = "csv"

    def __post_init__(self):
        object.__setattr__(self, "alphabet_sizes", tuple(int(a) for a in self.alphabet_sizes))
        object.__setattr__(self, "gram_depths", tuple(int(n) for n in self.gram_depths))
        object.__setattr__(self, "distance", Distance(self.distance))
        object.__setattr__(self, "evaluation", Evaluation(self.evaluation))
        if self.fixed_lambdas is not None:
            object.__setattr__(self, "fixed_lambdas", tuple(float(x) for x in self.fixed_lambdas))
        if not self.alphabet_sizes:
            raise ValidationError("at least one alphabet size is required")
        for a in self.alphabet_sizes:
            if not 2 <= a <= MAX_ALPHABET_SIZE:
                raise ValidationError(f"alphabet size {a} outside [2, {MAX_ALPHABET_SIZE}]")
        if not self.gram_depths or any(n < 1 for n in self.gram_depths):
            raise ValidationError("gram depths must be integers >= 1")
        if int(self.paa_segments) != self.paa_segments or self.paa_segments < 1:
            raise ValidationError("paa_segments must be a positive integer")
        if self.fixed_lambdas is not None:
            if len(self.gram_depths) != 1 or self.gram_depths[0] != len(self.fixed_lambdas):
                raise ValidationError(
                    "replayed lambdas need exactly one gram depth equal to their count "
                    f"(got depths {list(self.gram_depths)} for {len(self.fixed_lambdas)} lambdas)"
                )
            if any(not 0.0 <= x <= 1.0 for x in self.fixed_lambdas):
                raise ValidationError("replayed lambdas must lie in [0, 1]")
        if self.output_format not in ("csv", "table"):
            raise ValidationError("output format must be 'csv' or 'table'")

    def config_hash(self) -> str:
        """Short digest of every setting that affects the numbers."""
        payload = dataclasses.asdict(self)
        for k in ("output_path", "output_format"):
            payload.pop(k)
        blob = json.dumps(payload, sort_keys=True, default=str)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class ResultRow:
    dataset: str
    alpha: int
    nmax: int
    lambdas: tuple[float, ...]
    train_error: Optional[ErrorRate]
    test_error: ErrorRate
    mindist_error: Optional[ErrorRate]
    seed: int


@dataclass(frozen=True)
class ExperimentResult:
    rows: tuple[ResultRow, ...]
    seed: int
    config_hash: str
    paa_segments: int
    distance: str = Distance.GANED.value
    evaluation: str = Evaluation.HOLDOUT.value
    wall_time: Optional[float] = field(default=None, compare=False)


def row_seed(seed: int, alpha: int, nmax: int) -> int:
    """GA seed for one ``(alpha, nmax)`` row, derived from the experiment seed."""
    return int(np.random.SeedSequence([seed, alpha, nmax]).generate_state(1, np.uint64)[0])


def round_lambda(x: float) -> float:
    """Five significant digits, the precision the results are reported at."""
    return min(max(float(f"{x:.5g}"), 0.0), 1.0)


def format_lambda(x: float) -> str:
    short = f"{x:.5g}"
    return short if float(short) == x else repr(float(x))


def _evaluate(D_eval: np.ndarray, train_labels, eval_labels, evaluation: Evaluation) -> ErrorRate:
    if evaluation is Evaluation.HOLDOUT:
        return holdout_error_from_matrix(D_eval, train_labels, eval_labels)
    return loocv_error_from_matrix(D_eval, eval_labels)


def run_on_datasets(cfg: ExperimentConfig, train: LabeledDataset, test: LabeledDataset) -> ExperimentResult:
    """Run ``cfg`` on already-loaded datasets of numeric series."""
    start = time.perf_counter()
    name = train.name or "dataset"
    if len(train) < 2:
        raise ValidationError("the training set needs at least two series")
    if cfg.evaluation is Evaluation.LOOCV_ON_TEST and len(test) < 2:
        raise ValidationError("leave-one-out on the test set needs at least two series")
    N = int(cfg.paa_segments)
    shortest = min(len(ts) for ts in train.items + test.items)
    if N > shortest:
        raise ValidationError(f"paa_segments={N} exceeds the shortest series length {shortest}")
    lengths = {len(ts) for ts in train.items + test.items}
    y_train = np.asarray(train.labels)
    y_test = np.asarray(test.labels)
    holdout = cfg.evaluation is Evaluation.HOLDOUT
    seed = cfg.ga.seed

    rows = []
    for alpha in cfg.alphabet_sizes:
        context = f"{name} alpha={alpha}"
        try:
            words_train = [sax_transform(ts, N, alpha) for ts in train.items]
            words_test = [sax_transform(ts, N, alpha) for ts in test.items]
            eval_refs = words_train if holdout else words_test

            mindist_error = None
            if len(lengths) == 1:
                D = mindist_matrix(words_test, eval_refs, next(iter(lengths)), gaussian_breakpoints(alpha))
                mindist_error = _evaluate(D, y_train, y_test, cfg.evaluation)

            if cfg.distance is Distance.GANED:
                depth = max(cfg.gram_depths)
                pw_train = GanedPairwise(words_train, None, depth)
                pw_eval = GanedPairwise(words_test, words_train if holdout else None, depth)
                for nmax in cfg.gram_depths:
                    context = f"{name} alpha={alpha} nmax={nmax}"
                    if cfg.fixed_lambdas is not None:
                        lambdas = cfg.fixed_lambdas
                    else:
                        def fitness(genes, _pw=pw_train):
                            return loocv_error_from_matrix(_pw.distances(genes), y_train).value

                        ga_cfg = dataclasses.replace(cfg.ga, n_par=nmax, seed=row_seed(seed, alpha, nmax))
                        lambdas = tuple(round_lambda(g) for g in optimize(fitness, ga_cfg).genes)
                    rows.append(ResultRow(
                        name, alpha, nmax, lambdas,
                        loocv_error_from_matrix(pw_train.distances(lambdas), y_train),
                        _evaluate(pw_eval.distances(lambdas), y_train, y_test, cfg.evaluation),
                        mindist_error, seed,
                    ))
            else:
                if cfg.distance is Distance.ED:
                    D_train = GanedPairwise(words_train, None, 1).ed
                    D_eval = GanedPairwise(words_test, words_train if holdout else None, 1).ed
                elif cfg.distance is Distance.NED:
                    D_train = ned_matrix(words_train)
                    D_eval = ned_matrix(words_test, words_train if holdout else None)
                else:
                    if mindist_error is None:
                        raise ValidationError("MINDIST needs series of one common length")
                    bps = gaussian_breakpoints(alpha)
                    n = next(iter(lengths))
                    D_train = mindist_matrix(words_train, words_train, n, bps)
                    D_eval = mindist_matrix(words_test, eval_refs, n, bps)
                rows.append(ResultRow(
                    name, alpha, 0, (),
                    loocv_error_from_matrix(D_train, y_train),
                    _evaluate(D_eval, y_train, y_test, cfg.evaluation),
                    mindist_error, seed,
                ))
        except GanedError as exc:
            raise ExperimentError(f"{context}: {exc}") from exc

    return ExperimentResult(
        tuple(rows), seed, cfg.config_hash(), N, cfg.distance.value, cfg.evaluation.value,
        time.perf_counter() - start,
    )


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    if cfg.train_path is None or cfg.test_path is None:
        raise ValidationError("both train and test paths are required")
    return run_on_datasets(cfg, load_ucr(cfg.train_path), load_ucr(cfg.test_path))


def _fmt_error(e: Optional[ErrorRate]) -> str:
    return "" if e is None else str(e)


def emit_results(result: ExperimentResult, fmt: str = "csv") -> str:
    """Render ``result`` as CSV (exact fractions) or as an aligned text table."""
    if not result.rows:
        raise ValidationError("cannot emit an empty result")
    if fmt == "csv":
        return _emit_csv(result)
    if fmt == "table":
        return _emit_table(result)
    raise ValidationError(f"unknown output format {fmt!r}")


def _emit_csv(result: ExperimentResult) -> str:
    buf = io.StringIO()
    for key in ("seed", "config_hash", "paa_segments", "distance", "evaluation"):
        buf.write(f"# {key}={getattr(result, key)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in result.rows:
        writer.writerow([
            r.dataset, r.alpha, r.nmax, ";".join(format_lambda(x) for x in r.lambdas),
            _fmt_error(r.train_error), _fmt_error(r.test_error), _fmt_error(r.mindist_error), r.seed,
        ])
    return buf.getvalue()


def parse_results_csv(text: str) -> ExperimentResult:
    """Inverse of the CSV form of :func:`emit_results`."""
    meta = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key] = value
        elif line.strip():
            body.append(line)
    reader = csv.reader(body)
    header = tuple(next(reader))
    if header != CSV_HEADER:
        raise ValidationError(f"unexpected CSV header {header}")

    def err(s):
        return ErrorRate.parse(s) if s else None

    rows = tuple(
        ResultRow(d, int(a), int(n), tuple(float(x) for x in lam.split(";") if x),
                  err(tr), ErrorRate.parse(te), err(md), int(sd))
        for d, a, n, lam, tr, te, md, sd in reader
    )
    return ExperimentResult(
        rows, int(meta["seed"]), meta["config_hash"], int(meta["paa_segments"]),
        meta.get("distance", Distance.GANED.value), meta.get("evaluation", Evaluation.HOLDOUT.value),
    )


def _emit_table(result: ExperimentResult) -> str:
    dist = result.distance.upper()
    head = ["alpha", "n-gram", "lambda_n", "train", dist, "MINDIST", "# exact (train test mindist)"]
    body = []
    for r in result.rows:
        lam = "[" + " ".join(format_lambda(x) for x in r.lambdas) + "]" if r.lambdas else "-"
        body.append([
            str(r.alpha), str(r.nmax) if r.nmax else "-", lam,
            "" if r.train_error is None else f"{r.train_error.value:.3f}",
            f"{r.test_error.value:.3f}",
            "" if r.mindist_error is None else f"{r.mindist_error.value:.3f}",
            "# " + " ".join(_fmt_error(e) or "-" for e in (r.train_error, r.test_error, r.mindist_error)),
        ])
    widths = [max(len(row[i]) for row in [head] + body) for i in range(len(head))]
    lines = []
    for dataset in dict.fromkeys(r.dataset for r in result.rows):
        lines.append(f"{dataset}  (N={result.paa_segments}, evaluation={result.evaluation}, "
                     f"seed={result.seed}, config={result.config_hash})")
        lines.append("  ".join(h.ljust(w) for h, w in zip(head, widths)).rstrip())
        for r, row in zip(result.rows, body):
            if r.dataset == dataset:
                lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    if result.wall_time is not None:
        lines.append(f"# wall time {result.wall_time:.2f}s")
    return "\n".join(lines) + "\n"
