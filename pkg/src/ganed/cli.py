"""Command-line interface.

Settings resolve as: command-line flag, then ``--config`` file, then the
built-in default. A config file holds ``key = value`` lines; keys are the
long flag names without dashes (``paa-segments`` or ``paa_segments``),
lists are comma-joined, ``#`` starts a comment.

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .classify import loocv_error_from_matrix
from .distances import FrequencyFactors, GanedPairwise, edit_distance, ganed, mindist, ned
from .exceptions import DataError, ExperimentError, GanedError
from .experiment import (
    Distance,
    Evaluation,
    ExperimentConfig,
    emit_results,
    round_lambda,
    row_seed,
    run_experiment,
    format_lambda,
)
from .ga import GaConfig, optimize
from .sax import gaussian_breakpoints, sax_transform
from .sequence import Alphabet, make_sequence, sequences_from_text
from .ucr import load_ucr

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3

DEFAULTS = {
    "alpha": [3, 10, 20],
    "nmax": [1, 2, 3],
    "distance": "ganed",
    "evaluation": "holdout",
    "seed": 0,
    "psize": 12,
    "ngen": 20,
    "mrate": 0.2,
    "srate": 0.5,
    "format": "csv",
}


class UsageError(GanedError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text):
    return [int(x) for x in str(text).split(",") if x.strip()]


def _float_list(text):
    return [float(x) for x in str(text).split(",") if x.strip()]


def read_config(path) -> dict:
    """Parse a flat ``key = value`` config file."""
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


_CONVERT = {
    "alpha": _int_list, "nmax": _int_list, "lambda": _float_list, "sweep_n": _int_list,
    "paa_segments": int, "seed": int, "psize": int, "ngen": int,
    "mrate": float, "srate": float,
}


def _settings(args) -> dict:
    """Merge flags over the config file over the defaults."""
    file_values = read_config(args.config) if getattr(args, "config", None) else {}
    merged = dict(DEFAULTS)
    for key, value in file_values.items():
        try:
            merged[key] = _CONVERT.get(key, str)(value)
        except ValueError:
            raise UsageError(f"bad value for {key!r} in config: {value!r}") from None
    for key, value in vars(args).items():
        if value is not None and key not in ("command", "func", "config"):
            merged[key] = value
    # keys given explicitly, by flag or by file
    merged["_set"] = set(file_values) | {k for k, v in vars(args).items() if v is not None}
    return merged


def _need(settings, key, flag):
    if settings.get(key) is None:
        raise UsageError(f"missing required setting {flag}")
    return settings[key]


def _ga_config(s, n_par=1, seed=None) -> GaConfig:
    try:
        return GaConfig(p_size=int(s["psize"]), n_gen=int(s["ngen"]), m_rate=float(s["mrate"]),
                        s_rate=float(s["srate"]), n_par=n_par, seed=int(s["seed"] if seed is None else seed))
    except GanedError as exc:
        raise UsageError(str(exc)) from None


def _experiment_config(s, paa_segments) -> ExperimentConfig:
    lam = s.get("lambda")
    nmax = s["nmax"]
    if lam is not None and "nmax" not in s["_set"]:
        nmax = [len(lam)]
    try:
        return ExperimentConfig(
            train_path=_need(s, "train", "--train"), test_path=_need(s, "test", "--test"),
            paa_segments=paa_segments, alphabet_sizes=tuple(s["alpha"]), gram_depths=tuple(nmax),
            ga=_ga_config(s), distance=Distance(s["distance"]), evaluation=Evaluation(s["evaluation"]),
            fixed_lambdas=tuple(lam) if lam is not None else None,
            output_path=s.get("out"), output_format=s["format"],
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _single_alpha(s, what) -> int:
    if "alpha" not in s["_set"] or len(s["alpha"]) != 1:
        raise UsageError(f"{what} needs exactly one --alpha")
    return s["alpha"][0]


def _write(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_breakpoints(s):
    lines = []
    for alpha in s["alpha"]:
        betas = gaussian_breakpoints(alpha).betas
        lines.append(f"{alpha}\t" + " ".join(f"{b:.10f}" for b in betas))
    _write("\n".join(lines) + "\n", s.get("out"))


def cmd_dist(s):
    kind = Distance(s["distance"])
    a, b = s["first"], s["second"]
    if kind is Distance.MINDIST:
        alpha = _single_alpha(s, "mindist")
        alphabet = Alphabet.sax(alpha)
        S, T = make_sequence(a, alphabet), make_sequence(b, alphabet)
        n = s.get("original_length") or len(S)
        value = mindist(S, T, n, gaussian_breakpoints(alpha))
    else:
        S, T = sequences_from_text(a, b)
        if kind is Distance.ED:
            value = edit_distance(S, T)
        elif kind is Distance.NED:
            value = ned(S, T)
        else:
            value = ganed(S, T, FrequencyFactors(tuple(_need(s, "lambda", "--lambda"))))
    _write(f"{value:.10g}\n", s.get("out"))


def cmd_sax(s):
    ds = load_ucr(s["input"])
    N = _need(s, "paa_segments", "--paa-segments")
    alpha = _single_alpha(s, "sax")
    lines = [f"{label} {sax_transform(ts, N, alpha).to_text()}" for label, ts in ds]
    _write("\n".join(lines) + "\n", s.get("out"))


def _words(ds, N, alpha):
    return [sax_transform(ts, N, alpha) for ts in ds.items]


def cmd_classify(s):
    cfg = _experiment_config(s, _need(s, "paa_segments", "--paa-segments"))
    if cfg.distance is Distance.GANED and cfg.fixed_lambdas is None:
        raise UsageError("classify with ganed needs --lambda (use 'optimize' to tune it)")
    result = run_experiment(cfg)
    lines = []
    for r in result.rows:
        lam = ";".join(format_lambda(x) for x in r.lambdas)
        lines.append(f"{r.dataset} alpha={r.alpha} distance={cfg.distance.value}"
                     + (f" lambdas={lam}" if lam else "")
                     + f" {cfg.evaluation.value}_error={r.test_error.value:.3f} ({r.test_error})")
    _write("\n".join(lines) + "\n", s.get("out"))


def cmd_optimize(s):
    train = load_ucr(_need(s, "train", "--train"))
    N = _need(s, "paa_segments", "--paa-segments")
    lines = []
    for alpha in s["alpha"]:
        words = _words(train, N, alpha)
        pw = GanedPairwise(words, None, max(s["nmax"]))

        def fitness(genes):
            return loocv_error_from_matrix(pw.distances(genes), train.labels).value

        for nmax in s["nmax"]:
            result = optimize(fitness, _ga_config(s, nmax, row_seed(int(s["seed"]), alpha, nmax)))
            lam = [round_lambda(g) for g in result.genes]
            err = loocv_error_from_matrix(pw.distances(lam), train.labels)
            lines.append(f"{train.name} alpha={alpha} nmax={nmax} "
                         f"lambdas={';'.join(format_lambda(x) for x in lam)} "
                         f"train_error={err.value:.3f} ({err}) evaluations={result.evaluations}")
    _write("\n".join(lines) + "\n", s.get("out"))


def cmd_experiment(s):
    sweep = s.get("sweep_n")
    segments = sweep if sweep else [_need(s, "paa_segments", "--paa-segments")]
    chunks = []
    for N in segments:
        cfg = _experiment_config(s, N)
        chunks.append(emit_results(run_experiment(cfg), cfg.output_format))
    _write("\n".join(chunks), s.get("out"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ganed", description="GANED distance toolkit and experiment runner")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, data=True, ga=False):
        p.add_argument("--config", help="flat key = value settings file")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--alpha", type=int, action="append", help="alphabet size (repeatable)")
        if data:
            p.add_argument("--train", help="UCR-format training file")
            p.add_argument("--test", help="UCR-format test file")
            p.add_argument("--paa-segments", dest="paa_segments", type=int, help="SAX word length N")
        if ga:
            p.add_argument("--nmax", type=int, action="append", help="n-gram depth (repeatable)")
            p.add_argument("--seed", type=int)
            p.add_argument("--psize", type=int, help="population size")
            p.add_argument("--ngen", type=int, help="number of generations")
            p.add_argument("--mrate", type=float, help="mutation rate")
            p.add_argument("--srate", type=float, help="selection rate")

    p = sub.add_parser("breakpoints", help="print Gaussian breakpoints for each alphabet size")
    common(p, data=False)
    p.set_defaults(func=cmd_breakpoints)

    p = sub.add_parser("dist", help="distance between two glyph strings")
    common(p, data=False)
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--distance", choices=[d.value for d in Distance])
    p.add_argument("--lambda", dest="lambda", type=_float_list, help="comma-joined frequency factors")
    p.add_argument("--original-length", dest="original_length", type=int,
                   help="series length behind the SAX words (mindist only)")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("sax", help="convert a UCR file to SAX words")
    common(p, data=False)
    p.add_argument("input")
    p.add_argument("--paa-segments", dest="paa_segments", type=int)
    p.set_defaults(func=cmd_sax)

    for name, func, helptext in (
        ("classify", cmd_classify, "1-NN error of one distance on a train/test pair"),
        ("optimize", cmd_optimize, "tune frequency factors on a training set"),
        ("experiment", cmd_experiment, "full run: tuned GANED against MINDIST"),
    ):
        p = sub.add_parser(name, help=helptext)
        common(p, ga=True)
        if name != "optimize":
            p.add_argument("--lambda", dest="lambda", type=_float_list,
                           help="comma-joined frequency factors (replay, skips tuning)")
            p.add_argument("--distance", choices=[d.value for d in Distance])
            p.add_argument("--evaluation", choices=[e.value for e in Evaluation])
            p.add_argument("--format", choices=["csv", "table"])
        if name == "experiment":
            p.add_argument("--sweep-N", dest="sweep_n", type=_int_list,
                           help="comma-joined word lengths to run in turn")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = _settings(args)
        args.func(settings)
    except UsageError as exc:
        print(f"ganed: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"ganed: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ExperimentError as exc:
        code = EXIT_DATA if isinstance(exc.__cause__, DataError) else EXIT_USAGE
        print(f"ganed: error: {exc}", file=sys.stderr)
        return code
    except GanedError as exc:
        print(f"ganed: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"ganed: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
