"""Symbolic Aggregate approXimation of numeric time series.

The transform is the usual three-stage pipeline: z-normalise the series,
reduce it with Piecewise Aggregate Approximation (PAA), then map each PAA mean
to the index of the equiprobable N(0, 1) region it falls in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import ValidationError
from .sequence import Alphabet, SymbolicSequence

MAX_ALPHABET_SIZE = 64
_FLAT_TOLERANCE = 1e-8

# Acklam's rational approximation of the standard normal quantile.
_A = (-3.969683028665376e01, 2.209460984245205e02, -2.759285104469687e02,
      1.383577518672690e02, -3.066479806614716e01, 2.506628277459239e00)
_B = (-5.447609879822406e01, 1.615858368580409e02, -1.556989798598866e02,
      6.680131188771972e01, -1.328068155288572e01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e00,
      -2.549732539343734e00, 4.374664141464968e00, 2.938163982698783e00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e00,
      3.754408661907416e00)
_P_LOW = 0.02425


def _horner(coeffs, x):
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


def norm_ppf(p: float) -> float:
    """Inverse of the standard normal CDF.

    Acklam's piecewise rational approximation (relative error about 1e-9)
    followed by one Halley step against ``math.erfc``, which brings the
    result to near machine precision.
    """
    if not 0.0 < p < 1.0:
        raise ValidationError(f"quantile level must lie in (0, 1), got {p!r}")
    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        x = _horner(_C, q) / (_horner(_D, q) * q + 1.0)
    elif p <= 1.0 - _P_LOW:
        q = p - 0.5
        r = q * q
        x = _horner(_A, r) * q / (_horner(_B, r) * r + 1.0)
    else:
        q = math.sqrt(-2.0 * math.log1p(-p))
        x = -_horner(_C, q) / (_horner(_D, q) * q + 1.0)

    e = 0.5 * math.erfc(-x / math.sqrt(2.0)) - p
    u = e * math.sqrt(2.0 * math.pi) * math.exp(x * x / 2.0)
    return x - u / (1.0 + x * u / 2.0)


@dataclass(frozen=True)
class Breakpoints:
    """Sorted cut points ``beta_1 < ... < beta_{alpha-1}`` of N(0, 1)."""

    betas: tuple[float, ...]
    alphabet_size: int

    def __post_init__(self):
        if len(self.betas) != self.alphabet_size - 1:
            raise ValidationError("need exactly alphabet_size - 1 breakpoints")
        if any(b >= a for b, a in zip(self.betas, self.betas[1:])):
            raise ValidationError("breakpoints must be strictly increasing")

    def __len__(self):
        return len(self.betas)

    def __iter__(self):
        return iter(self.betas)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.betas, dtype=np.float64)


@dataclass(frozen=True)
class PaaVector:
    means: np.ndarray
    source_length: int

    def __len__(self):
        return len(self.means)


def as_time_series(values) -> np.ndarray:
    """Validate ``values`` as a non-empty, finite, one-dimensional series."""
    ts = np.asarray(values, dtype=np.float64)
    if ts.ndim != 1:
        raise ValidationError(f"time series must be one-dimensional, got shape {ts.shape}")
    if ts.size == 0:
        raise ValidationError("time series must contain at least one value")
    if not np.all(np.isfinite(ts)):
        raise ValidationError("time series contains NaN or infinite values")
    return ts


def znormalize(ts) -> np.ndarray:
    """Zero mean, unit population standard deviation.

    Series whose standard deviation is below 1e-8 map to all zeros.
    """
    ts = as_time_series(ts)
    sigma = ts.std()
    if sigma < _FLAT_TOLERANCE:
        return np.zeros_like(ts)
    return (ts - ts.mean()) / sigma


def paa(ts, n_segments: int) -> PaaVector:
    """Piecewise Aggregate Approximation with ``n_segments`` segments.

    Segment ``i`` spans ``[i*n/N, (i+1)*n/N)``. When ``N`` does not divide
    ``n`` a sample straddling a boundary contributes to both neighbours in
    proportion to its overlap.
    """
    ts = as_time_series(ts)
    n = ts.size
    if int(n_segments) != n_segments or not 1 <= n_segments <= n:
        raise ValidationError(f"segment count must be an integer in [1, {n}], got {n_segments!r}")
    N = int(n_segments)
    if n % N == 0:
        return PaaVector(ts.reshape(N, n // N).mean(axis=1), n)
    # Work in units of 1/N so every overlap is an integer.
    seg = np.arange(N)[:, None]
    smp = np.arange(n)[None, :]
    lo = np.maximum(seg * n, smp * N)
    hi = np.minimum((seg + 1) * n, (smp + 1) * N)
    weights = np.clip(hi - lo, 0, None).astype(np.float64)
    return PaaVector(weights @ ts / n, n)


@lru_cache(maxsize=None)
def gaussian_breakpoints(alpha: int) -> Breakpoints:
    """Quantiles of N(0, 1) at ``i/alpha`` for ``i = 1 .. alpha-1``.

    The lower half is computed and mirrored, so the result is exactly
    symmetric about zero.
    """
    if int(alpha) != alpha or not 2 <= alpha <= MAX_ALPHABET_SIZE:
        raise ValidationError(
            f"alphabet size must be an integer in [2, {MAX_ALPHABET_SIZE}], got {alpha!r}"
        )
    alpha = int(alpha)
    betas = [0.0] * (alpha - 1)
    for i in range(1, alpha):
        if 2 * i < alpha:
            betas[i - 1] = norm_ppf(i / alpha)
        elif 2 * i > alpha:
            betas[i - 1] = -norm_ppf((alpha - i) / alpha)
    return Breakpoints(tuple(betas), alpha)


def discretize(paa_vector: PaaVector, breakpoints: Breakpoints) -> SymbolicSequence:
    # side="right" counts the breakpoints <= v, so ties go to the upper region
    means = paa_vector.means if isinstance(paa_vector, PaaVector) else np.asarray(paa_vector)
    symbols = np.searchsorted(breakpoints.array, means, side="right")
    return SymbolicSequence(tuple(symbols.tolist()), Alphabet.sax(breakpoints.alphabet_size))


def sax_transform(ts, n_segments: int, alpha: int) -> SymbolicSequence:
    """SAX word of length ``n_segments`` over an alphabet of ``alpha`` symbols."""
    breakpoints = gaussian_breakpoints(alpha)
    return discretize(paa(znormalize(ts), n_segments), breakpoints)
