"""Edit distance, normalized edit distance, GANED and MINDIST.

GANED scales the edit distance by one minus a weighted n-gram overlap term.
With ``k`` frequency factors (n-gram depth ``k``)::

    phi = 2 * sum_{n=1..k} lambda_n * (overlap_n(S, T) + n - 1) / (k * (|S| + |T|))
    ganed(S, T) = ed(S, T) * (1 - clip(phi, 0, 1))

Since ``overlap_n + n - 1 <= min(|S|, |T|)`` whenever ``k <= min(|S|, |T|)``,
``phi`` stays in [0, 1] and the clip only matters for depths beyond the
shorter sequence. ``per_gram=True`` selects the alternative reading that
divides each term by its own ``n`` instead of by ``k``; that sum can exceed 1.

The n-gram terms and the edit distance do not depend on the frequency
factors, so :class:`GanedPairwise` computes them once for a batch
of sequence pairs and then re-weights them for any ``lambdas`` in O(pairs).
This is what keeps genetic-algorithm tuning cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numba
import numpy as np

from .exceptions import AlphabetMismatchError, LengthMismatchError, ValidationError
from .sax import Breakpoints
from .sequence import SymbolicSequence, ngram_profile, overlap


@dataclass(frozen=True)
class EditCosts:
    """Costs of deleting, inserting and substituting one symbol; a match costs 0."""

    delete: float = 1.0
    insert: float = 1.0
    substitute: float = 1.0

    def __post_init__(self):
        for name in ("delete", "insert", "substitute"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValidationError(f"{name} cost must be finite and >= 0, got {value!r}")

    @property
    def symmetric(self) -> bool:
        return self.delete == self.insert


UNIT_COSTS = EditCosts()


@dataclass(frozen=True)
class FrequencyFactors:
    """Weights ``lambda_1 .. lambda_nmax`` of the n-gram overlap terms, each in [0, 1]."""

    lambdas: tuple[float, ...]

    def __post_init__(self):
        lambdas = tuple(float(x) for x in np.atleast_1d(self.lambdas))
        object.__setattr__(self, "lambdas", lambdas)
        if not lambdas:
            raise ValidationError("at least one frequency factor is required")
        for i, lam in enumerate(lambdas, 1):
            if not 0.0 <= lam <= 1.0:
                raise ValidationError(f"frequency factor lambda_{i}={lam!r} outside [0, 1]")

    @property
    def n_max(self) -> int:
        return len(self.lambdas)

    def __len__(self):
        return len(self.lambdas)

    def __iter__(self):
        return iter(self.lambdas)


def _as_factors(factors) -> FrequencyFactors:
    return factors if isinstance(factors, FrequencyFactors) else FrequencyFactors(tuple(factors))


def _check_alphabets(S: SymbolicSequence, T: SymbolicSequence):
    if S.alphabet != T.alphabet:
        raise AlphabetMismatchError(
            f"sequences use different alphabets (sizes {S.alphabet.size} and {T.alphabet.size})"
        )


@numba.njit(cache=True)
def _ed_kernel(a, b, delete, insert, substitute):
    n = a.shape[0]
    m = b.shape[0]
    prev = np.empty(m + 1)
    cur = np.empty(m + 1)
    for j in range(m + 1):
        prev[j] = j * insert
    for i in range(1, n + 1):
        cur[0] = i * delete
        ai = a[i - 1]
        for j in range(1, m + 1):
            best = prev[j - 1] + (0.0 if ai == b[j - 1] else substitute)
            d = prev[j] + delete
            if d < best:
                best = d
            d = cur[j - 1] + insert
            if d < best:
                best = d
            cur[j] = best
        prev, cur = cur, prev
    return prev[m]


@numba.njit(cache=True)
def _ed_matrix_kernel(flat_a, offsets_a, flat_b, offsets_b, delete, insert, substitute, symmetric):
    na = offsets_a.shape[0] - 1
    nb = offsets_b.shape[0] - 1
    out = np.zeros((na, nb))
    for i in range(na):
        a = flat_a[offsets_a[i] : offsets_a[i + 1]]
        start = i + 1 if symmetric else 0
        for j in range(start, nb):
            b = flat_b[offsets_b[j] : offsets_b[j + 1]]
            out[i, j] = _ed_kernel(a, b, delete, insert, substitute)
            if symmetric:
                out[j, i] = out[i, j]
    return out


def edit_distance(S: SymbolicSequence, T: SymbolicSequence, costs: EditCosts = UNIT_COSTS) -> float:
    """Minimum total cost of edit operations turning ``S`` into ``T``.

    Two-row Wagner-Fischer dynamic program, O(|S|*|T|) time.

    >>> from ganed.sequence import sequences_from_text
    >>> edit_distance(*sequences_from_text("MARWAN", "FUAD"))
    5.0
    """
    _check_alphabets(S, T)
    return float(_ed_kernel(S.array, T.array, costs.delete, costs.insert, costs.substitute))


def edit_distance_table(S: SymbolicSequence, T: SymbolicSequence, costs: EditCosts = UNIT_COSTS) -> np.ndarray:
    """Full ``(|S|+1) x (|T|+1)`` dynamic-programming table; the last cell is the distance."""
    _check_alphabets(S, T)
    n, m = len(S), len(T)
    D = np.zeros((n + 1, m + 1))
    D[:, 0] = np.arange(n + 1) * costs.delete
    D[0, :] = np.arange(m + 1) * costs.insert
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            sub = 0.0 if S[i - 1] == T[j - 1] else costs.substitute
            D[i, j] = min(D[i - 1, j - 1] + sub, D[i - 1, j] + costs.delete, D[i, j - 1] + costs.insert)
    return D


def _pack(seqs: Sequence[SymbolicSequence]):
    lengths = np.fromiter((len(s) for s in seqs), dtype=np.int64, count=len(seqs))
    offsets = np.zeros(len(seqs) + 1, dtype=np.int64)
    np.cumsum(lengths, out=offsets[1:])
    flat = np.concatenate([s.array for s in seqs]) if len(seqs) else np.empty(0, np.int64)
    return flat.astype(np.int64), offsets


def _check_batch(A, B):
    seqs = list(A) + list(B)
    if seqs:
        first = seqs[0].alphabet
        if any(s.alphabet != first for s in seqs):
            raise AlphabetMismatchError("all sequences must share one alphabet")


def edit_distance_matrix(A: Sequence[SymbolicSequence], B: Optional[Sequence[SymbolicSequence]] = None,
                         costs: EditCosts = UNIT_COSTS) -> np.ndarray:
    """Pairwise edit distances, ``out[i, j] = edit_distance(A[i], B[j])``.

    With ``B`` omitted the matrix is ``A`` against itself and only one
    triangle is computed (valid when deletions and insertions cost the same).
    """
    symmetric = B is None and costs.symmetric
    B = A if B is None else B
    _check_batch(A, B)
    fa, oa = _pack(A)
    fb, ob = _pack(B)
    return _ed_matrix_kernel(fa, oa, fb, ob, costs.delete, costs.insert, costs.substitute, symmetric)


def gram_terms(S: SymbolicSequence, T: SymbolicSequence, n_max: int) -> np.ndarray:
    """``2 * (overlap_n + n - 1) / (|S| + |T|)`` for ``n = 1 .. n_max``.

    Grams longer than the shorter sequence have zero overlap but keep their
    ``n - 1`` term. All terms are zero for two empty sequences.
    """
    total = len(S) + len(T)
    terms = np.zeros(n_max)
    if total == 0:
        return terms
    for n in range(1, n_max + 1):
        ov = overlap(ngram_profile(S, n), ngram_profile(T, n))
        terms[n - 1] = 2.0 * (ov + n - 1) / total
    return terms


def _phi(lambdas, terms, per_gram=False):
    # Same operation order for scalars and arrays, so both paths round identically.
    phi = 0.0 * terms[0]
    for n, (lam, t) in enumerate(zip(lambdas, terms), 1):
        phi = phi + lam * (t / n if per_gram else t)
    return phi if per_gram else phi / len(lambdas)


def frequency_term(S: SymbolicSequence, T: SymbolicSequence, factors, per_gram: bool = False) -> float:
    """The unclipped overlap term ``phi`` that GANED subtracts from 1."""
    factors = _as_factors(factors)
    return float(_phi(factors.lambdas, gram_terms(S, T, factors.n_max), per_gram))


def ganed(S: SymbolicSequence, T: SymbolicSequence, factors, costs: EditCosts = UNIT_COSTS,
          per_gram: bool = False) -> float:
    """GANED distance between ``S`` and ``T`` for the given frequency factors.

    Always satisfies ``0 <= ganed <= edit_distance``; with every factor at
    zero it equals the edit distance exactly. Two empty sequences are at
    distance 0.

    >>> from ganed.sequence import sequences_from_text
    >>> ganed(*sequences_from_text("MARWAN", "FUAD"), [1.0])
    4.0
    """
    factors = _as_factors(factors)
    _check_alphabets(S, T)
    if len(S) + len(T) == 0:
        return 0.0
    ed = edit_distance(S, T, costs)
    if ed == 0.0:
        return 0.0
    phi = _phi(factors.lambdas, gram_terms(S, T, factors.n_max), per_gram)
    return float(ed * (1.0 - min(max(phi, 0.0), 1.0)))


class GanedPairwise:
    """Factor-independent parts of GANED for every pair in ``A x B``.

    ``distances(lambdas)`` then yields the same values as calling
    :func:`ganed` pair by pair, bit for bit, for any number of factors up
    to ``n_max``.
    """

    def __init__(self, A, B=None, n_max: int = 3, costs: EditCosts = UNIT_COSTS, per_gram: bool = False):
        self.same = B is None
        self.A = list(A)
        self.B = self.A if B is None else list(B)
        self.n_max = int(n_max)
        self.per_gram = per_gram
        if self.n_max < 1:
            raise ValidationError("n_max must be >= 1")
        self.ed = edit_distance_matrix(self.A, None if self.same else self.B, costs)
        self.terms = np.zeros((self.n_max, len(self.A), len(self.B)))
        for i, s in enumerate(self.A):
            js = range(i, len(self.B)) if self.same else range(len(self.B))
            for j in js:
                t = gram_terms(s, self.B[j], self.n_max)
                self.terms[:, i, j] = t
                if self.same:
                    self.terms[:, j, i] = t

    def distances(self, factors) -> np.ndarray:
        factors = _as_factors(factors)
        if factors.n_max > self.n_max:
            raise ValidationError(f"got {factors.n_max} factors for n-gram depth {self.n_max}")
        phi = _phi(factors.lambdas, self.terms[: factors.n_max], self.per_gram)
        return self.ed * (1.0 - np.clip(phi, 0.0, 1.0))


def ned(S: SymbolicSequence, T: SymbolicSequence, costs: EditCosts = UNIT_COSTS) -> float:
    """Normalized edit distance: min over editing paths of weight / path length.

    Exact dynamic program over (path length, i, j) in O(|S|*|T|*(|S|+|T|)).
    This is *not* the edit distance divided by anything. Two empty sequences
    are at distance 0.
    """
    _check_alphabets(S, T)
    n, m = len(S), len(T)
    if n + m == 0:
        return 0.0
    sub = np.where(S.array[:, None] == T.array[None, :], 0.0, costs.substitute)
    W = np.full((n + 1, m + 1), np.inf)
    W[0, 0] = 0.0
    best = np.inf
    for L in range(1, n + m + 1):
        nxt = np.full_like(W, np.inf)
        np.minimum(nxt[1:, :], W[:-1, :] + costs.delete, out=nxt[1:, :])
        np.minimum(nxt[:, 1:], W[:, :-1] + costs.insert, out=nxt[:, 1:])
        np.minimum(nxt[1:, 1:], W[:-1, :-1] + sub, out=nxt[1:, 1:])
        W = nxt
        if L >= max(n, m):
            best = min(best, W[n, m] / L)
    return float(best)


def ned_matrix(A, B=None, costs: EditCosts = UNIT_COSTS) -> np.ndarray:
    same = B is None
    B = A if same else B
    out = np.zeros((len(A), len(B)))
    for i, s in enumerate(A):
        for j in range(i + 1 if same else 0, len(B)):
            out[i, j] = ned(s, B[j], costs)
            if same:
                out[j, i] = ned(B[j], s, costs) if not costs.symmetric else out[i, j]
    return out


@lru_cache(maxsize=None)
def _cell_table(breakpoints: Breakpoints) -> np.ndarray:
    alpha = breakpoints.alphabet_size
    betas = breakpoints.betas
    table = np.zeros((alpha, alpha))
    for a in range(alpha):
        for b in range(alpha):
            if abs(a - b) > 1:
                hi, lo = max(a, b), min(a, b)
                # betas is 0-indexed: beta_k lives at betas[k - 1]
                table[a, b] = betas[hi - 1] - betas[lo]
    table.flags.writeable = False
    return table


def mindist_table(breakpoints: Breakpoints) -> np.ndarray:
    """Symbol-pair lookup table: zero for equal or adjacent symbols, else the breakpoint gap."""
    return _cell_table(breakpoints)


def _check_mindist(Shat, Rhat, original_length, breakpoints):
    if len(Shat) != len(Rhat):
        raise LengthMismatchError(f"SAX words have lengths {len(Shat)} and {len(Rhat)}")
    if len(Shat) == 0:
        raise ValidationError("SAX words must be non-empty")
    for w in (Shat, Rhat):
        if w.alphabet.size != breakpoints.alphabet_size:
            raise AlphabetMismatchError(
                f"word alphabet size {w.alphabet.size} != breakpoint alphabet size {breakpoints.alphabet_size}"
            )
    if original_length < len(Shat):
        raise ValidationError("original length must be at least the word length")


def mindist(Shat: SymbolicSequence, Rhat: SymbolicSequence, original_length: int,
            breakpoints: Breakpoints) -> float:
    """Lower-bounding distance between two SAX words of equal length.

    ``sqrt(n / N) * sqrt(sum_i cell(s_i, r_i) ** 2)`` with ``n`` the length of
    the original series and ``N`` the word length.
    """
    _check_mindist(Shat, Rhat, original_length, breakpoints)
    cells = _cell_table(breakpoints)[Shat.array, Rhat.array]
    N = len(Shat)
    return float(math.sqrt(original_length / N) * math.sqrt(float(np.sum(cells * cells))))


def mindist_matrix(A, B, original_length: int, breakpoints: Breakpoints) -> np.ndarray:
    """Pairwise MINDIST between two batches of equal-length SAX words."""
    if len(A) == 0 or len(B) == 0:
        return np.zeros((len(A), len(B)))
    _check_mindist(A[0], B[0], original_length, breakpoints)
    WA = np.stack([s.array for s in A])
    WB = np.stack([s.array for s in B])
    if WA.shape[1] != WB.shape[1]:
        raise LengthMismatchError("all SAX words must have the same length")
    cells = _cell_table(breakpoints)[WA[:, None, :], WB[None, :, :]]
    N = WA.shape[1]
    return math.sqrt(original_length / N) * np.sqrt(np.sum(cells * cells, axis=2))
