"""Alphabets, symbolic sequences and n-gram frequency profiles.

Symbols are stored as integer indices into an :class:`Alphabet`; glyphs only
matter for text input and output. Every distance in :mod:`ganed.distances`
operates on :class:`SymbolicSequence` objects.
"""

from __future__ import annotations

import string
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Optional

import numpy as np

from .exceptions import UnknownGlyphError, ValidationError

# 64 glyphs, enough for the largest supported SAX alphabet.
SAX_GLYPHS = string.ascii_lowercase + string.ascii_uppercase + string.digits + "+/"


@dataclass(frozen=True)
class Alphabet:
    """A finite alphabet of ``size`` symbols, optionally with one glyph per symbol."""

    size: int
    glyphs: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if int(self.size) != self.size or self.size < 2:
            raise ValidationError(f"alphabet size must be an integer >= 2, got {self.size!r}")
        if self.glyphs is not None:
            glyphs = tuple(self.glyphs)
            object.__setattr__(self, "glyphs", glyphs)
            if len(glyphs) != self.size:
                raise ValidationError(
                    f"glyph table has {len(glyphs)} entries for an alphabet of size {self.size}"
                )
            if len(set(glyphs)) != len(glyphs):
                raise ValidationError("glyph table contains duplicates")
            if any(not isinstance(g, str) or len(g) != 1 for g in glyphs):
                raise ValidationError("glyphs must be single characters")

    @classmethod
    def from_glyphs(cls, glyphs: Iterable[str]) -> "Alphabet":
        glyphs = tuple(glyphs)
        return cls(len(glyphs), glyphs)

    @classmethod
    def sax(cls, size: int) -> "Alphabet":
        """Alphabet for SAX words: ``a, b, c, ...`` in breakpoint order."""
        if not 2 <= size <= len(SAX_GLYPHS):
            raise ValidationError(f"SAX alphabet size must lie in [2, {len(SAX_GLYPHS)}]")
        return cls(size, tuple(SAX_GLYPHS[:size]))

    @cached_property
    def _lookup(self) -> dict[str, int]:
        return {g: i for i, g in enumerate(self.glyphs or ())}

    def index(self, glyph: str) -> int:
        return self._lookup[glyph]


@dataclass(frozen=True)
class SymbolicSequence:
    """An immutable string over ``alphabet``, held as symbol indices."""

    symbols: tuple[int, ...]
    alphabet: Alphabet

    def __post_init__(self):
        symbols = tuple(int(s) for s in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        size = self.alphabet.size
        for pos, s in enumerate(symbols):
            if not 0 <= s < size:
                raise ValidationError(
                    f"symbol {s} at position {pos} outside alphabet of size {size}"
                )

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, item):
        return self.symbols[item]

    @cached_property
    def array(self) -> np.ndarray:
        """Read-only int64 view used by the compiled kernels."""
        arr = np.asarray(self.symbols, dtype=np.int64)
        arr.flags.writeable = False
        return arr

    def to_text(self) -> str:
        if self.alphabet.glyphs is None:
            raise ValidationError("alphabet has no glyph table")
        return "".join(self.alphabet.glyphs[s] for s in self.symbols)

    def __str__(self):
        if self.alphabet.glyphs is None:
            return " ".join(map(str, self.symbols))
        return self.to_text()


def make_sequence(glyphs: str, alphabet: Alphabet) -> SymbolicSequence:
    """Map a glyph string onto ``alphabet``.

    Raises :class:`UnknownGlyphError` naming the first glyph absent from the
    alphabet's glyph table, together with its position.
    """
    if alphabet.glyphs is None:
        raise ValidationError("alphabet has no glyph table")
    symbols = []
    for pos, g in enumerate(glyphs):
        try:
            symbols.append(alphabet.index(g))
        except KeyError:
            raise UnknownGlyphError(g, pos) from None
    return SymbolicSequence(tuple(symbols), alphabet)


def sequences_from_text(*texts: str) -> list[SymbolicSequence]:
    """Build sequences over one alphabet made of every glyph seen, in sorted order.

    A single-glyph (or empty) corpus is padded so the alphabet has two symbols.
    """
    glyphs = sorted(set("".join(texts)))
    for filler in SAX_GLYPHS:
        if len(glyphs) >= 2:
            break
        if filler not in glyphs:
            glyphs.append(filler)
    alphabet = Alphabet.from_glyphs(glyphs)
    return [make_sequence(t, alphabet) for t in texts]


@dataclass(frozen=True)
class NGramProfile:
    """Sparse counts of the contiguous length-``n`` windows of a sequence."""

    n: int
    counts: Mapping[tuple[int, ...], int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, gram) -> int:
        return self.counts.get(tuple(gram), 0)

    def __len__(self):
        return len(self.counts)


@lru_cache(maxsize=65536)
def _profile(symbols: tuple[int, ...], n: int) -> NGramProfile:
    counts = Counter(symbols[i : i + n] for i in range(len(symbols) - n + 1))
    return NGramProfile(n, dict(counts))


def ngram_profile(seq: SymbolicSequence, n: int) -> NGramProfile:
    """Frequency profile of the length-``n`` grams of ``seq``.

    Profiles are memoised by sequence content, so repeated queries from a
    nearest-neighbour loop cost one dictionary lookup.
    """
    if int(n) != n or n < 1:
        raise ValidationError(f"gram length must be an integer >= 1, got {n!r}")
    return _profile(seq.symbols, int(n))


def overlap(p: NGramProfile, q: NGramProfile) -> int:
    """Sum over all grams of ``min(count in p, count in q)``."""
    if p.n != q.n:
        raise ValidationError(f"cannot overlap profiles of gram length {p.n} and {q.n}")
    small, large = (p.counts, q.counts) if len(p.counts) <= len(q.counts) else (q.counts, p.counts)
    return sum(min(c, large.get(g, 0)) for g, c in small.items())
