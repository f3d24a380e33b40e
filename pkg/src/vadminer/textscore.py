"""Tokenization and baseline-folded range scoring of free text.

A text's score per dimension is the spread between its extreme word scores,
folded at the lexicon-wide mean when all matched words sit on one side of it:

* every word above the baseline  -> ``max - baseline``
* every word below the baseline  -> ``baseline - min``
* words straddle the baseline    -> ``max - min`` (ties fall here)

Words absent from the lexicon contribute nothing, which also filters out
code fragments, identifiers and stack traces.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .lexicon import DIMENSIONS, Lexicon, canonical_dimension

# Maximal runs of letters; digits, underscores and punctuation all split.
_WORD_RE = re.compile(r"[^\W\d_]+", re.UNICODE)


@dataclass(frozen=True)
class TokenizedText:
    tokens: tuple[str, ...]
    matched: tuple[str, ...]


@dataclass(frozen=True)
class VadScore:
    """Per-dimension range scores; dimensions are None when nothing matched."""

    valence: float | None
    arousal: float | None
    dominance: float | None
    matched_count: int

    def get(self, dimension: str) -> float | None:
        return getattr(self, canonical_dimension(dimension))

    @property
    def has_scores(self) -> bool:
        return self.matched_count > 0


def tokenize(text: str, lexicon: Lexicon) -> TokenizedText:
    """Split on every non-letter character, lowercase, and mark lexicon hits."""
    tokens = tuple(run.lower() for run in _WORD_RE.findall(text))
    matched = tuple(tok for tok in tokens if tok in lexicon)
    return TokenizedText(tokens=tokens, matched=matched)


def range_score(matched_words: list[str] | tuple[str, ...], lexicon: Lexicon, dimension: str) -> float | None:
    """Range score of already-matched words for one dimension.

    Every word must exist in the lexicon; returns None for an empty list.
    """
    if not matched_words:
        return None
    dim = canonical_dimension(dimension)
    baseline = lexicon.baseline(dim)
    mn = mx = None
    for word in matched_words:
        entry = lexicon.lookup(word)
        if entry is None:
            raise LookupError(f"word {word!r} not in lexicon; range_score requires matched words")
        value = getattr(entry, dim)
        if mn is None or value < mn:
            mn = value
        if mx is None or value > mx:
            mx = value
    if mn > baseline:
        return mx - baseline
    if mx < baseline:
        return baseline - mn
    return mx - mn


def score_text(text: str, lexicon: Lexicon) -> VadScore:
    """Tokenize and score a text on all three dimensions in one pass."""
    lo = {dim: None for dim in DIMENSIONS}
    hi = {dim: None for dim in DIMENSIONS}
    matched_count = 0
    for run in _WORD_RE.findall(text):
        entry = lexicon.lookup(run)
        if entry is None:
            continue
        matched_count += 1
        for dim in DIMENSIONS:
            value = getattr(entry, dim)
            if lo[dim] is None or value < lo[dim]:
                lo[dim] = value
            if hi[dim] is None or value > hi[dim]:
                hi[dim] = value

    if matched_count == 0:
        return VadScore(valence=None, arousal=None, dominance=None, matched_count=0)

    scores = {}
    for dim in DIMENSIONS:
        baseline = lexicon.baseline(dim)
        if lo[dim] > baseline:
            scores[dim] = hi[dim] - baseline
        elif hi[dim] < baseline:
            scores[dim] = baseline - lo[dim]
        else:
            scores[dim] = hi[dim] - lo[dim]
    return VadScore(matched_count=matched_count, **scores)
