"""Edit distance and ranked search suggestions.

The matcher tolerates typos by scoring corpus entries with Levenshtein
distance, both against the whole normalized text and against its
individual words, so a one-word query still matches long FAQ questions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union


class FuzzyError(Exception):
    pass


class EmptyQuery(FuzzyError):
    """Query is empty after normalization."""


class _BeyondBound:
    """Sentinel: the distance exceeds the requested bound.

    A value, not an error; compares equal only to itself.
    """

    _instance: Optional["_BeyondBound"] = None

    def __new__(cls) -> "_BeyondBound":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BEYOND_BOUND"


BEYOND_BOUND = _BeyondBound()

BoundedDistance = Union[int, _BeyondBound]


def normalize(text: str) -> str:
    """Case-fold, trim, and collapse internal whitespace runs to one space."""
    return " ".join(text.casefold().split())


def levenshtein(s: str, t: str) -> int:
    """Minimum number of single-character edits converting ``s`` into ``t``.

    Standard dynamic program over the (len(s)+1) x (len(t)+1) cost grid with
    unit insert/delete/substitute costs, on Unicode code points.
    """
    if s == t:
        return 0
    # Keep the inner row short.
    if len(t) < len(s):
        s, t = t, s
    prev = list(range(len(t) + 1))
    for i, cs in enumerate(s, start=1):
        cur = [i] + [0] * len(t)
        for j, ct in enumerate(t, start=1):
            cost = 0 if cs == ct else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        prev = cur
    return prev[-1]


def levenshtein_bounded(s: str, t: str, k: int) -> BoundedDistance:
    """Levenshtein distance if it is <= k, else BEYOND_BOUND.

    Computes only the diagonal band of width 2k+1; any edit path of cost
    <= k stays within that band, so a finite result is always exact.
    """
    if k < 0:
        raise ValueError(f"bound must be >= 0, got {k}")
    if abs(len(s) - len(t)) > k:
        return BEYOND_BOUND
    if s == t:
        return 0
    if len(t) < len(s):
        s, t = t, s
    m, n = len(s), len(t)
    inf = k + 1
    prev = [j if j <= k else inf for j in range(n + 1)]
    for i, cs in enumerate(s, start=1):
        lo = max(1, i - k)
        hi = min(n, i + k)
        cur = [inf] * (n + 1)
        if lo == 1:
            cur[0] = i if i <= k else inf
        row_min = cur[0]
        for j in range(lo, hi + 1):
            cost = 0 if cs == t[j - 1] else 1
            best = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
            cur[j] = best if best <= k else inf
            if cur[j] < row_min:
                row_min = cur[j]
        if row_min >= inf:
            return BEYOND_BOUND
        prev = cur
    return prev[n] if prev[n] <= k else BEYOND_BOUND


@dataclass(frozen=True)
class CorpusEntry:
    """One searchable record: normalized text plus its words."""

    entry_id: str
    primary_text: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class SearchCorpus:
    entries: tuple[CorpusEntry, ...]

    @classmethod
    def build(cls, pairs: Iterable[tuple[str, str]]) -> "SearchCorpus":
        """Build a corpus from ``(entry_id, text)`` pairs, normalizing the text."""
        entries = []
        for entry_id, text in pairs:
            normalized = normalize(text)
            entries.append(
                CorpusEntry(
                    entry_id=entry_id,
                    primary_text=normalized,
                    tokens=tuple(normalized.split(" ")) if normalized else (),
                )
            )
        return cls(entries=tuple(entries))


@dataclass(frozen=True)
class Suggestion:
    entry_id: str
    matched_text: str
    score: int


def default_max_distance(query: str) -> int:
    """Adaptive typo budget: about one edit per four query characters, floor 1."""
    return max(1, math.ceil(len(query) / 4))


def suggest(
    query: str,
    corpus: SearchCorpus,
    limit: int,
    max_distance: int | None = None,
) -> list[Suggestion]:
    """Rank corpus entries by edit distance to the query.

    Each entry is scored by the best of: distance to its whole normalized
    text, and distance to any single token.  Entries beyond the threshold
    everywhere are dropped.  Results are ordered by (score, entry_id) and
    truncated to ``limit``.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    q = normalize(query)
    if not q:
        raise EmptyQuery("query is empty after normalization")
    threshold = max_distance if max_distance is not None else default_max_distance(q)
    results: list[Suggestion] = []
    for entry in corpus.entries:
        best_score: int | None = None
        best_text = ""
        for candidate in (entry.primary_text, *entry.tokens):
            d = levenshtein_bounded(q, candidate, threshold)
            if d is BEYOND_BOUND:
                continue
            assert isinstance(d, int)
            if best_score is None or d < best_score:
                best_score = d
                best_text = candidate
        if best_score is not None:
            results.append(
                Suggestion(entry_id=entry.entry_id, matched_text=best_text, score=best_score)
            )
    results.sort(key=lambda s: (s.score, s.entry_id))
    return results[:limit]
