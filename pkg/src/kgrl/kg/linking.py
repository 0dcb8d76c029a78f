"""Surface-form entity linking from token sequences to store/graph labels.

Matching is a greedy longest-match-first scan over token n-grams (n <= 3):
tokens are lowercased, "inside" is folded to "in", candidates are joined
with underscores, and trivial plurals ("s"/"es") are stripped as a fallback.
Mentions never overlap and the scan is deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

MAX_NGRAM = 3

_TOKEN_FOLD = {"inside": "in"}


@dataclass(frozen=True)
class EntityMention:
    label: str
    span: tuple[int, int]  # [start, end) token indices


def normalize_tokens(tokens: Sequence[str]) -> list[str]:
    return [_TOKEN_FOLD.get(t.lower(), t.lower()) for t in tokens]


def _candidates(tokens: list[str]) -> list[str]:
    """Label candidates for one n-gram, most-literal first."""
    joined = "_".join(tokens)
    cands = [joined]
    last = tokens[-1]
    if last.endswith("es"):
        cands.append("_".join(tokens[:-1] + [last[:-2]]))
    if last.endswith("s"):
        cands.append("_".join(tokens[:-1] + [last[:-1]]))
    return cands


def link_entities(tokens: Sequence[str], store) -> list[EntityMention]:
    """Link token n-grams to labels of ``store`` (anything supporting ``in``).

    Returns non-overlapping mentions, favoring longer n-grams, scanning left
    to right.  Unmatched stretches contribute nothing.
    """
    normed = normalize_tokens(tokens)
    mentions: list[EntityMention] = []
    i = 0
    n_tokens = len(normed)
    while i < n_tokens:
        matched = False
        for n in range(min(MAX_NGRAM, n_tokens - i), 0, -1):
            for cand in _candidates(normed[i:i + n]):
                if cand in store:
                    mentions.append(EntityMention(cand, (i, i + n)))
                    i += n
                    matched = True
                    break
            if matched:
                break
        if not matched:
            i += 1
    return mentions


def mentioned_labels(tokens: Sequence[str], store) -> list[str]:
    """Distinct linked labels in first-mention order."""
    seen: dict[str, None] = {}
    for m in link_entities(tokens, store):
        seen.setdefault(m.label, None)
    return list(seen)
