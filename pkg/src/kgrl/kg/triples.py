"""Triple store for ConceptNet-style commonsense knowledge.

Triples are (head, relation, tail, weight) with lowercase snake_case labels.
The native on-disk format is a TSV with one triple per line; the public
ConceptNet CSV dump can be converted with :func:`ingest_conceptnet_dump`.
"""
from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from typing import Iterable

log = logging.getLogger(__name__)

LABEL_RE = re.compile(r"[a-z][a-z0-9_]*\Z")

DEFAULT_RELATION_WHITELIST = frozenset({"at_location", "used_for", "related_to", "is_a"})


class TripleLoadError(Exception):
    """Raised when a triple file is unreadable or contains no valid rows."""


@dataclass(frozen=True)
class Triple:
    head: str
    relation: str
    tail: str
    weight: float = 1.0

    def __post_init__(self):
        for label in (self.head, self.relation, self.tail):
            if not LABEL_RE.match(label):
                raise ValueError(f"invalid label {label!r}")
        if not self.weight > 0:
            raise ValueError(f"weight must be > 0, got {self.weight}")


class TripleStore:
    """Immutable-after-load collection of triples with exact-match label index."""

    def __init__(self, triples: Iterable[Triple] = ()):
        self.triples: list[Triple] = list(triples)
        self._by_head: dict[str, list[Triple]] = {}
        self._labels: set[str] = set()
        for t in self.triples:
            self._by_head.setdefault(t.head, []).append(t)
            self._labels.add(t.head)
            self._labels.add(t.tail)

    def __len__(self) -> int:
        return len(self.triples)

    def __contains__(self, label: str) -> bool:
        return label in self._labels

    @property
    def labels(self) -> set[str]:
        return self._labels

    def outgoing(self, head: str) -> list[Triple]:
        """Triples whose head is the given label (empty list if none)."""
        return self._by_head.get(head, [])

    def incident(self, label: str) -> list[Triple]:
        return [t for t in self.triples if t.head == label or t.tail == label]


def _parse_row(parts: list[str]) -> Triple:
    head, relation, tail, weight = parts
    return Triple(head, relation, tail, float(weight))


def load_triples(path) -> TripleStore:
    """Load a TSV triple file: ``head<TAB>relation<TAB>tail<TAB>weight``.

    ``#``-prefixed lines and blank lines are skipped.  Malformed rows are
    skipped with a logged warning naming the line number; a file with zero
    valid rows is an error.
    """
    triples = []
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line.strip() or line.lstrip().startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 4:
                    log.warning("%s:%d: expected 4 tab-separated fields, got %d", path, lineno, len(parts))
                    continue
                try:
                    triples.append(_parse_row(parts))
                except ValueError as exc:
                    log.warning("%s:%d: skipping malformed row (%s)", path, lineno, exc)
    except OSError as exc:
        raise TripleLoadError(f"cannot read triple file {path}: {exc}") from exc
    if not triples:
        raise TripleLoadError(f"{path}: zero valid rows")
    return TripleStore(triples)


def save_triples(store: TripleStore, path) -> None:
    """Write a store back out in the TSV format accepted by load_triples."""
    with open(path, "w", encoding="utf-8") as fh:
        for t in store.triples:
            fh.write(f"{t.head}\t{t.relation}\t{t.tail}\t{t.weight:g}\n")


_CAMEL_RE = re.compile(r"(?<!^)(?=[A-Z])")


def _relation_from_uri(uri: str) -> str:
    # /r/AtLocation -> at_location
    name = uri.rsplit("/", 1)[-1]
    return _CAMEL_RE.sub("_", name).lower()


def _concept_from_uri(uri: str) -> tuple[str, str]:
    """Split ``/c/en/apple/n/...`` into (language, normalized term)."""
    parts = uri.split("/")
    if len(parts) < 4 or parts[1] != "c":
        raise ValueError(f"not a concept URI: {uri!r}")
    lang, term = parts[2], parts[3]
    term = re.sub(r"[^a-z0-9_]", "_", term.lower()).strip("_")
    term = re.sub(r"_+", "_", term)
    return lang, term


def ingest_conceptnet_dump(path, language_filter: str = "en",
                           relation_whitelist: frozenset[str] | set[str] = DEFAULT_RELATION_WHITELIST,
                           ) -> TripleStore:
    """Convert rows of the public ConceptNet 5-column CSV dump to a TripleStore.

    Keeps rows whose relation (snake_cased) is whitelisted and whose start and
    end concepts are both in ``language_filter``.  Edge weight is taken from
    the JSON metadata column (default 1.0).  Returns a store that can be
    re-emitted with :func:`save_triples`.
    """
    triples = []
    kept = dropped = 0
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                cols = line.rstrip("\n").split("\t")
                if len(cols) < 5:
                    log.warning("%s:%d: expected 5 columns, got %d", path, lineno, len(cols))
                    dropped += 1
                    continue
                _, rel_uri, start_uri, end_uri, meta = cols[:5]
                try:
                    relation = _relation_from_uri(rel_uri)
                    lang_h, head = _concept_from_uri(start_uri)
                    lang_t, tail = _concept_from_uri(end_uri)
                except ValueError as exc:
                    log.warning("%s:%d: %s", path, lineno, exc)
                    dropped += 1
                    continue
                if relation not in relation_whitelist or lang_h != language_filter or lang_t != language_filter:
                    dropped += 1
                    continue
                try:
                    weight = float(json.loads(meta).get("weight", 1.0))
                    triples.append(Triple(head, relation, tail, weight))
                    kept += 1
                except (ValueError, json.JSONDecodeError) as exc:
                    log.warning("%s:%d: skipping row (%s)", path, lineno, exc)
                    dropped += 1
    except OSError as exc:
        raise TripleLoadError(f"cannot read dump {path}: {exc}") from exc
    if not triples:
        raise TripleLoadError(f"{path}: zero valid rows after filtering")
    log.info("ingested %s: kept %d, dropped %d", path, kept, dropped)
    return TripleStore(triples)
