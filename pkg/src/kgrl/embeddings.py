"""Word and KG-node embedding tables with deterministic OOV fallbacks.

Accepts the GloVe text format (``token v1 ... vd`` per line) and the
Numberbatch text format (optional ``count dim`` header, ``/c/en/term``
keys).  Lookups are total: an out-of-vocabulary token maps to a
pseudo-random unit vector that depends only on (fallback_seed, token), so
it is stable across processes.
"""
from __future__ import annotations

import hashlib

import numpy as np


class EmbeddingFormatError(Exception):
    """Raised for unreadable files or inconsistent dimensions."""


class EmbeddingTable:
    def __init__(self, dim: int, vectors: dict[str, np.ndarray], fallback_seed: int = 0):
        self.dim = dim
        self.vectors = vectors
        self.fallback_seed = fallback_seed

    def __len__(self) -> int:
        return len(self.vectors)

    def __contains__(self, token: str) -> bool:
        return token in self.vectors


def _normalize_key(token: str) -> str:
    # Numberbatch keys look like /c/en/refrigerator or /c/en/trash_can/n
    if token.startswith("/c/"):
        parts = token.split("/")
        if len(parts) >= 4:
            return parts[3]
    return token


def load_embeddings(path, expected_dim: int | None = None, fallback_seed: int = 0) -> EmbeddingTable:
    """Parse a whitespace-separated embedding text file.

    A leading ``count dim`` header line is accepted and skipped.  Rows with
    inconsistent dimensions (or a mismatch against ``expected_dim``) raise
    EmbeddingFormatError naming the offending line.
    """
    vectors: dict[str, np.ndarray] = {}
    dim = expected_dim
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise EmbeddingFormatError(f"cannot read embeddings {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2:
                try:
                    count, header_dim = int(parts[0]), int(parts[1])
                except ValueError:
                    pass
                else:
                    if expected_dim is not None and header_dim != expected_dim:
                        raise EmbeddingFormatError(
                            f"{path}:1: header dim {header_dim} != expected {expected_dim}")
                    dim = header_dim
                    continue
            token = _normalize_key(parts[0])
            try:
                vec = np.array([float(v) for v in parts[1:]], dtype=np.float64)
            except ValueError as exc:
                raise EmbeddingFormatError(f"{path}:{lineno}: bad value ({exc})") from exc
            if dim is None:
                dim = vec.shape[0]
            if vec.shape[0] != dim:
                raise EmbeddingFormatError(
                    f"{path}:{lineno}: dimension {vec.shape[0]} != {dim}")
            vectors[token] = vec
    if dim is None or not vectors:
        raise EmbeddingFormatError(f"{path}: no embedding rows")
    return EmbeddingTable(dim, vectors, fallback_seed=fallback_seed)


def _fallback_vector(seed: int, token: str, dim: int) -> np.ndarray:
    """Unit-norm pseudo-random vector, a pure function of (seed, token, dim)."""
    digest = hashlib.blake2b(f"{seed}\x00{token}".encode("utf-8"), digest_size=8).digest()
    rng = np.random.default_rng(int.from_bytes(digest, "little"))
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def embed_token(table: EmbeddingTable, token: str) -> np.ndarray:
    """Stored vector if present, else the deterministic OOV fallback."""
    vec = table.vectors.get(token)
    if vec is not None:
        return vec
    return _fallback_vector(table.fallback_seed, token, table.dim)


def embed_node(word_table: EmbeddingTable, node_table: EmbeddingTable, label: str) -> np.ndarray:
    """Node vector with two fallback tiers.

    Missing node-table labels fall back to the mean of word embeddings of
    the underscore-split parts (only when the dims agree and at least one
    part is in the word table); otherwise to the OOV fallback on the whole
    label at node dimension.
    """
    vec = node_table.vectors.get(label)
    if vec is not None:
        return vec
    parts = label.split("_")
    if word_table.dim == node_table.dim and any(p in word_table.vectors for p in parts):
        return np.mean([embed_token(word_table, p) for p in parts], axis=0)
    return _fallback_vector(node_table.fallback_seed, label, node_table.dim)
