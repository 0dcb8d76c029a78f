"""Bundled data files: kitchen commonsense triples and small embedding tables.

KGRL_DATA_DIR overrides the bundled directory (e.g. to point at full GloVe /
Numberbatch downloads or a bigger triple file).
"""
from __future__ import annotations

import os
from pathlib import Path

KITCHEN_TRIPLES = "kitchen_triples.tsv"
WORD_VECTORS = "glove_50d.txt"
NODE_VECTORS = "numberbatch_50d.txt"


def data_dir() -> Path:
    override = os.environ.get("KGRL_DATA_DIR")
    if override:
        return Path(override)
    return Path(__file__).parent


def data_path(name: str) -> Path:
    p = data_dir() / name
    if not p.exists():
        raise FileNotFoundError(f"data file {name!r} not found in {data_dir()}")
    return p
