"""Parameter checkpoints: versioned text format with exact fp64 round-trip.

Layout: a header line, a JSON metadata line, then one line per tensor of
``name<TAB>shape-csv<TAB>hex`` where hex is the little-endian fp64 buffer.
save -> load -> save is byte-identical.
"""
from __future__ import annotations

import json

import numpy as np

from .tensor import DTYPE, Tensor

HEADER = "kgrl-checkpoint 1"


class CheckpointError(Exception):
    pass


def save_checkpoint(path, params: dict[str, Tensor], meta: dict | None = None) -> None:
    lines = [HEADER, json.dumps(meta or {}, sort_keys=True)]
    for name in sorted(params):
        data = np.ascontiguousarray(params[name].data, dtype=DTYPE)
        shape = ",".join(str(n) for n in data.shape)
        lines.append(f"{name}\t{shape}\t{data.tobytes().hex()}")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_checkpoint(path) -> tuple[dict[str, np.ndarray], dict]:
    with open(path, encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != HEADER:
        raise CheckpointError(f"{path}: not a kgrl checkpoint (bad header)")
    meta = json.loads(lines[1])
    params: dict[str, np.ndarray] = {}
    for line in lines[2:]:
        if not line:
            continue
        name, shape_csv, hexdata = line.split("\t")
        shape = tuple(int(n) for n in shape_csv.split(",")) if shape_csv else ()
        arr = np.frombuffer(bytes.fromhex(hexdata), dtype=DTYPE).reshape(shape)
        params[name] = arr.copy()
    return params, meta
