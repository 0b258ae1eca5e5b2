"""Writer for the embedding-bundle directory format.

The format is the interchange contract with the analysis package:
meta.json plus headerless little-endian float32 layer files, written
to a temp directory and renamed into place. This module depends only
on the documented layout, not on the analysis code.
"""

from __future__ import annotations

import json
import os
import shutil
import tempfile
from pathlib import Path

import numpy as np

FORMAT_VERSION = 1


def write_bundle_dir(
    path: str | Path,
    model_id: str,
    hidden_dim: int,
    includes_embedding_layer: bool,
    samples: list[dict],
    layers: list[np.ndarray],
) -> None:
    """Write meta.json + layers/layer_NN.f32 atomically.

    ``samples`` records need keys id, clean_text, construction,
    verb_category, subword_span. Layer matrices are written in file
    order, numbered from 00 when the embedding layer is included and
    from 01 otherwise.
    """
    target = Path(path)
    if target.exists():
        raise FileExistsError(f"bundle path already exists: {target}")
    n = len(samples)
    for matrix in layers:
        if matrix.shape != (n, hidden_dim):
            raise ValueError(f"layer shape {matrix.shape} != ({n}, {hidden_dim})")
        if not np.isfinite(matrix).all():
            raise ValueError("layer contains NaN or Inf")

    meta = {
        "format_version": FORMAT_VERSION,
        "model_id": model_id,
        "num_layers": len(layers),
        "hidden_dim": hidden_dim,
        "includes_embedding_layer": includes_embedding_layer,
        "samples": samples,
    }
    target.parent.mkdir(parents=True, exist_ok=True)
    tmp = Path(tempfile.mkdtemp(prefix=".extract-", dir=target.parent))
    try:
        (tmp / "meta.json").write_text(
            json.dumps(meta, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
        )
        layers_dir = tmp / "layers"
        layers_dir.mkdir()
        start = 0 if includes_embedding_layer else 1
        for pos, matrix in enumerate(layers):
            payload = np.ascontiguousarray(matrix, dtype="<f4").tobytes()
            (layers_dir / f"layer_{start + pos:02d}.f32").write_bytes(payload)
        os.replace(tmp, target)
    finally:
        if tmp.exists():
            shutil.rmtree(tmp, ignore_errors=True)
