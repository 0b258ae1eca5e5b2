"""Portable per-layer embedding container.

A bundle is a directory holding meta.json plus one raw float32 matrix
per layer, and is the only interface between embedding extraction and
analysis. Layer files are headerless little-endian row-major
[num_samples x hidden_dim] payloads, so any language can produce or
consume them; all structure lives in meta.json. Layer index 1 is the
output of the first transformer block; index 0, when present, is the
pre-block token embedding and is counted by num_layers.
"""

from __future__ import annotations

import hashlib
import json
import os
import shutil
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import ConstructionLabel
from .errors import (
    BundleMetadataError,
    BundleValidationError,
    LayerShapeError,
    MissingLayerError,
)

FORMAT_VERSION = 1


@dataclass(frozen=True)
class BundleSample:
    """Metadata for one row of every layer matrix."""

    id: str
    clean_text: str
    construction: str
    verb_category: str
    subword_span: tuple[int, int]


@dataclass(frozen=True)
class Violation:
    """One violated invariant, with coordinates where applicable."""

    code: str
    message: str
    layer: int | None = None
    row: int | None = None
    col: int | None = None
    sample_id: str | None = None

    def __str__(self) -> str:
        return self.message


@dataclass
class EmbeddingBundle:
    """In-memory bundle: sample metadata plus one matrix per layer.

    ``layers`` is kept in file order; :meth:`layer` maps a logical
    layer index (0-based only when the embedding layer is included)
    to its matrix.
    """

    model_id: str
    hidden_dim: int
    includes_embedding_layer: bool
    samples: list[BundleSample]
    layers: list[np.ndarray]

    @property
    def num_layers(self) -> int:
        return len(self.layers)

    @property
    def num_samples(self) -> int:
        return len(self.samples)

    @property
    def layer_indices(self) -> list[int]:
        start = 0 if self.includes_embedding_layer else 1
        return list(range(start, start + self.num_layers))

    def layer(self, index: int) -> np.ndarray:
        start = 0 if self.includes_embedding_layer else 1
        pos = index - start
        if pos < 0 or pos >= self.num_layers:
            raise KeyError(f"no layer {index} in bundle (have {self.layer_indices})")
        return self.layers[pos]


def validate_bundle(bundle: EmbeddingBundle) -> list[Violation]:
    """Every violated invariant, with coordinates; empty iff valid."""
    violations = []
    if bundle.num_layers < 1:
        violations.append(Violation("layers", "bundle has no layers"))
    if bundle.hidden_dim < 1:
        violations.append(Violation("shape", f"hidden_dim must be >= 1, got {bundle.hidden_dim}"))

    n, d = bundle.num_samples, bundle.hidden_dim
    for pos, matrix in enumerate(bundle.layers):
        index = bundle.layer_indices[pos]
        if matrix.dtype != np.float32:
            violations.append(
                Violation("dtype", f"layer {index}: dtype {matrix.dtype}, expected float32", layer=index)
            )
        if matrix.shape != (n, d):
            violations.append(
                Violation(
                    "shape",
                    f"layer {index}: shape {matrix.shape}, expected ({n}, {d})",
                    layer=index,
                )
            )
            continue
        finite = np.isfinite(matrix)
        if not finite.all():
            bad = np.argwhere(~finite)
            row, col = int(bad[0][0]), int(bad[0][1])
            violations.append(
                Violation(
                    "nonfinite",
                    f"layer {index}: {len(bad)} non-finite value(s), first at row {row}, col {col}",
                    layer=index,
                    row=row,
                    col=col,
                )
            )

    seen = set()
    for sample in bundle.samples:
        if sample.id in seen:
            violations.append(
                Violation("duplicate_id", f"duplicate sample id {sample.id!r}", sample_id=sample.id)
            )
        seen.add(sample.id)
        try:
            label = ConstructionLabel.parse(sample.construction)
        except ValueError:
            violations.append(
                Violation(
                    "construction",
                    f"sample {sample.id!r}: unknown construction {sample.construction!r}",
                    sample_id=sample.id,
                )
            )
            continue
        if label.verb_category != sample.verb_category:
            violations.append(
                Violation(
                    "category",
                    f"sample {sample.id!r}: verb_category {sample.verb_category!r} does not "
                    f"match construction {sample.construction!r}",
                    sample_id=sample.id,
                )
            )
        start, end = sample.subword_span
        if not (0 <= start < end):
            violations.append(
                Violation(
                    "span",
                    f"sample {sample.id!r}: invalid subword span [{start}, {end})",
                    sample_id=sample.id,
                )
            )
    return violations


def _layer_filename(file_index: int) -> str:
    return f"layer_{file_index:02d}.f32"


def write_bundle(bundle: EmbeddingBundle, path: str | Path) -> None:
    """Write the on-disk layout atomically: temp directory, then rename.

    The bundle is validated first; nothing is written for an invalid
    one. Refuses to overwrite an existing path.
    """
    violations = validate_bundle(bundle)
    if violations:
        raise BundleValidationError(violations)

    target = Path(path)
    if target.exists():
        raise FileExistsError(f"bundle path already exists: {target}")
    target.parent.mkdir(parents=True, exist_ok=True)

    meta = {
        "format_version": FORMAT_VERSION,
        "model_id": bundle.model_id,
        "num_layers": bundle.num_layers,
        "hidden_dim": bundle.hidden_dim,
        "includes_embedding_layer": bundle.includes_embedding_layer,
        "samples": [
            {
                "id": s.id,
                "clean_text": s.clean_text,
                "construction": s.construction,
                "verb_category": s.verb_category,
                "subword_span": list(s.subword_span),
            }
            for s in bundle.samples
        ],
    }

    tmp = Path(tempfile.mkdtemp(prefix=".bundle-", dir=target.parent))
    try:
        (tmp / "meta.json").write_text(
            json.dumps(meta, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
        )
        layers_dir = tmp / "layers"
        layers_dir.mkdir()
        start = 0 if bundle.includes_embedding_layer else 1
        for pos, matrix in enumerate(bundle.layers):
            payload = np.ascontiguousarray(matrix, dtype="<f4").tobytes()
            (layers_dir / _layer_filename(start + pos)).write_bytes(payload)
        os.replace(tmp, target)
    finally:
        if tmp.exists():
            shutil.rmtree(tmp, ignore_errors=True)


def read_bundle(path: str | Path) -> EmbeddingBundle:
    """Read and validate a bundle directory.

    Raises :class:`BundleMetadataError` for missing/bad meta.json,
    :class:`MissingLayerError` / :class:`LayerShapeError` for layer
    files that are absent or have the wrong byte length, and
    :class:`BundleValidationError` when the loaded bundle violates its
    invariants (NaN/Inf, duplicate ids, bad labels).
    """
    root = Path(path)
    meta_path = root / "meta.json"
    if not meta_path.is_file():
        raise BundleMetadataError(f"missing meta.json in {root}")
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise BundleMetadataError(f"{meta_path}: {exc}") from exc

    required = {
        "format_version",
        "model_id",
        "num_layers",
        "hidden_dim",
        "includes_embedding_layer",
        "samples",
    }
    missing = required - meta.keys()
    if missing:
        raise BundleMetadataError(f"{meta_path}: missing keys {sorted(missing)}")
    if meta["format_version"] != FORMAT_VERSION:
        raise BundleMetadataError(
            f"{meta_path}: unsupported format_version {meta['format_version']!r}"
        )

    try:
        samples = [
            BundleSample(
                id=s["id"],
                clean_text=s["clean_text"],
                construction=s["construction"],
                verb_category=s["verb_category"],
                subword_span=(int(s["subword_span"][0]), int(s["subword_span"][1])),
            )
            for s in meta["samples"]
        ]
    except (KeyError, TypeError, IndexError) as exc:
        raise BundleMetadataError(f"{meta_path}: malformed sample record ({exc})") from exc

    num_layers = int(meta["num_layers"])
    hidden_dim = int(meta["hidden_dim"])
    includes_embedding = bool(meta["includes_embedding_layer"])
    if num_layers < 1:
        raise BundleMetadataError(f"{meta_path}: num_layers must be >= 1")

    n = len(samples)
    expected_bytes = n * hidden_dim * 4
    start = 0 if includes_embedding else 1
    layers = []
    for file_index in range(start, start + num_layers):
        layer_path = root / "layers" / _layer_filename(file_index)
        if not layer_path.is_file():
            raise MissingLayerError(f"missing layer file {layer_path.name} in {root}")
        payload = layer_path.read_bytes()
        if len(payload) != expected_bytes:
            raise LayerShapeError(
                f"{layer_path.name}: {len(payload)} bytes, expected {expected_bytes} "
                f"({n} samples x {hidden_dim} dims x 4)"
            )
        layers.append(np.frombuffer(payload, dtype="<f4").reshape(n, hidden_dim).copy())

    bundle = EmbeddingBundle(
        model_id=meta["model_id"],
        hidden_dim=hidden_dim,
        includes_embedding_layer=includes_embedding,
        samples=samples,
        layers=layers,
    )
    violations = validate_bundle(bundle)
    if violations:
        raise BundleValidationError(violations)
    return bundle


def bundle_checksum(path: str | Path) -> str:
    """SHA-256 over meta.json and every layer file, in layout order."""
    root = Path(path)
    digest = hashlib.sha256()
    digest.update((root / "meta.json").read_bytes())
    for layer_path in sorted((root / "layers").glob("layer_*.f32")):
        digest.update(layer_path.name.encode())
        digest.update(layer_path.read_bytes())
    return digest.hexdigest()


def make_bundle(
    model_id: str,
    samples: Sequence[BundleSample],
    layers: Sequence[np.ndarray],
    includes_embedding_layer: bool = False,
) -> EmbeddingBundle:
    """Convenience constructor that coerces layer matrices to float32."""
    coerced = [np.ascontiguousarray(m, dtype=np.float32) for m in layers]
    hidden_dim = coerced[0].shape[1] if coerced else 0
    return EmbeddingBundle(
        model_id=model_id,
        hidden_dim=hidden_dim,
        includes_embedding_layer=includes_embedding_layer,
        samples=list(samples),
        layers=coerced,
    )
