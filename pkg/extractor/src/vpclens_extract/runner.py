"""Batch hidden-state extraction over labeled samples.

Loads a pretrained encoder, locates each sample's target-verb subword
span, pools the span's hidden state at every layer, and assembles the
per-layer matrices for the bundle writer. Inference runs in eval mode
under no_grad with a fixed batch composition, so repeated runs on the
same host and checkpoint are bit-identical.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import torch

from .align import AlignmentError, SubwordSpan, locate_target, pool_subwords, tokenize_words


class ExtractionError(RuntimeError):
    """Extraction failed for the whole run (for example, every sample)."""


@dataclass(frozen=True)
class SampleRecord:
    """The slice of a corpus sample record the extractor needs."""

    id: str
    clean_text: str
    construction: str
    verb_category: str
    target_token_index: int


@dataclass(frozen=True)
class ExtractConfig:
    pool: str = "mean"
    batch_size: int = 16
    max_seq_len: int = 128
    include_embedding_layer: bool = False


@dataclass
class ExtractResult:
    model_id: str
    hidden_dim: int
    includes_embedding_layer: bool
    samples: list[dict]
    layers: list[np.ndarray]
    skipped: list[tuple[str, str]] = field(default_factory=list)


def load_samples(path: str | Path) -> list[SampleRecord]:
    """Read the corpus module's samples JSON."""
    records = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(records, list):
        raise ValueError(f"{path}: expected a JSON array of samples")
    samples = []
    for position, r in enumerate(records):
        try:
            samples.append(
                SampleRecord(
                    id=r["id"],
                    clean_text=r["clean_text"],
                    construction=r["label"]["name"],
                    verb_category=r["label"]["verb_category"],
                    target_token_index=int(r["target_token_index"]),
                )
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"{path}: malformed sample record #{position} ({exc})") from exc
    return samples


def _load_model(model_id: str):
    from transformers import AutoModel, AutoTokenizer

    tokenizer = AutoTokenizer.from_pretrained(model_id)
    model = AutoModel.from_pretrained(model_id)
    model.eval()
    return tokenizer, model


@dataclass
class _Prepared:
    record: SampleRecord
    input_ids: list[int]
    span: SubwordSpan  # sentence-relative


def _prepare(tokenizer, record: SampleRecord, max_seq_len: int) -> _Prepared:
    words = record.clean_text.split()
    pieces_per_word = tokenize_words(tokenizer, words)
    span = locate_target(pieces_per_word, record.target_token_index)
    flat = [piece for pieces in pieces_per_word for piece in pieces]

    budget = max_seq_len - 2  # room for [CLS] and [SEP]
    if len(flat) > budget:
        print(
            f"warning: sample {record.id}: {len(flat)} subwords, truncating to {budget}",
            file=sys.stderr,
        )
        flat = flat[:budget]
        if span.end > budget:
            raise AlignmentError("target span lies beyond the truncation boundary")

    ids = tokenizer.convert_tokens_to_ids([tokenizer.cls_token] + flat + [tokenizer.sep_token])
    return _Prepared(record, ids, span)


def extract_layers(
    samples: list[SampleRecord],
    model_id: str,
    config: ExtractConfig | None = None,
) -> ExtractResult:
    """Pooled target-token hidden states for every layer and sample.

    Per-sample failures (unalignable or truncated-away targets) are
    collected into the skip list; the run fails only if every sample
    fails.
    """
    config = config or ExtractConfig()
    if config.pool not in ("mean", "first"):
        raise ValueError(f"unknown pooling mode {config.pool!r}")
    if not samples:
        raise ExtractionError("no samples to extract")
    tokenizer, model = _load_model(model_id)

    prepared: list[_Prepared] = []
    skipped: list[tuple[str, str]] = []
    for record in samples:
        try:
            prepared.append(_prepare(tokenizer, record, config.max_seq_len))
        except AlignmentError as exc:
            skipped.append((record.id, str(exc)))
    if not prepared:
        raise ExtractionError(
            "extraction failed for all samples: "
            + "; ".join(f"{sid}: {why}" for sid, why in skipped[:5])
        )

    num_layers = model.config.num_hidden_layers
    hidden_dim = model.config.hidden_size
    pad_id = tokenizer.pad_token_id or 0
    # hidden_states[0] is the pre-block embedding output, 1..L the blocks
    state_indices = list(range(0, num_layers + 1)) if config.include_embedding_layer else list(
        range(1, num_layers + 1)
    )

    matrices = [np.empty((len(prepared), hidden_dim), dtype=np.float32) for _ in state_indices]
    with torch.no_grad():
        for offset in range(0, len(prepared), config.batch_size):
            batch = prepared[offset : offset + config.batch_size]
            width = max(len(p.input_ids) for p in batch)
            ids = torch.full((len(batch), width), pad_id, dtype=torch.long)
            mask = torch.zeros((len(batch), width), dtype=torch.long)
            for row, p in enumerate(batch):
                ids[row, : len(p.input_ids)] = torch.tensor(p.input_ids, dtype=torch.long)
                mask[row, : len(p.input_ids)] = 1
            output = model(input_ids=ids, attention_mask=mask, output_hidden_states=True)
            for pos, state_index in enumerate(state_indices):
                states = output.hidden_states[state_index].numpy()
                for row, p in enumerate(batch):
                    vectors = states[row, 1 : len(p.input_ids) - 1]  # strip [CLS]/[SEP]
                    pooled = pool_subwords(vectors, p.span, mode=config.pool)
                    matrices[pos][offset + row] = pooled.astype(np.float32, copy=False)

    sample_meta = [
        {
            "id": p.record.id,
            "clean_text": p.record.clean_text,
            "construction": p.record.construction,
            "verb_category": p.record.verb_category,
            "subword_span": [p.span.start, p.span.end],
        }
        for p in prepared
    ]
    return ExtractResult(
        model_id=model_id,
        hidden_dim=hidden_dim,
        includes_embedding_layer=config.include_embedding_layer,
        samples=sample_meta,
        layers=matrices,
        skipped=skipped,
    )
