"""Word-to-subword alignment and span pooling.

Cleaned sample text is whitespace-tokenized and contains no
punctuation, so tokenizing each word separately yields exactly the
pieces the model sees for that word. Spans are expressed relative to
the concatenated subword sequence of the sentence (special tokens
excluded); the runner adds the [CLS] offset when slicing hidden
states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class AlignmentError(ValueError):
    """The target word has no usable subword span."""


@dataclass(frozen=True)
class SubwordSpan:
    """Contiguous piece range of one whitespace token: [start, end)."""

    start: int
    end: int
    pieces: tuple[str, ...]

    def __len__(self) -> int:
        return self.end - self.start


def tokenize_words(tokenizer, words: list[str]) -> list[list[str]]:
    """Subword pieces of each whitespace token, in order."""
    return [tokenizer.tokenize(word) for word in words]


def locate_target(pieces_per_word: list[list[str]], target_token_index: int) -> SubwordSpan:
    """Span of the word at ``target_token_index`` in the flat piece sequence.

    Raises :class:`AlignmentError` when the index is out of range or
    the tokenizer dropped the word (zero pieces).
    """
    if not 0 <= target_token_index < len(pieces_per_word):
        raise AlignmentError(
            f"target index {target_token_index} outside the {len(pieces_per_word)}-word sentence"
        )
    pieces = pieces_per_word[target_token_index]
    if not pieces:
        raise AlignmentError(f"tokenizer dropped the target word at index {target_token_index}")
    start = sum(len(p) for p in pieces_per_word[:target_token_index])
    return SubwordSpan(start=start, end=start + len(pieces), pieces=tuple(pieces))


def pool_subwords(vectors: np.ndarray, span: SubwordSpan, mode: str = "mean") -> np.ndarray:
    """Pool the span's vectors into one: arithmetic mean or first piece.

    ``vectors`` covers the sentence's subword positions (no special
    tokens). A single-piece span pools to exactly that piece's vector.
    """
    if len(span) < 1:
        raise AlignmentError("empty subword span")
    if span.end > vectors.shape[0]:
        raise AlignmentError(
            f"span [{span.start}, {span.end}) exceeds the {vectors.shape[0]}-piece sequence"
        )
    window = vectors[span.start : span.end]
    if mode == "mean":
        return window[0].copy() if len(span) == 1 else window.mean(axis=0)
    if mode == "first":
        return window[0].copy()
    raise ValueError(f"unknown pooling mode {mode!r}")
