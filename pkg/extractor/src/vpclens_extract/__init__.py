"""Embedding extraction sidecar for the vpclens analysis pipeline."""

__version__ = "0.1.0"

from .align import AlignmentError, SubwordSpan, locate_target, pool_subwords, tokenize_words
from .bundle_io import write_bundle_dir
from .runner import (
    ExtractConfig,
    ExtractionError,
    ExtractResult,
    SampleRecord,
    extract_layers,
    load_samples,
)

__all__ = [
    "__version__",
    "AlignmentError",
    "ExtractConfig",
    "ExtractionError",
    "ExtractResult",
    "SampleRecord",
    "SubwordSpan",
    "extract_layers",
    "load_samples",
    "locate_target",
    "pool_subwords",
    "tokenize_words",
    "write_bundle_dir",
]
