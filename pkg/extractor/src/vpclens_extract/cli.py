"""Extraction sidecar CLI.

Reads the corpus samples JSON, runs the configured checkpoint, and
writes an embedding bundle directory consumable by the analysis
package.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .bundle_io import write_bundle_dir
from .runner import ExtractConfig, ExtractionError, extract_layers, load_samples


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vpclens-extract", description=__doc__)
    parser.add_argument("--version", action="version", version=f"vpclens-extract {__version__}")
    parser.add_argument("--samples", required=True, help="samples.json from the corpus step")
    parser.add_argument("--model", required=True, help="checkpoint id or local path")
    parser.add_argument("--out", required=True, help="bundle output directory (must not exist)")
    parser.add_argument(
        "--include-embedding-layer",
        action="store_true",
        help="also store the pre-block token embedding as layer 00",
    )
    parser.add_argument("--pool", choices=("mean", "first"), default="mean")
    parser.add_argument("--batch-size", type=int, default=16)
    parser.add_argument("--max-seq-len", type=int, default=128)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = ExtractConfig(
        pool=args.pool,
        batch_size=args.batch_size,
        max_seq_len=args.max_seq_len,
        include_embedding_layer=args.include_embedding_layer,
    )
    try:
        samples = load_samples(args.samples)
        result = extract_layers(samples, args.model, config)
        write_bundle_dir(
            args.out,
            model_id=result.model_id,
            hidden_dim=result.hidden_dim,
            includes_embedding_layer=result.includes_embedding_layer,
            samples=result.samples,
            layers=result.layers,
        )
    except (ExtractionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for sample_id, reason in result.skipped:
        print(f"skipped {sample_id}: {reason}", file=sys.stderr)
    print(
        f"extracted {len(result.samples)} samples x {len(result.layers)} layers "
        f"x {result.hidden_dim} dims -> {args.out}"
        + (f" ({len(result.skipped)} skipped)" if result.skipped else "")
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
