"""Command-line entry point.

Subcommands:
  corpus    extract labeled samples from plain-text files
  analyze   per-layer separability curves, MDS projections, outliers
  selftest  run the embedded oracle checks

Exit codes are stable for scripting: 0 success, 2 validation error,
3 I/O error, 4 degenerate data, 1 selftest failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from pathlib import Path

from . import __version__, analysis, report, selftest
from .bundle import bundle_checksum, read_bundle
from .corpus import (
    clean_sentence,
    dataset_summary,
    extract_concordance,
    parse_queries,
    samples_json_text,
    summary_csv,
)
from .errors import BundleError, BundleValidationError, DegenerateDataError, QueryError

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_DEGENERATE = 4


def _write_text(path: Path, text: str) -> None:
    """Single-writer commit: write a temp file, then rename into place."""
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def cmd_corpus(args) -> int:
    in_dir = Path(args.in_dir)
    if not in_dir.exists():
        raise OSError(f"input path not readable: {in_dir}")
    files = sorted(p for p in in_dir.iterdir() if p.is_file()) if in_dir.is_dir() else [in_dir]
    queries = parse_queries(args.queries)

    samples = []
    for path in files:
        tokens = clean_sentence(path.read_text(encoding="utf-8")).split()
        hits = []
        for query in queries:
            hits += extract_concordance(tokens, query, window=args.window, source=path.name)
        # restore stream order across queries; ids end with ":<offset>:<construction>"
        hits.sort(key=lambda s: int(s.id.rsplit(":", 2)[1]))
        samples += hits

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_text(out_dir / "samples.json", samples_json_text(samples))
    _write_text(out_dir / "summary.csv", summary_csv(dataset_summary(samples)))
    print(f"extracted {len(samples)} samples from {len(files)} file(s) -> {out_dir}")
    return EXIT_OK


def _safe_model_id(model_id: str) -> str:
    return "".join(c if c.isalnum() or c in "-._" else "_" for c in model_id)


def cmd_analyze(args) -> int:
    started = time.time()
    bundle = read_bundle(args.bundle)

    groupings = []
    for text in args.grouping or ["all"]:
        groupings += analysis.parse_grouping(text)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    curves = [analysis.per_layer_gdv(bundle, g) for g in groupings]
    _write_text(out_dir / "gdv_curves.csv", analysis.gdv_curves_csv(curves))
    curve_spec = report.PlotSpec(
        kind="curve",
        title=f"separability by layer ({bundle.model_id})",
        x_label="layer",
        y_label="discrimination value",
    )
    _write_text(
        out_dir / f"gdv_curves_{_safe_model_id(bundle.model_id)}.svg",
        report.emit_curve_svg(curves, curve_spec),
    )

    outlier_sets = []
    for layer in bundle.layer_indices:
        projection = analysis.per_layer_mds(
            bundle,
            layer,
            method=args.mds,
            rescale=args.mds_rescaled,
            smacof_max_iter=args.smacof_max_iter,
            smacof_tol=args.smacof_tol,
        )
        _write_text(out_dir / f"mds_layer_{layer:02d}.csv", analysis.mds_layer_csv(projection))

        flags = analysis.flag_outliers(bundle, layer, groupings[0], k=args.outlier_k)
        flagged_by_id = {e.sample_id: e.flagged for e in flags.entries}
        scatter_spec = report.PlotSpec(
            kind="scatter",
            title=f"layer {layer} ({bundle.model_id})",
            x_label="mds-1",
            y_label="mds-2",
        )
        _write_text(
            out_dir / f"mds_layer_{layer:02d}.svg",
            report.emit_scatter_svg(
                projection.result.coordinates,
                projection.constructions,
                scatter_spec,
                flagged=[flagged_by_id.get(sid, False) for sid in projection.sample_ids],
            ),
        )
        for grouping in groupings:
            outlier_sets.append(
                flags
                if grouping == groupings[0]
                else analysis.flag_outliers(bundle, layer, grouping, k=args.outlier_k)
            )
    _write_text(out_dir / "outliers.csv", analysis.outliers_csv(outlier_sets))

    manifest = {
        "tool": "vpclens",
        "version": __version__,
        "bundle": str(args.bundle),
        "bundle_checksum": bundle_checksum(args.bundle),
        "model_id": bundle.model_id,
        "groupings": [g.name for g in groupings],
        "mds_method": args.mds,
        "mds_rescaled": args.mds_rescaled,
        "outlier_k": args.outlier_k,
        "smacof_max_iter": args.smacof_max_iter,
        "smacof_tol": args.smacof_tol,
        "elapsed_seconds": round(time.time() - started, 3),
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    _write_text(out_dir / "run_manifest.json", json.dumps(manifest, indent=2) + "\n")
    print(f"report written to {out_dir}")
    return EXIT_OK


def cmd_selftest(_args) -> int:
    return EXIT_OK if selftest.run_selftest() else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vpclens", description=__doc__)
    parser.add_argument("--version", action="version", version=f"vpclens {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_corpus = sub.add_parser("corpus", help="extract labeled samples from raw text")
    p_corpus.add_argument("--in", dest="in_dir", required=True, help="text file or directory of text files")
    p_corpus.add_argument("--queries", required=True, help="query file: verb<TAB>particle[<TAB>inflections]")
    p_corpus.add_argument("--window", type=int, default=10, help="context tokens on each side")
    p_corpus.add_argument("--out", required=True, help="output directory for samples.json + summary.csv")
    p_corpus.set_defaults(func=cmd_corpus)

    p_analyze = sub.add_parser("analyze", help="per-layer separability, MDS, outliers")
    p_analyze.add_argument("--bundle", required=True, help="embedding bundle directory")
    p_analyze.add_argument(
        "--grouping",
        action="append",
        help="all | by_category | within_category:<cat>[,<cat>...] (repeatable; default all)",
    )
    p_analyze.add_argument("--mds", choices=("classical", "smacof"), default="classical")
    p_analyze.add_argument(
        "--mds-rescaled",
        action="store_true",
        help="project half-z-scored vectors instead of raw ones",
    )
    p_analyze.add_argument("--outlier-k", type=float, default=3.5, help="MAD multiplier")
    p_analyze.add_argument("--smacof-max-iter", type=int, default=300)
    p_analyze.add_argument("--smacof-tol", type=float, default=1e-9)
    p_analyze.add_argument("--out", required=True, help="report output directory")
    p_analyze.set_defaults(func=cmd_analyze)

    p_selftest = sub.add_parser("selftest", help="run embedded oracle checks")
    p_selftest.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BundleValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for violation in exc.violations:
            print(f"  - {violation}", file=sys.stderr)
        return EXIT_VALIDATION
    except (BundleError, QueryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except DegenerateDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
