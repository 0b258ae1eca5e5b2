"""Layer-wise geometry of verb-particle construction embeddings.

Core pieces: concordance extraction over plain text (corpus), a
portable per-layer embedding container (bundle), cluster separability
via the generalized discrimination value (geometry), classical and
stress-majorization MDS (mds), per-layer orchestration (analysis), and
deterministic SVG figures (report).
"""

__version__ = "0.1.0"

from .analysis import (
    GdvCurve,
    GroupingMode,
    LayerProjection,
    OutlierFlags,
    flag_outliers,
    per_layer_gdv,
    per_layer_mds,
)
from .bundle import (
    BundleSample,
    EmbeddingBundle,
    make_bundle,
    read_bundle,
    validate_bundle,
    write_bundle,
)
from .corpus import (
    ConstructionLabel,
    Query,
    Sample,
    clean_sentence,
    dataset_summary,
    extract_concordance,
)
from .geometry import LabeledCloud, SeparabilityReport, gdv, rescale_half_zscore
from .mds import DistanceMatrix, MdsResult, classical_mds, pairwise_distances, smacof, stress
from .report import PlotSpec, emit_curve_svg, emit_scatter_svg

__all__ = [
    "__version__",
    "BundleSample",
    "ConstructionLabel",
    "DistanceMatrix",
    "EmbeddingBundle",
    "GdvCurve",
    "GroupingMode",
    "LabeledCloud",
    "LayerProjection",
    "MdsResult",
    "OutlierFlags",
    "PlotSpec",
    "Query",
    "Sample",
    "SeparabilityReport",
    "clean_sentence",
    "classical_mds",
    "dataset_summary",
    "emit_curve_svg",
    "emit_scatter_svg",
    "extract_concordance",
    "flag_outliers",
    "gdv",
    "make_bundle",
    "pairwise_distances",
    "per_layer_gdv",
    "per_layer_mds",
    "read_bundle",
    "rescale_half_zscore",
    "smacof",
    "stress",
    "validate_bundle",
    "write_bundle",
]
