"""Synthetic bundle generator with a controlled layer trend.

Builds a bundle whose eleven construction classes sit on distinct
directions, with class separation following a bump profile over layers
that peaks at a chosen layer. Noise is seeded, so generation is fully
deterministic. Used by tests and handy for demo runs without real
corpus data.
"""

from __future__ import annotations

import numpy as np

from .bundle import BundleSample, EmbeddingBundle, make_bundle
from .corpus import construction_names, ConstructionLabel


def separation_profile(num_layers: int, peak_layer: int, base: float = 0.6, amp: float = 8.0) -> list[float]:
    """Class-separation scale per layer: a Gaussian bump over the peak."""
    return [
        base + amp * float(np.exp(-((layer - peak_layer) ** 2) / 4.0))
        for layer in range(1, num_layers + 1)
    ]


def make_synthetic_bundle(
    num_layers: int = 12,
    hidden_dim: int = 32,
    samples_per_construction: int = 8,
    peak_layer: int | None = None,
    seed: int = 0,
    model_id: str = "synthetic-peak",
) -> EmbeddingBundle:
    """Bundle whose inter-class separation peaks at ``peak_layer``.

    The peak defaults to the middle layer (layer 6 of 12). Each
    construction gets a unit direction (one-hot; requires
    hidden_dim >= 11); per layer, class centers are that direction
    scaled by the separation profile, plus unit Gaussian noise.
    """
    names = construction_names()
    if hidden_dim < len(names):
        raise ValueError(f"hidden_dim must be >= {len(names)}")
    if peak_layer is None:
        peak_layer = max(1, (num_layers + 1) // 2)
    if not 1 <= peak_layer <= num_layers:
        raise ValueError("peak_layer must be one of the layers")

    rng = np.random.default_rng(seed)
    scales = separation_profile(num_layers, peak_layer)
    n_per = samples_per_construction

    samples = []
    for name in names:
        label = ConstructionLabel.parse(name)
        for i in range(n_per):
            samples.append(
                BundleSample(
                    id=f"syn:{name}:{i:03d}",
                    clean_text=f"sample {i} of {label.verb_category} {label.particle}",
                    construction=name,
                    verb_category=label.verb_category,
                    subword_span=(2 + i % 3, 3 + i % 3),
                )
            )

    layers = []
    for scale in scales:
        matrix = np.empty((len(samples), hidden_dim), dtype=np.float64)
        for c, name in enumerate(names):
            center = np.zeros(hidden_dim)
            center[c] = scale
            block = center + rng.normal(0.0, 1.0, size=(n_per, hidden_dim))
            matrix[c * n_per : (c + 1) * n_per] = block
        layers.append(matrix)

    return make_bundle(model_id=model_id, samples=samples, layers=layers)
