"""Shared fixture builders for the test suite."""

import numpy as np

from vpclens.bundle import BundleSample, make_bundle
from vpclens.corpus import construction_names, ConstructionLabel


def random_bundle(rng, min_constructions=2, max_layers=4, max_dim=6, include_embedding=None):
    """A small valid bundle with random shapes and payloads."""
    names = list(construction_names())
    k = int(rng.integers(min_constructions, len(names) + 1))
    chosen = [names[i] for i in sorted(rng.choice(len(names), size=k, replace=False))]
    num_layers = int(rng.integers(1, max_layers + 1))
    hidden_dim = int(rng.integers(1, max_dim + 1))
    if include_embedding is None:
        include_embedding = bool(rng.integers(0, 2))

    samples = []
    for name in chosen:
        label = ConstructionLabel.parse(name)
        for i in range(int(rng.integers(2, 5))):
            samples.append(
                BundleSample(
                    id=f"{name}:{i}",
                    clean_text=f"{label.verb_category} {label.particle} sample {i}",
                    construction=name,
                    verb_category=label.verb_category,
                    subword_span=(i, i + 1 + int(rng.integers(0, 2))),
                )
            )
    layers = [
        rng.normal(size=(len(samples), hidden_dim)).astype(np.float32)
        for _ in range(num_layers)
    ]
    return make_bundle(
        model_id=f"test-model-{int(rng.integers(0, 1000))}",
        samples=samples,
        layers=layers,
        includes_embedding_layer=include_embedding,
    )


def two_layer_fixture():
    """1-D bundle realizing the hand-computed separability curve.

    Layer 1: give_up {0, 1} vs give_in {0.5, 1.5}  -> +0.223607
    Layer 2: give_up {0, 1} vs give_in {10, 11}    -> -0.895533
    """
    samples = [
        BundleSample("up:0", "i give up now", "give_up", "give", (1, 2)),
        BundleSample("up:1", "we give up too", "give_up", "give", (1, 2)),
        BundleSample("in:0", "i give in now", "give_in", "give", (1, 2)),
        BundleSample("in:1", "we give in too", "give_in", "give", (1, 2)),
    ]
    layer1 = np.array([[0.0], [1.0], [0.5], [1.5]], dtype=np.float32)
    layer2 = np.array([[0.0], [1.0], [10.0], [11.0]], dtype=np.float32)
    return make_bundle("fixture", samples, [layer1, layer2])
