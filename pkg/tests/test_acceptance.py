"""Acceptance gate: one test per criterion, at its stated tolerance.

Run with ``pytest -v tests/test_acceptance.py`` (or ``-s`` to see the
per-criterion PASS lines).
"""

import string
import time

import numpy as np
import pytest

import oracles
from helpers import random_bundle
from vpclens.bundle import read_bundle, write_bundle
from vpclens.cli import main
from vpclens.corpus import clean_sentence
from vpclens.errors import (
    BundleMetadataError,
    BundleValidationError,
    LayerShapeError,
    MissingLayerError,
)
from vpclens.geometry import gdv
from vpclens.mds import DistanceMatrix, classical_mds, pairwise_distances, smacof
from vpclens.synthetic import make_synthetic_bundle


def _passed(name):
    print(f"[PASS] {name}")


def _random_cloud(rng):
    """Cloud within the acceptance envelope: N <= 50, D <= 5, L <= 4, N_l >= 2."""
    n_classes = int(rng.integers(2, 5))
    dim = int(rng.integers(1, 6))
    sizes = rng.integers(2, 13, size=n_classes)
    points, labels = [], []
    for c, size in enumerate(sizes):
        center = rng.normal(0.0, 4.0, size=dim)
        points.append(center + rng.normal(0.0, 1.0, size=(int(size), dim)))
        labels += [c] * int(size)
    return np.vstack(points), labels


def test_gdv_oracle_equivalence_200_clouds():
    rng = np.random.default_rng(2024)
    started = time.monotonic()
    worst = 0.0
    for _ in range(200):
        points, labels = _random_cloud(rng)
        assert len(labels) <= 50
        expected = oracles.gdv(points.tolist(), labels)
        got = gdv(points, labels).gdv
        worst = max(worst, abs(got - expected))
    elapsed = time.monotonic() - started
    assert worst <= 1e-9, f"worst |delta| = {worst:.2e}"
    assert elapsed < 5.0, f"took {elapsed:.2f}s"
    _passed(f"gdv oracle equivalence (200 clouds, worst delta {worst:.1e}, {elapsed:.2f}s)")


def test_gdv_hand_values():
    two = gdv(np.array([[0.0], [1.0], [10.0], [11.0]]), ["a", "a", "b", "b"]).gdv
    assert two == pytest.approx(-0.89553, abs=1e-4)
    square = gdv(
        np.array([[0.0, 0.0], [0.0, 1.0], [4.0, 0.0], [4.0, 1.0]]), ["a", "a", "b", "b"]
    ).gdv
    assert square == pytest.approx(-0.14645, abs=1e-4)
    _passed("gdv hand values (-0.89553, -0.14645)")


def test_gdv_invariances():
    rng = np.random.default_rng(99)
    points, labels = _random_cloud(rng)
    base = gdv(points, labels).gdv

    for a in (1e-3, 1.0, 1e3):
        assert gdv(points * a, labels).gdv == pytest.approx(base, abs=1e-9), f"scale {a}"
    assert gdv(points + 123.45, labels).gdv == pytest.approx(base, abs=1e-9), "shift"

    perm = rng.permutation(points.shape[1])
    assert gdv(points[:, perm], labels).gdv == pytest.approx(base, abs=1e-9), "dim permutation"

    doubled = np.hstack([points, points])
    assert gdv(doubled, labels).gdv == pytest.approx(base, abs=1e-9), "dim duplication"

    order = rng.permutation(len(labels))
    shuffled = gdv(points[order], [labels[i] for i in order]).gdv
    assert shuffled == pytest.approx(base, abs=1e-9), "row shuffle"

    renamed = gdv(points, [f"renamed-{l}" for l in labels]).gdv
    assert renamed == pytest.approx(base, abs=1e-9), "label renaming"
    _passed("gdv invariances (scale, shift, dim perm, dim dup, row shuffle, rename)")


def test_classical_mds():
    started = time.monotonic()
    triangle = DistanceMatrix(np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]))
    result = classical_mds(triangle, k=2)
    np.testing.assert_allclose(result.eigenvalues, [0.5, 0.5, 0.0], atol=1e-9)

    collinear = classical_mds(pairwise_distances(np.array([[0.0], [1.0], [2.0], [3.0]])), k=1)
    assert collinear.eigenvalues[0] == pytest.approx(5.0, abs=1e-9)

    rng = np.random.default_rng(17)
    for n in (10, 50, 200):
        points = rng.normal(size=(n, 2)) * rng.uniform(0.5, 3.0)
        d = pairwise_distances(points)
        out = pairwise_distances(classical_mds(d, k=2).coordinates)
        np.testing.assert_allclose(out.values, d.values, atol=1e-6)
    elapsed = time.monotonic() - started
    assert elapsed < 10.0, f"took {elapsed:.2f}s"
    _passed(f"classical mds (triangle, collinear, reconstruction to n=200, {elapsed:.2f}s)")


def test_smacof():
    rng = np.random.default_rng(31)
    for _ in range(50):
        n = int(rng.integers(4, 15))
        d = pairwise_distances(rng.normal(size=(n, 3)))
        result = smacof(d, rng.normal(size=(n, 2)), max_iter=40, tol=1e-12)
        trace = result.stress_trace
        assert all(trace[i + 1] <= trace[i] for i in range(len(trace) - 1))

    collinear = pairwise_distances(np.array([[0.0], [1.0], [2.0], [3.0]]))
    result = smacof(collinear, rng.normal(size=(4, 2)), max_iter=3000, tol=1e-15)
    assert result.stress_trace[-1] <= 1e-6

    planar = rng.normal(size=(12, 2))
    d = pairwise_distances(planar)
    seeded = smacof(d, classical_mds(d, k=2).coordinates, max_iter=200, tol=1e-15)
    assert seeded.stress_trace[-1] <= 1e-6
    _passed("smacof (50 nonincreasing traces, realizable inputs converge below 1e-6)")


CLEANING_TABLE = [
    ("The Minister, agreed!", "the minister agreed"),
    ("", ""),
    ("  give   UP  ", "give up"),
    ("don't stop", "dont stop"),
    ("A&B|C", "abc"),
    ("hello...", "hello"),
    ("(parenthetical)", "parenthetical"),
    ("[brackets] {braces}", "brackets braces"),
    ("semi;colon:colon", "semicoloncolon"),
    ("tabs\there", "tabs here"),
    ("new\nline\r\nhere", "new line here"),
    ("MIXED Case Words", "mixed case words"),
    ("number 42 stays", "number 42 stays"),
    ("email@example.com", "emailexamplecom"),
    ('quotes "inside" text', "quotes inside text"),
    ("back`tick ~tilde", "backtick tilde"),
    ("slash/and\\backslash", "slashandbackslash"),
    ("plus+minus-equals=", "plusminusequals"),
    ("   ", ""),
    ("percent%and#hash", "percentandhash"),
]


def test_cleaning_table():
    assert len(CLEANING_TABLE) == 20
    for raw, expected in CLEANING_TABLE:
        got = clean_sentence(raw)
        assert got == expected, f"{raw!r} -> {got!r}"
        assert clean_sentence(got) == got, f"not idempotent on {raw!r}"
        assert not any(ch in string.punctuation for ch in got)
    _passed("cleaning (20-case table, bit-exact, idempotent)")


def test_bundle_round_trip_and_rejection(tmp_path):
    rng = np.random.default_rng(55)
    for i in range(50):
        original = random_bundle(rng)
        path = tmp_path / f"rt-{i}"
        write_bundle(original, path)
        loaded = read_bundle(path)
        assert loaded.samples == original.samples
        assert loaded.model_id == original.model_id
        assert loaded.includes_embedding_layer == original.includes_embedding_layer
        for a, b in zip(original.layers, loaded.layers):
            assert a.tobytes() == b.tobytes()

    import json as json_mod

    def fresh(name):
        path = tmp_path / name
        write_bundle(random_bundle(np.random.default_rng(7), include_embedding=False), path)
        return path

    path = fresh("truncated")
    layer = path / "layers" / "layer_01.f32"
    layer.write_bytes(layer.read_bytes()[:-4])
    with pytest.raises(LayerShapeError):
        read_bundle(path)

    path = fresh("nan-payload")
    layer = path / "layers" / "layer_01.f32"
    payload = bytearray(layer.read_bytes())
    payload[0:4] = b"\x00\x00\xc0\x7f"
    layer.write_bytes(bytes(payload))
    with pytest.raises(BundleValidationError):
        read_bundle(path)

    path = fresh("shape-lie")
    meta = json_mod.loads((path / "meta.json").read_text(encoding="utf-8"))
    meta["hidden_dim"] += 1
    (path / "meta.json").write_text(json_mod.dumps(meta), encoding="utf-8")
    with pytest.raises(LayerShapeError):
        read_bundle(path)

    path = fresh("missing-layer")
    (path / "layers" / "layer_01.f32").unlink()
    with pytest.raises(MissingLayerError):
        read_bundle(path)

    path = fresh("bad-meta")
    (path / "meta.json").write_text("oops", encoding="utf-8")
    with pytest.raises(BundleMetadataError):
        read_bundle(path)

    _passed("bundle round trip (50 random bundles bit-exact, malformed fixtures rejected)")


def test_synthetic_layer_trend(tmp_path):
    started = time.monotonic()
    bundle_path = tmp_path / "bundle"
    write_bundle(make_synthetic_bundle(peak_layer=6, seed=0), bundle_path)
    out = tmp_path / "report"
    code = main(["analyze", "--bundle", str(bundle_path), "--grouping", "all", "--out", str(out)])
    assert code == 0

    lines = (out / "gdv_curves.csv").read_text(encoding="utf-8").strip().split("\n")[1:]
    values = {}
    for line in lines:
        _, grouping, layer, value = line.split(",")
        if grouping == "all":
            values[int(layer)] = float(value)
    assert set(values) == set(range(1, 13))
    assert min(values, key=values.get) == 6
    mid = min(values[l] for l in range(4, 9))
    assert mid < values[1] and mid < values[12]
    elapsed = time.monotonic() - started
    assert elapsed < 30.0, f"took {elapsed:.2f}s"
    _passed(f"synthetic layer trend (argmin at 6, mid < edges, {elapsed:.2f}s)")


def test_end_to_end_determinism(tmp_path):
    bundle_path = tmp_path / "bundle"
    write_bundle(make_synthetic_bundle(num_layers=4, seed=12), bundle_path)
    args = [
        "analyze",
        "--bundle",
        str(bundle_path),
        "--grouping",
        "all",
        "--grouping",
        "by_category",
    ]
    for name in ("r1", "r2"):
        assert main(args + ["--out", str(tmp_path / name)]) == 0
    first = sorted(p for p in (tmp_path / "r1").iterdir() if p.suffix in {".csv", ".svg"})
    assert first, "report produced no CSV/SVG files"
    for path in first:
        twin = tmp_path / "r2" / path.name
        assert path.read_bytes() == twin.read_bytes(), f"{path.name} differs between runs"
    _passed(f"end-to-end determinism ({len(first)} CSV/SVG files byte-identical)")
