"""Built-in oracle checks runnable from the CLI.

Each check compares a live computation against a frozen constant that
was derived independently (hand computation or brute-force oracle).
The table printed by ``vpclens selftest`` gives a quick go/no-go for a
fresh build or a new platform.
"""

from __future__ import annotations

import tempfile

import numpy as np

from . import bundle as bundle_mod
from . import corpus, geometry, mds

# Frozen expected values; see tests/oracles.py for their derivation.
GDV_TWO_CLUSTERS = -0.895533  # 1-D, classes {0,1} and {10,11}
GDV_SQUARE = -0.146447  # 2-D, classes {(0,0),(0,1)} and {(4,0),(4,1)}
RESCALE_QUAD = (-0.547270, -0.447767, 0.447767, 0.547270)  # 1-D points 0,1,10,11


def _check_cleaning():
    cases = [
        ("The Minister, agreed!", "the minister agreed"),
        ("  give   UP  ", "give up"),
        ("", ""),
        ("A&B|C... done?", "abc done"),
    ]
    for raw, expected in cases:
        got = corpus.clean_sentence(raw)
        if got != expected:
            return False, f"{raw!r} -> {got!r}, expected {expected!r}"
        if corpus.clean_sentence(got) != got:
            return False, f"not idempotent on {raw!r}"
    return True, f"{len(cases)} cases"


def _check_rescale():
    scaled = geometry.rescale_half_zscore(np.array([[0.0], [1.0], [10.0], [11.0]]))
    got = scaled.points[:, 0]
    err = np.abs(got - np.array(RESCALE_QUAD)).max()
    return err <= 1e-5, f"max error {err:.2e}"


def _check_gdv_two_clusters():
    report = geometry.gdv(np.array([[0.0], [1.0], [10.0], [11.0]]), ["a", "a", "b", "b"])
    err = abs(report.gdv - GDV_TWO_CLUSTERS)
    return err <= 1e-4, f"gdv {report.gdv:.6f}, expected {GDV_TWO_CLUSTERS}"


def _check_gdv_square():
    points = np.array([[0.0, 0.0], [0.0, 1.0], [4.0, 0.0], [4.0, 1.0]])
    report = geometry.gdv(points, ["a", "a", "b", "b"])
    err = abs(report.gdv - GDV_SQUARE)
    return err <= 1e-4, f"gdv {report.gdv:.6f}, expected {GDV_SQUARE}"


def _check_gdv_invariance():
    rng = np.random.default_rng(7)
    points = rng.normal(size=(12, 3))
    labels = ["a"] * 6 + ["b"] * 6
    base = geometry.gdv(points, labels).gdv
    scaled = geometry.gdv(points * 1000.0 - 4.2, labels).gdv
    err = abs(base - scaled)
    return err <= 1e-9, f"|gdv(aX+b) - gdv(X)| = {err:.2e}"


def _check_mds_triangle():
    dist = mds.DistanceMatrix(np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]))
    result = mds.classical_mds(dist, k=2)
    eig_err = np.abs(result.eigenvalues - np.array([0.5, 0.5, 0.0])).max()
    out = mds.pairwise_distances(result.coordinates).values
    dist_err = np.abs(out[np.triu_indices(3, k=1)] - 1.0).max()
    ok = eig_err <= 1e-9 and dist_err <= 1e-9
    return ok, f"eig err {eig_err:.2e}, dist err {dist_err:.2e}"


def _check_mds_collinear():
    points = np.array([[0.0], [1.0], [2.0], [3.0]])
    result = mds.classical_mds(mds.pairwise_distances(points), k=1)
    err = abs(result.eigenvalues[0] - 5.0)
    coords = np.sort(result.coordinates[:, 0])
    coord_err = np.abs(coords - np.array([-1.5, -0.5, 0.5, 1.5])).max()
    ok = err <= 1e-9 and coord_err <= 1e-9
    return ok, f"top eigenvalue {result.eigenvalues[0]:.9f}"


def _check_smacof_fixed_point():
    # Exactly centered, so the solver's recentering is a bitwise no-op.
    points = np.array([[-1.0, 0.0], [1.0, 0.0], [0.0, 2.0], [0.0, -2.0]])
    dist = mds.pairwise_distances(points)
    result = mds.smacof(dist, points, max_iter=50, tol=1e-12)
    ok = result.stress_trace == (0.0,) and np.array_equal(result.coordinates, points)
    return ok, f"trace {result.stress_trace}"


def _check_bundle_roundtrip():
    samples = [
        bundle_mod.BundleSample("s1", "they agree on it", "agree_on", "agree", (1, 2)),
        bundle_mod.BundleSample("s2", "i give up now", "give_up", "give", (1, 2)),
    ]
    layers = [np.arange(6, dtype=np.float32).reshape(2, 3) + i for i in range(2)]
    original = bundle_mod.make_bundle("selftest", samples, layers)
    with tempfile.TemporaryDirectory() as tmp:
        path = f"{tmp}/bundle"
        bundle_mod.write_bundle(original, path)
        loaded = bundle_mod.read_bundle(path)
    ok = all(np.array_equal(a, b) for a, b in zip(original.layers, loaded.layers))
    ok = ok and loaded.samples == original.samples
    return ok, "2 samples x 2 layers x 3 dims"


def _check_outlier_rule():
    points = np.array([[0.0], [0.1], [0.2], [100.0]])
    centroid = points.mean(axis=0)
    scores = np.sqrt(((points - centroid) ** 2).sum(axis=1))
    med = np.median(scores)
    mad = np.median(np.abs(scores - med))
    flags = [bool(f) for f in scores > med + 3.5 * mad]
    ok = flags == [False, False, False, True]
    return ok, f"flags {flags}"


CHECKS = [
    ("cleaning rules", _check_cleaning),
    ("half z-score example", _check_rescale),
    ("gdv two clusters", _check_gdv_two_clusters),
    ("gdv square", _check_gdv_square),
    ("gdv scale/shift invariance", _check_gdv_invariance),
    ("classical mds triangle", _check_mds_triangle),
    ("classical mds collinear", _check_mds_collinear),
    ("smacof fixed point", _check_smacof_fixed_point),
    ("bundle round trip", _check_bundle_roundtrip),
    ("outlier rule", _check_outlier_rule),
]


def run_selftest(write=print) -> bool:
    """Run every check and print one PASS/FAIL line each."""
    all_ok = True
    for name, check in CHECKS:
        try:
            ok, detail = check()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        all_ok = all_ok and ok
        write(f"[{'PASS' if ok else 'FAIL'}] {name:<28} {detail}")
    write(f"selftest: {'all checks passed' if all_ok else 'FAILURES detected'}")
    return all_ok
