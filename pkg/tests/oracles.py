"""Independent brute-force oracles used to freeze expected test values.

Everything here is deliberately written in plain Python (lists, loops,
math.dist) with no numpy and no imports from vpclens, so it shares no
code path with the implementation it checks.
"""

import math
from statistics import median


def rescale_half_zscore(points):
    """Half z-score each dimension: 0.5 * (x - mean) / population_std."""
    n = len(points)
    dim = len(points[0])
    out = [[0.0] * dim for _ in range(n)]
    for d in range(dim):
        col = [p[d] for p in points]
        mu = sum(col) / n
        var = sum((v - mu) ** 2 for v in col) / n
        sigma = math.sqrt(var)
        if sigma > 0.0:
            for i in range(n):
                out[i][d] = 0.5 * (col[i] - mu) / sigma
    return out


def mean_intra(points):
    """Mean distance over unordered within-class pairs."""
    n = len(points)
    if n < 2:
        raise ValueError("need at least two points")
    total = 0.0
    for i in range(n - 1):
        for j in range(i + 1, n):
            total += math.dist(points[i], points[j])
    return 2.0 * total / (n * (n - 1))


def mean_inter(a, b):
    """Mean distance over all cross pairs."""
    if not a or not b:
        raise ValueError("empty class")
    total = 0.0
    for p in a:
        for q in b:
            total += math.dist(p, q)
    return total / (len(a) * len(b))


def gdv(points, labels):
    """Direct evaluation of the discrimination value definition."""
    dim = len(points[0])
    rescaled = rescale_half_zscore(points)
    classes = list(dict.fromkeys(labels))
    if len(classes) < 2:
        raise ValueError("need at least two classes")
    by_class = {c: [rescaled[i] for i, l in enumerate(labels) if l == c] for c in classes}
    intra = [mean_intra(by_class[c]) for c in classes]
    inter = []
    for i in range(len(classes) - 1):
        for j in range(i + 1, len(classes)):
            inter.append(mean_inter(by_class[classes[i]], by_class[classes[j]]))
    n_cls = len(classes)
    mean_intra_term = sum(intra) / n_cls
    mean_inter_term = 2.0 * sum(inter) / (n_cls * (n_cls - 1))
    return (mean_intra_term - mean_inter_term) / math.sqrt(dim)


def outlier_flags(points, k=3.5):
    """median + k*MAD rule on distances to the class centroid."""
    n = len(points)
    dim = len(points[0])
    centroid = [sum(p[d] for p in points) / n for d in range(dim)]
    scores = [math.dist(p, centroid) for p in points]
    med = median(scores)
    mad = median(abs(s - med) for s in scores)
    threshold = med + k * mad
    return scores, [s > threshold for s in scores]
