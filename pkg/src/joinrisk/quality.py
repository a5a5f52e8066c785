"""Internal clustering validity indices.

All three scores ignore noise points.  Computed from scratch on the 2-D
coordinates so the selection logic has no hidden library defaults:

  Calinski-Harabasz = [trace(B)/(k-1)] / [trace(W)/(m-k)] over m
  clustered points and k clusters, where B and W are the between- and
  within-cluster dispersions about the centroids.

  Silhouette = mean over points of (b-a)/max(a,b), a = mean distance to
  own cluster, b = lowest mean distance to another cluster.

  Davies-Bouldin = mean over clusters of the worst (s_i+s_j)/d(c_i,c_j),
  s = mean member-to-centroid distance.
"""

import numpy as np

from .errors import InsufficientClusters


def _split(points, labeling):
    pts = np.asarray(points, dtype=np.float64)
    mask = np.array([l is not None for l in labeling], dtype=bool)
    kept = pts[mask]
    labels = [l for l in labeling if l is not None]
    order = sorted(set(labels))
    groups = [np.array([i for i, l in enumerate(labels) if l == c])
              for c in order]
    return kept, groups


def _require_clusters(groups, what):
    if len(groups) < 2:
        raise InsufficientClusters(
            f"{what} needs >= 2 non-noise clusters, got {len(groups)}"
        )


def calinski_harabasz(points, labeling) -> float:
    kept, groups = _split(points, labeling)
    _require_clusters(groups, "calinski_harabasz")
    m, k = len(kept), len(groups)
    overall = kept.mean(axis=0)
    between = 0.0
    within = 0.0
    for idx in groups:
        members = kept[idx]
        centroid = members.mean(axis=0)
        between += len(members) * float(((centroid - overall) ** 2).sum())
        within += float(((members - centroid) ** 2).sum())
    if m == k or within == 0.0:
        return np.inf
    return (between / (k - 1)) / (within / (m - k))


def silhouette(points, labeling) -> float:
    kept, groups = _split(points, labeling)
    _require_clusters(groups, "silhouette")
    diff = kept[:, None, :] - kept[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=2))
    scores = np.zeros(len(kept))
    owner = np.empty(len(kept), dtype=int)
    for g, idx in enumerate(groups):
        owner[idx] = g
    for i in range(len(kept)):
        own = groups[owner[i]]
        if len(own) == 1:
            scores[i] = 0.0  # singleton convention
            continue
        a = dist[i, own].sum() / (len(own) - 1)
        b = min(dist[i, idx].mean()
                for g, idx in enumerate(groups) if g != owner[i])
        denom = max(a, b)
        scores[i] = 0.0 if denom == 0.0 else (b - a) / denom
    return float(scores.mean())


def davies_bouldin(points, labeling) -> float:
    kept, groups = _split(points, labeling)
    _require_clusters(groups, "davies_bouldin")
    centroids = np.array([kept[idx].mean(axis=0) for idx in groups])
    spreads = np.array([
        float(np.sqrt(((kept[idx] - centroids[g]) ** 2).sum(axis=1)).mean())
        for g, idx in enumerate(groups)
    ])
    k = len(groups)
    worst = np.zeros(k)
    for i in range(k):
        ratios = []
        for j in range(k):
            if i == j:
                continue
            gap = float(np.sqrt(((centroids[i] - centroids[j]) ** 2).sum()))
            ratios.append(np.inf if gap == 0.0 else (spreads[i] + spreads[j]) / gap)
        worst[i] = max(ratios)
    return float(worst.mean())


def clustering_quality(points, labeling) -> dict:
    """All three indices for one labeling (noise excluded)."""
    return {
        "calinski_harabasz": calinski_harabasz(points, labeling),
        "silhouette": silhouette(points, labeling),
        "davies_bouldin": davies_bouldin(points, labeling),
    }
