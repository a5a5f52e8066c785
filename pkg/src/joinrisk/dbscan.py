"""Density clustering of the 2-D projection.

Classic DBSCAN with Euclidean distance and deterministic index-order
expansion: clusters are discovered from the lowest-index unclaimed core
point, and a border point reachable from several clusters keeps the
first label that reaches it.  min_pts counts the point itself and the
eps neighborhood is inclusive.
"""

from dataclasses import dataclass

import numpy as np

from . import quality


@dataclass
class ClusteringConfig:
    min_pts: int = 2
    eps: float = None  # None -> auto sweep over distance percentiles

    def __post_init__(self):
        if self.min_pts < 2:
            raise ValueError("min_pts must be >= 2")
        if self.eps is not None and self.eps <= 0:
            raise ValueError("explicit eps must be positive")


AUTO_SWEEP_PERCENTILES = tuple(range(10, 100, 10))


def _distance_matrix(points: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - points[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=2))


def _labels_for(adjacency: np.ndarray, core: np.ndarray) -> np.ndarray:
    n = adjacency.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    cid = 0
    for i in range(n):
        if labels[i] != -1 or not core[i]:
            continue
        labels[i] = cid
        frontier = [i]
        while frontier:
            reach = np.zeros(n, dtype=bool)
            for p in frontier:
                reach |= adjacency[p]
            newly = reach & (labels == -1)
            labels[newly] = cid
            frontier = list(np.nonzero(newly & core)[0])
        cid += 1
    return labels


def dbscan_labels(points, eps: float, min_pts: int = 2):
    """DBSCAN labeling for a fixed eps: cluster id per point, None = noise."""
    pts = np.asarray(points, dtype=np.float64)
    dist = _distance_matrix(pts)
    adjacency = dist <= eps
    core = adjacency.sum(axis=1) >= min_pts
    labels = _labels_for(adjacency, core)
    return [None if l < 0 else int(l) for l in labels]


def sweep_eps_grid(points) -> list:
    """Candidate eps values: deciles of the nonzero pairwise distances."""
    pts = np.asarray(points, dtype=np.float64)
    dist = _distance_matrix(pts)
    nonzero = dist[np.triu_indices_from(dist, k=1)]
    nonzero = nonzero[nonzero > 0]
    if nonzero.size == 0:
        return [1.0]  # all points identical; any positive eps works
    grid = sorted({float(np.percentile(nonzero, p))
                   for p in AUTO_SWEEP_PERCENTILES})
    return [g for g in grid if g > 0]


def dbscan(points, cfg: ClusteringConfig = None):
    """Cluster 2-D points; with no explicit eps, sweep the percentile
    grid and keep the labeling with the best Calinski-Harabasz score
    (ties resolved toward the smallest eps)."""
    cfg = cfg or ClusteringConfig()
    if cfg.eps is not None:
        return dbscan_labels(points, cfg.eps, cfg.min_pts)

    best = None
    for eps in sweep_eps_grid(points):
        labeling = dbscan_labels(points, eps, cfg.min_pts)
        clusters = {l for l in labeling if l is not None}
        clustered = sum(1 for l in labeling if l is not None)
        if len(clusters) >= 2:
            score = quality.calinski_harabasz(points, labeling)
        else:
            score = -np.inf
        # rank by CH, then by coverage, then prefer the smaller eps
        key = (score, clustered, -eps)
        if best is None or key > best[0]:
            best = (key, labeling)
    return best[1]
