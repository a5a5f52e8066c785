import numpy as np
import pytest

from joinrisk.dbscan import (
    ClusteringConfig,
    dbscan,
    dbscan_labels,
    sweep_eps_grid,
)

from oracles import dbscan_reference, same_partition


def blob(rng, center, n, spread=0.1):
    return rng.normal(loc=center, scale=spread, size=(n, 2))


def test_two_blobs():
    rng = np.random.default_rng(0)
    pts = np.vstack([blob(rng, (0, 0), 8), blob(rng, (10, 10), 8)])
    labels = dbscan_labels(pts, eps=1.0, min_pts=2)
    assert None not in labels
    assert len(set(labels)) == 2
    assert len({labels[i] for i in range(8)}) == 1
    assert len({labels[i] for i in range(8, 16)}) == 1


def test_single_point_is_noise():
    assert dbscan_labels([(0.0, 0.0)], eps=1.0, min_pts=2) == [None]


def test_identical_points_form_one_cluster():
    pts = [(2.0, 3.0)] * 6
    labels = dbscan_labels(pts, eps=0.5, min_pts=2)
    assert labels == [0] * 6


def test_isolated_point_between_blobs_is_noise():
    pts = [(0, 0), (0.1, 0), (50, 50), (10, 10), (10.1, 10)]
    labels = dbscan_labels(pts, eps=1.0, min_pts=2)
    assert labels[2] is None
    assert labels[0] == labels[1]
    assert labels[3] == labels[4]
    assert labels[0] != labels[3]


def test_matches_reference_on_random_sets():
    rng = np.random.default_rng(42)
    for _ in range(20):
        n = int(rng.integers(5, 60))
        pts = rng.uniform(0, 4, size=(n, 2))
        for eps in (0.3, 0.8, 1.5):
            for min_pts in (2, 4):
                mine = dbscan_labels(pts, eps, min_pts)
                ref = dbscan_reference(pts, eps, min_pts)
                assert same_partition(mine, ref)


def test_auto_sweep_finds_separation():
    rng = np.random.default_rng(1)
    pts = np.vstack([blob(rng, (0, 0), 6), blob(rng, (8, 8), 6)])
    labels = dbscan(pts, ClusteringConfig(min_pts=2, eps=None))
    non_noise = {l for l in labels if l is not None}
    assert len(non_noise) == 2


def test_sweep_grid_on_identical_points():
    assert sweep_eps_grid([(1.0, 1.0)] * 4) == [1.0]


def test_config_validation():
    with pytest.raises(ValueError):
        ClusteringConfig(min_pts=1)
    with pytest.raises(ValueError):
        ClusteringConfig(eps=0.0)
