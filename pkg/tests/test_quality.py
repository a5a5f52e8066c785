import math

import numpy as np
import pytest
from sklearn import metrics as sk_metrics

from joinrisk.errors import InsufficientClusters
from joinrisk.quality import (
    calinski_harabasz,
    clustering_quality,
    davies_bouldin,
    silhouette,
)

from oracles import calinski_harabasz_reference

# Two tight vertical pairs 10 apart.  Worked by hand:
#   centroids (0, .5) and (10, .5), overall mean (5, .5)
#   W = 4 * 0.25 = 1;  B = 2*25 + 2*25 = 100;  CH = (100/1)/(1/2) = 200
#   silhouette: a = 1, b = (10 + sqrt(101))/2 for every point
#   DB: s_i = 0.5 each, centroid gap 10 -> 0.1
FIXTURE_POINTS = [(0, 0), (0, 1), (10, 0), (10, 1)]
FIXTURE_LABELS = [0, 0, 1, 1]
HAND_CH = 200.0
HAND_SILHOUETTE = 1.0 - 2.0 / (10.0 + math.sqrt(101.0))
HAND_DB = 0.1


def test_hand_computed_fixture():
    scores = clustering_quality(FIXTURE_POINTS, FIXTURE_LABELS)
    assert scores["calinski_harabasz"] == pytest.approx(HAND_CH, abs=1e-9)
    assert scores["silhouette"] == pytest.approx(HAND_SILHOUETTE, abs=1e-9)
    assert scores["davies_bouldin"] == pytest.approx(HAND_DB, abs=1e-9)


def test_ch_grows_with_separation():
    doubled = [(0, 0), (0, 1), (20, 0), (20, 1)]
    assert calinski_harabasz(doubled, FIXTURE_LABELS) > HAND_CH
    assert calinski_harabasz(doubled, FIXTURE_LABELS) == pytest.approx(800.0)


def test_silhouette_approaches_one():
    previous = 0.0
    for gap in (10, 100, 1000):
        pts = [(0, 0), (0, 1), (gap, 0), (gap, 1)]
        s = silhouette(pts, FIXTURE_LABELS)
        assert s > previous
        previous = s
    assert previous > 0.999


def test_duplicated_points_match_bruteforce():
    pts = FIXTURE_POINTS + FIXTURE_POINTS
    labels = FIXTURE_LABELS + FIXTURE_LABELS
    assert calinski_harabasz(pts, labels) == pytest.approx(
        calinski_harabasz_reference(pts, labels), abs=1e-9
    )


def test_noise_excluded():
    pts = FIXTURE_POINTS + [(500.0, 500.0)]
    labels = FIXTURE_LABELS + [None]
    scores = clustering_quality(pts, labels)
    assert scores["calinski_harabasz"] == pytest.approx(HAND_CH, abs=1e-9)


def test_insufficient_clusters():
    with pytest.raises(InsufficientClusters):
        clustering_quality([(0, 0), (1, 1)], [0, 0])
    with pytest.raises(InsufficientClusters):
        clustering_quality([(0, 0), (1, 1)], [None, None])


def test_agrees_with_sklearn_on_random_labelings():
    rng = np.random.default_rng(7)
    for _ in range(10):
        n = int(rng.integers(10, 40))
        pts = rng.normal(size=(n, 2))
        labels = rng.integers(0, 3, size=n).tolist()
        if len(set(labels)) < 2:
            continue
        assert calinski_harabasz(pts, labels) == pytest.approx(
            sk_metrics.calinski_harabasz_score(pts, labels), rel=1e-9
        )
        assert silhouette(pts, labels) == pytest.approx(
            sk_metrics.silhouette_score(pts, labels), abs=1e-9
        )
        assert davies_bouldin(pts, labels) == pytest.approx(
            sk_metrics.davies_bouldin_score(pts, labels), rel=1e-9
        )
