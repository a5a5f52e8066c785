"""Joinable-group discovery: project, cluster, score, rank.

Runs the weighted-embedding pipeline once per candidate privacy weight,
keeps the candidate whose clustering scores the best Calinski-Harabasz
value, and turns the winning labeling into ranked groups with the
attribute statistics the triage views need (word-cloud frequencies,
privacy-first frequency bars, overlap markers).
"""

from dataclasses import dataclass, field

import numpy as np

from .dbscan import ClusteringConfig, dbscan
from .embedding import (
    DEFAULT_WEIGHT_CANDIDATES,
    EmbeddingProvider,
    WeightConfig,
    dataset_vector,
    pairwise_distances,
)
from .quality import clustering_quality
from .tsne import ProjectionConfig, project_2d

# 2-D points closer than this render as one marker with a multiplicity.
OVERLAP_EPS = 1e-6


@dataclass
class JoinableGroup:
    group_id: int
    members: tuple  # dataset ids, input order
    coords: dict  # dataset id -> (x, y)
    attribute_frequencies: dict  # attr -> member count, attrs in >= 2 members
    privacy_frequencies: dict  # dictionary attr -> member count (>= 1)
    quality: dict = None  # scores of the parent clustering, None if unavailable
    rank: int = 0
    markers: list = field(default_factory=list)


@dataclass
class GroupingResult:
    weight_chosen: float
    quality: dict  # None when no candidate produced >= 2 clusters
    groups: list  # JoinableGroup, rank order
    noise: dict  # dataset id -> (x, y) for datasets in no group
    dictionary_version: int = 0

    def to_json(self) -> dict:
        return {
            "weight_chosen": self.weight_chosen,
            "quality": self.quality,
            "dictionary_version": self.dictionary_version,
            "groups": [
                {
                    "id": g.group_id,
                    "members": list(g.members),
                    "coords": {m: list(xy) for m, xy in g.coords.items()},
                    "attribute_frequencies": g.attribute_frequencies,
                    "privacy_frequencies": g.privacy_frequencies,
                    "rank": g.rank,
                    "markers": g.markers,
                }
                for g in self.groups
            ],
            "noise": {m: list(xy) for m, xy in self.noise.items()},
        }


def overlap_markers(coords: dict) -> list:
    """Merge coincident 2-D points into single markers with a count."""
    ids = list(coords)
    parent = list(range(len(ids)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            a, b = coords[ids[i]], coords[ids[j]]
            if np.hypot(a[0] - b[0], a[1] - b[1]) < OVERLAP_EPS:
                parent[find(j)] = find(i)
    buckets = {}
    for i, did in enumerate(ids):
        buckets.setdefault(find(i), []).append(did)
    markers = []
    for root, members in sorted(buckets.items()):
        x, y = coords[ids[root]]
        markers.append(
            {"x": float(x), "y": float(y), "count": len(members),
             "members": members}
        )
    return markers


def _attribute_stats(metas, dictionary):
    counts = {}
    for meta in metas:
        for attr in set(meta.normalized_attributes):
            counts[attr] = counts.get(attr, 0) + 1
    # word-cloud rule: attributes shown only when >= 2 members share them
    shared = {a: c for a, c in sorted(counts.items(),
                                      key=lambda kv: (-kv[1], kv[0]))
              if c >= 2}
    privacy = {a: counts[a] for a in dictionary if a in counts}
    return shared, privacy


def frequency_bar_order(group: JoinableGroup, dictionary) -> list:
    """(attribute, count) pairs in display order: every present privacy
    attribute first (count descending), then the shared non-privacy
    attributes by count."""
    privacy = sorted(group.privacy_frequencies.items(),
                     key=lambda kv: (-kv[1], kv[0]))
    rest = [
        (a, c)
        for a, c in sorted(group.attribute_frequencies.items(),
                           key=lambda kv: (-kv[1], kv[0]))
        if a not in dictionary
    ]
    return privacy + rest


def _privacy_coverage(group: JoinableGroup) -> int:
    """Dictionary attributes present in at least half the members."""
    size = len(group.members)
    return sum(1 for c in group.privacy_frequencies.values() if 2 * c >= size)


def _rank_groups(groups):
    groups.sort(key=lambda g: (-_privacy_coverage(g), -len(g.members),
                               g.group_id))
    for position, g in enumerate(groups, start=1):
        g.rank = position
    return groups


def _project_with_duplicates(vectors, projection_cfg, cancel):
    """Project dataset vectors, keeping coincident schemas coincident.

    Datasets with byte-identical vectors are indistinguishable, so they
    are projected once and share the representative's coordinates
    exactly; that is what lets the UI draw one marker with a
    multiplicity instead of a smear of nearly-overlapping dots.  With
    fewer than three distinct vectors there is nothing for the
    projection to optimize, so representatives go on a fixed line.
    """
    full = np.stack([v.full for v in vectors])
    rep_of = {}
    unique_indices = []
    rep_index = []
    for i in range(len(vectors)):
        key = full[i].tobytes()
        if key not in rep_of:
            rep_of[key] = len(unique_indices)
            unique_indices.append(i)
        rep_index.append(rep_of[key])
    n_unique = len(unique_indices)
    if n_unique == 1:
        return np.zeros((len(vectors), 2))
    if n_unique == 2:
        spots = np.array([[-0.5, 0.0], [0.5, 0.0]])
        return spots[rep_index]
    unique_coords = project_2d(
        pairwise_distances([vectors[i] for i in unique_indices]),
        projection_cfg, cancel=cancel,
    )
    return unique_coords[rep_index]


def build_groups(
    metas,
    dictionary,
    provider: EmbeddingProvider = None,
    weight_candidates=DEFAULT_WEIGHT_CANDIDATES,
    projection_cfg: ProjectionConfig = None,
    clustering_cfg: ClusteringConfig = None,
    cancel=None,
) -> GroupingResult:
    """Group a corpus by schema similarity, privacy-weighted.

    Needs at least 3 datasets.  When no candidate weight produces two or
    more clusters, every dataset lands in a single group whose quality
    is marked unavailable.
    """
    metas = [getattr(m, "meta", m) for m in metas]
    if len(metas) < 3:
        raise ValueError("grouping needs at least 3 datasets")
    provider = provider or EmbeddingProvider()
    projection_cfg = projection_cfg or ProjectionConfig()
    clustering_cfg = clustering_cfg or ClusteringConfig()

    runs = []
    for x in weight_candidates:
        cfg = WeightConfig(x=x, dictionary=dictionary,
                           candidates=tuple(weight_candidates))
        vectors = [dataset_vector(m, provider, cfg) for m in metas]
        coords = _project_with_duplicates(vectors, projection_cfg, cancel)
        labeling = dbscan(coords, clustering_cfg)
        n_clusters = len({l for l in labeling if l is not None})
        scores = (clustering_quality(coords, labeling)
                  if n_clusters >= 2 else None)
        runs.append((x, coords, labeling, scores))

    scored = [r for r in runs if r[3] is not None]
    if scored:
        weight, coords, labeling, scores = max(
            scored, key=lambda r: r[3]["calinski_harabasz"]
        )
    else:
        # no weight separated anything; fall back to one group of all
        weight, coords, labeling, scores = runs[0]
        labeling = [0] * len(metas)

    by_cluster = {}
    noise = {}
    for i, label in enumerate(labeling):
        if label is None:
            noise[metas[i].id] = (float(coords[i, 0]), float(coords[i, 1]))
        else:
            by_cluster.setdefault(label, []).append(i)

    groups = []
    for cid in sorted(by_cluster):
        idx = by_cluster[cid]
        member_metas = [metas[i] for i in idx]
        member_coords = {
            metas[i].id: (float(coords[i, 0]), float(coords[i, 1]))
            for i in idx
        }
        shared, privacy = _attribute_stats(member_metas, dictionary)
        groups.append(
            JoinableGroup(
                group_id=int(cid),
                members=tuple(m.id for m in member_metas),
                coords=member_coords,
                attribute_frequencies=shared,
                privacy_frequencies=privacy,
                quality=scores,
                markers=overlap_markers(member_coords),
            )
        )
    _rank_groups(groups)
    return GroupingResult(
        weight_chosen=float(weight),
        quality=scores,
        groups=groups,
        noise=noise,
        dictionary_version=dictionary.version,
    )
