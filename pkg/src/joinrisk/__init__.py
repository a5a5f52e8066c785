"""joinrisk: joinability-risk inspection for open tabular datasets.

Groups datasets by schema similarity, scores pairs for disclosure risk,
executes joins to surface matching records, and serves the results to a
triage UI.
"""

__version__ = "0.1.0"

from .corpus import (
    DatasetMeta,
    DatasetTable,
    Granularity,
    PrivacyDictionary,
    build_table,
    filter_corpus,
    ingest_csv,
    load_corpus,
    normalize_attribute,
)
from .dbscan import ClusteringConfig, dbscan
from .disclosure import join, match_detail, nmi, numeric_bins, suggest_features
from .embedding import (
    DatasetVector,
    EmbeddingProvider,
    WeightConfig,
    dataset_vector,
    embed_token,
    pairwise_distances,
)
from .grouping import JoinableGroup, build_groups, frequency_bar_order
from .pairrisk import (
    PairRisk,
    normalize_risk,
    rank_pairs,
    risk_score,
    shared_attributes,
    suggest_join_key,
)
from .quality import clustering_quality
from .tsne import ProjectionConfig, project_2d
from .vulnerability import (
    RecordPoint,
    VulnerabilityProfile,
    build_profile,
    rank_vulnerable,
    record_points,
    relevance_score,
)

__all__ = [
    "DatasetMeta",
    "DatasetTable",
    "Granularity",
    "PrivacyDictionary",
    "build_table",
    "filter_corpus",
    "ingest_csv",
    "load_corpus",
    "normalize_attribute",
    "ClusteringConfig",
    "dbscan",
    "join",
    "match_detail",
    "nmi",
    "numeric_bins",
    "suggest_features",
    "DatasetVector",
    "EmbeddingProvider",
    "WeightConfig",
    "dataset_vector",
    "embed_token",
    "pairwise_distances",
    "JoinableGroup",
    "build_groups",
    "frequency_bar_order",
    "PairRisk",
    "normalize_risk",
    "rank_pairs",
    "risk_score",
    "shared_attributes",
    "suggest_join_key",
    "clustering_quality",
    "ProjectionConfig",
    "project_2d",
    "RecordPoint",
    "VulnerabilityProfile",
    "build_profile",
    "rank_vulnerable",
    "record_points",
    "relevance_score",
]
