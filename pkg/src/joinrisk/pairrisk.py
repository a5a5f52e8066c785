"""Joinability risk scoring for dataset pairs.

Risk for a pair is alpha * p + (c - p) over c shared attributes of
which p are privacy-related; with the calibrated alpha of 50, any pair
sharing a single privacy attribute outranks every pair that shares none
(up to 49 shared mundane attributes).  Shared attributes carry the
maximum of the two per-side Shannon entropies, which doubles as the
join-key suggestion signal.
"""

import math
from dataclasses import dataclass
from itertools import combinations

from .binning import bin_counts, equal_width_bins
from .corpus import Kind, canon_value
from .errors import InvalidCounts, NoSharedAttributes

DEFAULT_ALPHA = 50.0
RISK_NORMALIZATION_CAP = 182.0  # observed upper bound of typical pair scores
RISK_SCALE = 5.0
DEFAULT_KEY_SIZE = 2  # minimum suggested-key size when privacy attrs run out


def shannon_entropy(counts) -> float:
    """H = -sum p ln p over a frequency table (natural log, nats)."""
    total = sum(counts)
    if total == 0:
        return 0.0
    h = 0.0
    for c in counts:
        if c > 0:
            p = c / total
            h -= p * math.log(p)
    return h


def column_entropy(column) -> float:
    """Entropy of one column; numeric columns use the four-bin frequencies,
    categorical ones the case-insensitive category frequencies."""
    values = column.non_missing()
    if not values:
        return 0.0
    if column.kind is Kind.NUMERIC:
        counts = bin_counts(values, equal_width_bins(values)).values()
    else:
        freq = {}
        for v in values:
            key = canon_value(v)
            freq[key] = freq.get(key, 0) + 1
        counts = freq.values()
    return shannon_entropy(list(counts))


@dataclass(frozen=True)
class SharedAttribute:
    name: str
    entropy_a: float
    entropy_b: float
    is_privacy: bool

    @property
    def entropy(self) -> float:
        return max(self.entropy_a, self.entropy_b)


def shared_attributes(table_a, table_b, dictionary) -> list:
    """Attributes present in both tables, sorted by entropy descending."""
    names_b = set(table_b.meta.normalized_attributes)
    shared = []
    for name in table_a.meta.normalized_attributes:
        if name not in names_b:
            continue
        shared.append(
            SharedAttribute(
                name=name,
                entropy_a=column_entropy(table_a.column(name)),
                entropy_b=column_entropy(table_b.column(name)),
                is_privacy=name in dictionary,
            )
        )
    shared.sort(key=lambda s: (-s.entropy, s.name))
    return shared


def risk_score(p: int, c: int, alpha: float = DEFAULT_ALPHA) -> float:
    if p < 0 or c < 0 or p > c:
        raise InvalidCounts(f"invalid attribute counts p={p}, c={c}")
    return alpha * p + (c - p)


def normalize_risk(risk: float, cap: float = RISK_NORMALIZATION_CAP,
                   scale: float = RISK_SCALE) -> float:
    """Map a raw risk score onto the 0..5 display scale; scores past the
    cap clamp to the top."""
    if risk < 0:
        raise ValueError("risk must be nonnegative")
    return min(risk, cap) / cap * scale


def suggest_join_key(shared, dictionary,
                     key_size: int = DEFAULT_KEY_SIZE) -> list:
    """Join-key suggestion: every shared privacy attribute (dictionary
    order), topped up with the highest-entropy other attributes until the
    key has min(key_size, c) members."""
    if not shared:
        raise NoSharedAttributes("pair shares no attributes")
    privacy = sorted((s for s in shared if s.is_privacy),
                     key=lambda s: dictionary.order(s.name))
    key = [s.name for s in privacy]
    target = min(key_size, len(shared))
    if len(key) < target:
        fill = sorted((s for s in shared if not s.is_privacy),
                      key=lambda s: (-s.entropy, s.name))
        for s in fill:
            if len(key) >= target:
                break
            key.append(s.name)
    return key


@dataclass
class PairRisk:
    dataset_a: str
    dataset_b: str
    shared: list  # SharedAttribute, entropy-descending
    p: int
    c: int
    alpha: float
    risk: float
    normalized_risk: float
    suggested_key: list

    @property
    def mean_entropy(self) -> float:
        if not self.shared:
            return 0.0
        return sum(s.entropy for s in self.shared) / len(self.shared)

    def to_json(self, last_used_key=None) -> dict:
        return {
            "a": self.dataset_a,
            "b": self.dataset_b,
            "shared": [
                {"name": s.name, "H": s.entropy, "is_privacy": s.is_privacy}
                for s in self.shared
            ],
            "p": self.p,
            "c": self.c,
            "risk": self.risk,
            "normalized_risk": self.normalized_risk,
            "suggested_key": list(self.suggested_key),
            "last_used_key": last_used_key,
        }


def assess_pair(table_a, table_b, dictionary, alpha: float = DEFAULT_ALPHA,
                key_size: int = DEFAULT_KEY_SIZE) -> PairRisk:
    a, b = table_a, table_b
    if b.meta.id < a.meta.id:
        a, b = b, a
    shared = shared_attributes(a, b, dictionary)
    p = sum(1 for s in shared if s.is_privacy)
    c = len(shared)
    risk = risk_score(p, c, alpha)
    return PairRisk(
        dataset_a=a.meta.id,
        dataset_b=b.meta.id,
        shared=shared,
        p=p,
        c=c,
        alpha=alpha,
        risk=risk,
        normalized_risk=normalize_risk(risk),
        suggested_key=suggest_join_key(shared, dictionary, key_size)
        if shared else [],
    )


def rank_pairs(tables, dictionary, alpha: float = DEFAULT_ALPHA,
               key_size: int = DEFAULT_KEY_SIZE) -> list:
    """Assess all C(n,2) pairs, riskiest first; ties broken by mean
    shared-attribute entropy, then by the pair ids."""
    if len(tables) < 2:
        raise ValueError("need at least two datasets to form pairs")
    pairs = [
        assess_pair(a, b, dictionary, alpha, key_size)
        for a, b in combinations(tables, 2)
    ]
    pairs.sort(key=lambda pr: (-pr.risk, -pr.mean_entropy,
                               pr.dataset_a, pr.dataset_b))
    return pairs
