"""Low-count record-point analysis of privacy attributes.

A record point (attribute, value, count) summarizes one category of one
privacy attribute.  Points with very few records are the vulnerable
ones: a handful of records for "race=hawaiian" can single a person out
once another dataset is joined on.  Datasets are ranked by how many
vulnerable points they carry and how extreme the worst one is.
"""

import math
from dataclasses import dataclass, field

from .binning import bin_counts, equal_width_bins
from .corpus import Kind, canon_value
from .errors import EmptyVulnerableSet, NoPrivacyAttributes

VULNERABLE_THRESHOLD = 4  # counts at or below this are vulnerable


@dataclass(frozen=True)
class RecordPoint:
    a: str  # normalized attribute name
    v: str  # category value or numeric bin label
    c: int  # record count

    def to_json(self):
        return {"a": self.a, "v": self.v, "c": self.c}


def _column_points(column) -> list:
    if column.kind is Kind.NUMERIC:
        values = column.non_missing()
        if not values:
            return []
        scheme = equal_width_bins(values)
        return [RecordPoint(column.name, label, count)
                for label, count in bin_counts(values, scheme).items()]
    counts = {}
    for v in column.non_missing():
        key = canon_value(v)
        counts[key] = counts.get(key, 0) + 1
    return [RecordPoint(column.name, v, c) for v, c in sorted(counts.items())]


def record_points(table, dictionary) -> list:
    """Record points for every privacy-dictionary attribute in the table."""
    points = []
    found = False
    for column in table.columns:
        if column.name not in dictionary:
            continue
        found = True
        points.extend(_column_points(column))
    if not found:
        raise NoPrivacyAttributes(
            f"dataset {table.meta.id!r} has no privacy-dictionary attributes"
        )
    return points


@dataclass
class VulnerabilityProfile:
    dataset_id: str
    record_points: list
    vulnerable_points: list = field(default=None)
    min_count: float = math.inf  # smallest vulnerable count; inf when none

    def to_json(self):
        return {
            "dataset_id": self.dataset_id,
            "record_points": [p.to_json() for p in self.record_points],
            "vulnerable": [p.to_json() for p in self.vulnerable_points],
            "min_count": None if math.isinf(self.min_count) else self.min_count,
        }


def build_profile(table, dictionary,
                  threshold: int = VULNERABLE_THRESHOLD) -> VulnerabilityProfile:
    points = record_points(table, dictionary)
    vulnerable = [p for p in points if p.c <= threshold]
    return VulnerabilityProfile(
        dataset_id=table.meta.id,
        record_points=points,
        vulnerable_points=vulnerable,
        min_count=min((p.c for p in vulnerable), default=math.inf),
    )


def rank_vulnerable(profiles) -> list:
    """Most vulnerable first: more vulnerable points, then the rarest
    worst point, then dataset id for a stable order."""
    return sorted(
        profiles,
        key=lambda p: (-len(p.vulnerable_points), p.min_count, p.dataset_id),
    )


def relevance_score(vulnerable_points, table, dictionary):
    """Fraction of A's vulnerable record points present in dataset B.

    Matching is on (attribute, value) only, case-insensitive; counts are
    ignored.  Returns (score, matched points).  A table without privacy
    attributes simply matches nothing.
    """
    if not vulnerable_points:
        raise EmptyVulnerableSet("no vulnerable record points to look for")
    try:
        other = record_points(table, dictionary)
    except NoPrivacyAttributes:
        other = []
    available = {(p.a, canon_value(str(p.v))) for p in other}
    matched = [p for p in vulnerable_points
               if (p.a, canon_value(str(p.v))) in available]
    return len(matched) / len(vulnerable_points), matched
