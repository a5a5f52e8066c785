"""Join execution and disclosure evidence.

Joins a dataset pair on a chosen key and materializes everything the
evaluation view needs: the matched record pairs (duplicates included;
blank key cells are excluded up front because they only manufacture
spurious matches), the parallel-sets stacks and ribbons over the key
attributes, and normalized-mutual-information suggestions for growing
the key.

Numeric key attributes compare by shared four-bin label (bins spanning
both columns' ranges) so join equality lines up with the binned
visualization; raw float equality is available for id-like columns.
"""

import math
from dataclasses import dataclass

from .binning import BinScheme, equal_width_bins
from .corpus import Kind, canon_value
from .errors import EmptyKey, InvalidKey, TooFewMatches

MISSING_LABEL = "(missing)"
NMI_MODES = ("sqrt", "min", "max", "mean")
DEFAULT_NMI_MODE = "sqrt"
SUGGESTION_LIMIT = 5


def numeric_bins(values_a, values_b, bin_count: int = 4) -> BinScheme:
    """Equal-width bins spanning the union of both value ranges."""
    return equal_width_bins(list(values_a) + list(values_b), bin_count)


@dataclass(frozen=True)
class MatchedRecord:
    key_values: tuple
    row_index_a: int
    row_index_b: int


@dataclass
class JoinOutcome:
    dataset_a: str
    dataset_b: str
    key: list
    matches: list  # MatchedRecord, ordered by (row_a, row_b)
    match_count: int
    distinct_key_count: int
    stacks: dict  # key attr -> [{"label", "count"}, ...]
    ribbons: list  # per adjacent attr pair: [{"from","to","count","match_indices"}]

    def to_json(self) -> dict:
        return {
            "a": self.dataset_a,
            "b": self.dataset_b,
            "key": list(self.key),
            "match_count": self.match_count,
            "distinct_key_count": self.distinct_key_count,
            "matches": [
                {
                    "key_values": list(m.key_values),
                    "row_index_a": m.row_index_a,
                    "row_index_b": m.row_index_b,
                }
                for m in self.matches
            ],
            "stacks": self.stacks,
            "ribbons": self.ribbons,
        }


def _key_labels(table, key, schemes, numeric_mode):
    """Per-row canonical label for each key attribute; None = unusable."""
    labels = []
    for name in key:
        col = table.column(name)
        scheme = schemes.get(name)
        row_labels = []
        for v in col.values:
            if v is None:
                row_labels.append(None)
            elif col.kind is Kind.NUMERIC:
                if scheme is not None and numeric_mode == "binned":
                    row_labels.append(scheme.assign(v))
                else:
                    row_labels.append(f"{v:g}")
            else:
                row_labels.append(canon_value(v))
        labels.append(row_labels)
    return labels


def join(table_a, table_b, key, numeric_mode: str = "binned",
         cancel=None) -> JoinOutcome:
    """Inner equi-join of two tables on a shared-attribute key.

    Rows missing any key value are dropped from both sides; every
    duplicate combination appears in the output (hash-bucketed, but the
    semantics are those of the nested-loop join).
    """
    key = list(key)
    if not key:
        raise EmptyKey("join key is empty")
    for name in key:
        if not table_a.has_column(name) or not table_b.has_column(name):
            raise InvalidKey(f"attribute {name!r} is not shared by both tables")
    if len(set(key)) != len(key):
        raise InvalidKey("join key repeats an attribute")

    schemes = {}
    for name in key:
        col_a, col_b = table_a.column(name), table_b.column(name)
        if (numeric_mode == "binned" and col_a.kind is Kind.NUMERIC
                and col_b.kind is Kind.NUMERIC):
            schemes[name] = numeric_bins(col_a.non_missing(),
                                         col_b.non_missing())

    labels_a = _key_labels(table_a, key, schemes, numeric_mode)
    labels_b = _key_labels(table_b, key, schemes, numeric_mode)

    buckets = {}
    for i in range(table_a.meta.row_count):
        tup = tuple(lab[i] for lab in labels_a)
        if any(v is None for v in tup):
            continue
        buckets.setdefault(tup, []).append(i)

    matches = []
    for j in range(table_b.meta.row_count):
        if cancel is not None:
            cancel.raise_if_cancelled("join")
        tup = tuple(lab[j] for lab in labels_b)
        if any(v is None for v in tup):
            continue
        for i in buckets.get(tup, ()):
            matches.append(MatchedRecord(tup, i, j))
    matches.sort(key=lambda m: (m.row_index_a, m.row_index_b))

    stacks = {}
    for pos, name in enumerate(key):
        counts = {}
        for m in matches:
            label = m.key_values[pos]
            counts[label] = counts.get(label, 0) + 1
        scheme = schemes.get(name)
        if scheme is not None:
            ordered = [l for l in scheme.labels if l in counts]
        else:
            ordered = sorted(counts, key=lambda l: (-counts[l], l))
        stacks[name] = [{"label": l, "count": counts[l]} for l in ordered]

    ribbons = []
    for pos in range(len(key) - 1):
        flows = {}
        for idx, m in enumerate(matches):
            pair = (m.key_values[pos], m.key_values[pos + 1])
            flows.setdefault(pair, []).append(idx)
        ribbons.append([
            {"from": a, "to": b, "count": len(idx), "match_indices": idx}
            for (a, b), idx in sorted(flows.items(),
                                      key=lambda kv: (-len(kv[1]), kv[0]))
        ])

    return JoinOutcome(
        dataset_a=table_a.meta.id,
        dataset_b=table_b.meta.id,
        key=key,
        matches=matches,
        match_count=len(matches),
        distinct_key_count=len({m.key_values for m in matches}),
        stacks=stacks,
        ribbons=ribbons,
    )


def match_detail(outcome: JoinOutcome, table_a, table_b, index: int) -> dict:
    """Full source rows behind one match (the record-detail popup)."""
    if index < 0 or index >= outcome.match_count:
        raise IndexError(f"match index {index} out of range")
    m = outcome.matches[index]
    return {
        "key_values": list(m.key_values),
        "row_index_a": m.row_index_a,
        "row_index_b": m.row_index_b,
        "row_a": table_a.row(m.row_index_a),
        "row_b": table_b.row(m.row_index_b),
    }


def _entropy_of(labels) -> float:
    counts = {}
    for l in labels:
        counts[l] = counts.get(l, 0) + 1
    total = len(labels)
    h = 0.0
    for c in counts.values():
        p = c / total
        h -= p * math.log(p)
    return h


def nmi(x_labels, y_labels, mode: str = DEFAULT_NMI_MODE) -> float:
    """Normalized mutual information between two discrete columns.

    I(X;Y) = sum p(x,y) ln[p(x,y)/(p(x)p(y))], normalized by the chosen
    combination of H(X) and H(Y); a constant column on either side gives
    0 by definition.
    """
    if len(x_labels) != len(y_labels):
        raise ValueError("columns must have equal length")
    n = len(x_labels)
    if n < 2:
        raise TooFewMatches("mutual information needs at least 2 records")
    if mode not in NMI_MODES:
        raise ValueError(f"unknown NMI mode {mode!r}")

    joint = {}
    px = {}
    py = {}
    for x, y in zip(x_labels, y_labels):
        joint[(x, y)] = joint.get((x, y), 0) + 1
        px[x] = px.get(x, 0) + 1
        py[y] = py.get(y, 0) + 1
    info = 0.0
    for (x, y), c in joint.items():
        pxy = c / n
        info += pxy * math.log(pxy * n * n / (px[x] * py[y]))
    info = max(info, 0.0)  # guard float round-off on independent inputs

    hx = _entropy_of(x_labels)
    hy = _entropy_of(y_labels)
    if hx == 0.0 or hy == 0.0:
        return 0.0
    denom = {
        "sqrt": math.sqrt(hx * hy),
        "min": min(hx, hy),
        "max": max(hx, hy),
        "mean": (hx + hy) / 2.0,
    }[mode]
    return info / denom


@dataclass
class FeatureSuggestion:
    attribute: str
    source: str  # "a" | "b"
    nmi: float
    distribution: list  # [{"label", "count"}, ...]

    def to_json(self) -> dict:
        return {
            "attribute": self.attribute,
            "source": self.source,
            "nmi": self.nmi,
            "distribution": self.distribution,
        }


def _matched_labels(column, row_indices):
    """Discretized values of a column over the matched rows; missing
    cells become their own category so row pairing is preserved."""
    raw = [column.values[i] for i in row_indices]
    if column.kind is Kind.NUMERIC:
        finite = [v for v in raw if v is not None]
        if finite:
            scheme = equal_width_bins(finite)
            return [MISSING_LABEL if v is None else scheme.assign(v)
                    for v in raw], scheme
        return [MISSING_LABEL] * len(raw), None
    return [MISSING_LABEL if v is None else canon_value(v)
            for v in raw], None


def _distribution(labels, scheme) -> list:
    counts = {}
    for l in labels:
        counts[l] = counts.get(l, 0) + 1
    if scheme is not None:
        ordered = [l for l in scheme.labels if l in counts]
        if MISSING_LABEL in counts:
            ordered.append(MISSING_LABEL)
    else:
        ordered = sorted(counts, key=lambda l: (-counts[l], l))
    return [{"label": l, "count": counts[l]} for l in ordered]


def suggest_features(outcome: JoinOutcome, table_a, table_b,
                     mode: str = DEFAULT_NMI_MODE,
                     limit: int = SUGGESTION_LIMIT) -> dict:
    """Top non-key attributes most informative about the join key.

    For each side, every non-key attribute is scored by NMI against the
    concatenated key tuple over the matched rows; the strongest ``limit``
    per side come back with their matched-row distributions.
    """
    if outcome.match_count < 2:
        raise TooFewMatches(
            f"need at least 2 matches, got {outcome.match_count}"
        )
    key_tuples = [m.key_values for m in outcome.matches]

    def side(table, indices, tag):
        suggestions = []
        for col in table.columns:
            if col.name in outcome.key:
                continue
            labels, scheme = _matched_labels(col, indices)
            suggestions.append(
                FeatureSuggestion(
                    attribute=col.name,
                    source=tag,
                    nmi=nmi(labels, key_tuples, mode),
                    distribution=_distribution(labels, scheme),
                )
            )
        suggestions.sort(key=lambda s: (-s.nmi, s.attribute))
        return suggestions[:limit]

    rows_a = [m.row_index_a for m in outcome.matches]
    rows_b = [m.row_index_b for m in outcome.matches]
    return {
        "from_a": side(table_a, rows_a, "a"),
        "from_b": side(table_b, rows_b, "b"),
    }
