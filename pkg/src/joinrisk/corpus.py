"""Dataset corpus: metadata, typed tables, ingestion and filtering.

Open-portal column names have no standard nomenclature, so every
attribute name is normalized before any cross-dataset comparison.  A
corpus is built once and then treated as an immutable snapshot; all
downstream analysis reads snapshots.
"""

import csv
import json
import math
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import (
    CapExceeded,
    DuplicateAttributeName,
    EmptyTable,
    InvalidAttributeName,
    ParseError,
)

DEFAULT_RECORD_CAP = 100_000

# Tokens treated as absent values (checked case-insensitively after trimming).
MISSING_TOKENS = frozenset({"", "na", "n/a", "null"})

# Share of non-missing cells that must parse as finite numbers for a
# column to count as numeric; tolerates sentinel strings.
NUMERIC_KIND_THRESHOLD = 0.9

_CAMEL_SPLIT = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")
_NON_ALNUM = re.compile(r"[^0-9a-z]+")


def normalize_attribute(raw: str) -> str:
    """Canonical form of a column name: lowercase, snake_case.

    camelCase boundaries become separators, runs of non-alphanumeric
    characters collapse to a single underscore, and leading/trailing
    underscores are stripped.  Idempotent.
    """
    s = _CAMEL_SPLIT.sub("_", raw)
    s = _NON_ALNUM.sub("_", s.lower()).strip("_")
    if not s:
        raise InvalidAttributeName(f"attribute name {raw!r} normalizes to nothing")
    return s


def attribute_tokens(normalized: str):
    """Word tokens of a normalized attribute name."""
    return [t for t in normalized.split("_") if t]


def canon_value(raw: str) -> str:
    """Canonical categorical value used for matching: trimmed, lowercase."""
    return raw.strip().lower()


def is_missing(raw: str) -> bool:
    return canon_value(raw) in MISSING_TOKENS


def parse_number(raw: str):
    """Finite float value of a cell, or None when it does not parse."""
    try:
        v = float(raw.strip())
    except (TypeError, ValueError):
        return None
    return v if math.isfinite(v) else None


class Granularity(str, Enum):
    INDIVIDUAL = "individual"
    AGGREGATED = "aggregated"


class Kind(str, Enum):
    CATEGORICAL = "categorical"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class Source:
    kind: str  # "local" | "remote"
    location: str

    @staticmethod
    def local(path) -> "Source":
        return Source("local", str(path))

    @staticmethod
    def remote(permalink: str) -> "Source":
        return Source("remote", permalink)


@dataclass(frozen=True)
class DatasetMeta:
    id: str
    name: str
    portal: str
    tags: frozenset
    granularity: Granularity
    attribute_names: tuple
    row_count: int
    source: Source
    truncated: bool = False

    def __post_init__(self):
        if not self.attribute_names:
            raise EmptyTable(f"dataset {self.id!r} has no attributes")
        if self.row_count < 0:
            raise ValueError("row_count must be nonnegative")
        normalized = [normalize_attribute(a) for a in self.attribute_names]
        seen = set()
        for raw, norm in zip(self.attribute_names, normalized):
            if norm in seen:
                raise DuplicateAttributeName(
                    f"dataset {self.id!r}: {raw!r} duplicates attribute {norm!r}"
                )
            seen.add(norm)
        object.__setattr__(self, "_normalized", tuple(normalized))

    @property
    def normalized_attributes(self) -> tuple:
        return self._normalized


@dataclass(frozen=True)
class Column:
    """One typed column.  Values are trimmed-original strings for
    categorical cells, floats for numeric cells, and None for missing.

    In a numeric column any non-missing cell that fails to parse is
    coerced to None so that frequency counts over the column are exact.
    """

    name: str  # normalized
    kind: Kind
    values: tuple

    def non_missing(self):
        return [v for v in self.values if v is not None]


@dataclass(frozen=True)
class DatasetTable:
    meta: DatasetMeta
    columns: tuple

    def __post_init__(self):
        for col in self.columns:
            if len(col.values) != self.meta.row_count:
                raise ValueError(
                    f"column {col.name!r} length {len(col.values)} != "
                    f"row_count {self.meta.row_count}"
                )

    def column(self, normalized_name: str) -> Column:
        for col in self.columns:
            if col.name == normalized_name:
                return col
        raise KeyError(normalized_name)

    def has_column(self, normalized_name: str) -> bool:
        return any(col.name == normalized_name for col in self.columns)

    def row(self, index: int) -> dict:
        return {col.name: col.values[index] for col in self.columns}


def infer_kind(raw_values) -> Kind:
    """NUMERIC iff >= 90% of non-missing cells parse as finite numbers."""
    non_missing = [v for v in raw_values if not is_missing(v)]
    if not non_missing:
        return Kind.CATEGORICAL
    numeric = sum(1 for v in non_missing if parse_number(v) is not None)
    if numeric / len(non_missing) >= NUMERIC_KIND_THRESHOLD:
        return Kind.NUMERIC
    return Kind.CATEGORICAL


def _build_column(name: str, raw_values) -> Column:
    kind = infer_kind(raw_values)
    if kind is Kind.NUMERIC:
        values = tuple(
            None if is_missing(v) else parse_number(v) for v in raw_values
        )
    else:
        values = tuple(None if is_missing(v) else v.strip() for v in raw_values)
    return Column(name=name, kind=kind, values=values)


def build_table(
    header,
    rows,
    *,
    id,
    name=None,
    portal="",
    tags=(),
    granularity=Granularity.INDIVIDUAL,
    source=None,
    record_cap=DEFAULT_RECORD_CAP,
    truncate=False,
) -> DatasetTable:
    """Assemble a DatasetTable from a header and string rows.

    Enforces the record cap: more than ``record_cap`` rows either raises
    CapExceeded or, with truncate=True, keeps the first ``record_cap``
    rows and flags the metadata.
    """
    header = list(header)
    if not header:
        raise EmptyTable(f"dataset {id!r} has no columns")
    rows = list(rows)
    if not rows:
        raise EmptyTable(f"dataset {id!r} has no data rows")
    truncated = False
    if len(rows) > record_cap:
        if not truncate:
            raise CapExceeded(
                f"dataset {id!r} has {len(rows)} rows, cap is {record_cap}"
            )
        rows = rows[:record_cap]
        truncated = True
    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise ParseError(
                f"dataset {id!r}: row {i + 1} has {len(row)} fields, "
                f"expected {len(header)}"
            )
    meta = DatasetMeta(
        id=str(id),
        name=name if name is not None else str(id),
        portal=portal,
        tags=frozenset(t.lower() for t in tags),
        granularity=Granularity(granularity),
        attribute_names=tuple(header),
        row_count=len(rows),
        source=source or Source.local(""),
        truncated=truncated,
    )
    columns = tuple(
        _build_column(norm, [row[i] for row in rows])
        for i, norm in enumerate(meta.normalized_attributes)
    )
    return DatasetTable(meta=meta, columns=columns)


def ingest_csv(path, meta_overrides=None, *, record_cap=DEFAULT_RECORD_CAP,
               truncate=False) -> DatasetTable:
    """Load an RFC-4180 CSV (UTF-8, header row) into a typed table."""
    path = Path(path)
    overrides = dict(meta_overrides or {})
    try:
        with open(path, newline="", encoding="utf-8") as f:
            reader = csv.reader(f)
            try:
                header = next(reader)
            except StopIteration:
                raise EmptyTable(f"{path} is empty")
            rows = [row for row in reader if row]  # blank lines are not records
    except UnicodeDecodeError as e:
        raise ParseError(f"{path} is not valid UTF-8: {e}") from e
    except csv.Error as e:
        raise ParseError(f"{path}: {e}") from e
    return build_table(
        header,
        rows,
        id=overrides.get("id", path.stem),
        name=overrides.get("name"),
        portal=overrides.get("portal", ""),
        tags=overrides.get("tags", ()),
        granularity=overrides.get("granularity", Granularity.INDIVIDUAL),
        source=Source.local(path),
        record_cap=record_cap,
        truncate=truncate,
    )


def filter_corpus(corpus, tags=None, portals=None, granularity=None):
    """Metadata filter: ANY-of within a facet, ALL-of across facets.

    An empty or None facet imposes no constraint.  Works on DatasetMeta
    or on objects exposing a ``meta`` attribute.
    """
    tags = {t.lower() for t in tags} if tags else None
    portals = set(portals) if portals else None
    if granularity is not None:
        granularity = Granularity(granularity)
    out = []
    for entry in corpus:
        meta = getattr(entry, "meta", entry)
        if tags is not None and not (meta.tags & tags):
            continue
        if portals is not None and meta.portal not in portals:
            continue
        if granularity is not None and meta.granularity is not granularity:
            continue
        out.append(entry)
    return out


# Quasi-identifier dictionary seeded from arrest/health dataset schemas.
DEFAULT_PRIVACY_ATTRIBUTES = (
    "age",
    "gender",
    "race",
    "age_group",
    "vic_age_group",
    "susp_age_group",
    "perp_age_group",
    "vict_age",
    "age_1",
    "age_at_release",
    "admission_age",
    "age_class",
    "subject_age",
    "patient_age",
    "age_range",
    "offender_age",
    "officer_age",
    "age_at_arrest",
    "sex",
    "susp_sex",
    "vic_sex",
    "perp_sex",
    "sex_1",
    "victim_gender",
    "suspect_gender",
    "complainant_sex",
    "officers_sex",
    "susp_race",
    "vic_race",
    "perp_race",
    "vict_descent",
    "victim_race",
    "suspect_race",
    "complainant_race",
    "officers_race",
    "subject_race",
    "officer_race",
)


@dataclass
class PrivacyDictionary:
    """Ordered set of normalized privacy-relevant attribute names.

    Mutable at runtime; ``version`` increments on every change so that
    derived artifacts can record which dictionary they were computed
    against and stale results can be detected.
    """

    attributes: tuple = DEFAULT_PRIVACY_ATTRIBUTES
    version: int = 1
    _index: dict = field(init=False, repr=False, default=None)

    def __post_init__(self):
        self._set(self.attributes)

    def _set(self, attributes):
        normalized = []
        seen = set()
        for a in attributes:
            norm = normalize_attribute(a)
            if norm not in seen:
                seen.add(norm)
                normalized.append(norm)
        self.attributes = tuple(normalized)
        self._index = {a: i for i, a in enumerate(self.attributes)}

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __iter__(self):
        return iter(self.attributes)

    def __len__(self):
        return len(self.attributes)

    def order(self, name: str) -> int:
        """Position of ``name`` in the dictionary (for key ordering)."""
        return self._index[name]

    def replace(self, attributes):
        self._set(attributes)
        self.version += 1

    def snapshot(self) -> "PrivacyDictionary":
        return PrivacyDictionary(attributes=self.attributes, version=self.version)


def load_manifest(path):
    """Read a corpus manifest: JSON array of dataset descriptors."""
    with open(path, encoding="utf-8") as f:
        entries = json.load(f)
    if not isinstance(entries, list):
        raise ParseError(f"{path}: manifest must be a JSON array")
    return entries


def load_corpus(manifest_path, *, record_cap=DEFAULT_RECORD_CAP, truncate=False,
                fetcher=None):
    """Ingest every dataset named by a manifest.

    Local entries ({..., "path": ...}) are read from disk, resolved
    relative to the manifest.  Remote entries ({..., "permalink": ...})
    need an explicit ``fetcher(url) -> text`` so offline runs never
    touch the network.
    """
    manifest_path = Path(manifest_path)
    tables = []
    for entry in load_manifest(manifest_path):
        overrides = {
            k: entry[k]
            for k in ("id", "name", "portal", "tags", "granularity")
            if k in entry
        }
        if "path" in entry:
            csv_path = Path(entry["path"])
            if not csv_path.is_absolute():
                csv_path = manifest_path.parent / csv_path
            tables.append(
                ingest_csv(csv_path, overrides, record_cap=record_cap,
                           truncate=truncate)
            )
        elif "permalink" in entry:
            if fetcher is None:
                raise ParseError(
                    f"manifest entry {entry.get('id')!r} is remote but no "
                    "fetcher was provided"
                )
            text = fetcher(entry["permalink"])
            reader = csv.reader(text.splitlines())
            try:
                header = next(reader)
            except StopIteration:
                raise EmptyTable(f"{entry['permalink']} returned no data")
            tables.append(
                build_table(
                    header,
                    list(reader),
                    id=overrides.get("id", entry["permalink"]),
                    name=overrides.get("name"),
                    portal=overrides.get("portal", ""),
                    tags=overrides.get("tags", ()),
                    granularity=overrides.get(
                        "granularity", Granularity.INDIVIDUAL
                    ),
                    source=Source.remote(entry["permalink"]),
                    record_cap=record_cap,
                    truncate=truncate,
                )
            )
        else:
            raise ParseError(
                f"manifest entry {entry.get('id')!r} has neither path nor permalink"
            )
    return tables
