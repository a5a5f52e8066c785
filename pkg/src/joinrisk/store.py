"""On-disk persistence: corpus snapshots and derived-artifact cache.

Snapshots are canonical JSON, identified by content hash, so a reloaded
snapshot reproduces byte-identical derived artifacts.  Derived results
(groupings, pair rankings, joins) are cached under a key hashing the
snapshot, the dictionary version and the relevant configuration;
anything computed against an older dictionary is simply never found.
"""

import hashlib
import json
from pathlib import Path

from .corpus import Column, DatasetMeta, DatasetTable, Granularity, Kind, Source


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False)


def content_hash(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def table_to_json(table: DatasetTable) -> dict:
    meta = table.meta
    return {
        "meta": {
            "id": meta.id,
            "name": meta.name,
            "portal": meta.portal,
            "tags": sorted(meta.tags),
            "granularity": meta.granularity.value,
            "attribute_names": list(meta.attribute_names),
            "row_count": meta.row_count,
            "source": {"kind": meta.source.kind,
                       "location": meta.source.location},
            "truncated": meta.truncated,
        },
        "columns": [
            {"name": c.name, "kind": c.kind.value, "values": list(c.values)}
            for c in table.columns
        ],
    }


def table_from_json(data: dict) -> DatasetTable:
    m = data["meta"]
    meta = DatasetMeta(
        id=m["id"],
        name=m["name"],
        portal=m["portal"],
        tags=frozenset(m["tags"]),
        granularity=Granularity(m["granularity"]),
        attribute_names=tuple(m["attribute_names"]),
        row_count=m["row_count"],
        source=Source(m["source"]["kind"], m["source"]["location"]),
        truncated=m["truncated"],
    )
    columns = tuple(
        Column(
            name=c["name"],
            kind=Kind(c["kind"]),
            values=tuple(
                float(v) if c["kind"] == "numeric" and v is not None else v
                for v in c["values"]
            ),
        )
        for c in data["columns"]
    )
    return DatasetTable(meta=meta, columns=columns)


class Store:
    def __init__(self, cache_dir):
        self.root = Path(cache_dir)
        (self.root / "snapshots").mkdir(parents=True, exist_ok=True)
        (self.root / "artifacts").mkdir(parents=True, exist_ok=True)

    # snapshots -----------------------------------------------------------
    def save_snapshot(self, tables) -> str:
        payload = [table_to_json(t) for t in tables]
        snapshot_id = content_hash(payload)
        path = self.root / "snapshots" / f"{snapshot_id}.json"
        if not path.exists():
            path.write_text(canonical_json(payload), encoding="utf-8")
        (self.root / "snapshots" / "latest").write_text(snapshot_id,
                                                        encoding="utf-8")
        return snapshot_id

    def load_snapshot(self, snapshot_id: str):
        path = self.root / "snapshots" / f"{snapshot_id}.json"
        payload = json.loads(path.read_text(encoding="utf-8"))
        return [table_from_json(t) for t in payload]

    def latest_snapshot(self):
        pointer = self.root / "snapshots" / "latest"
        if not pointer.exists():
            return None
        return pointer.read_text(encoding="utf-8").strip()

    # derived artifacts ---------------------------------------------------
    def artifact_key(self, kind: str, **parts) -> str:
        return content_hash({"kind": kind, **parts})

    def save_artifact(self, key: str, obj) -> Path:
        path = self.root / "artifacts" / f"{key}.json"
        path.write_text(canonical_json(obj), encoding="utf-8")
        return path

    def load_artifact(self, key: str):
        path = self.root / "artifacts" / f"{key}.json"
        if not path.exists():
            return None
        return json.loads(path.read_text(encoding="utf-8"))
