import csv
import json
import random
from pathlib import Path

import pytest

from joinrisk.corpus import DatasetMeta, Granularity, Source, build_table


def make_table(table_id, header, rows, *, portal="test.portal", tags=(),
               granularity=Granularity.INDIVIDUAL, record_cap=100_000):
    return build_table(
        header,
        rows,
        id=table_id,
        portal=portal,
        tags=tags,
        granularity=granularity,
        record_cap=record_cap,
    )


def make_meta(meta_id, attrs, *, portal="test.portal", tags=(),
              granularity=Granularity.INDIVIDUAL):
    return DatasetMeta(
        id=meta_id,
        name=meta_id,
        portal=portal,
        tags=frozenset(t.lower() for t in tags),
        granularity=granularity,
        attribute_names=tuple(attrs),
        row_count=1,
        source=Source.local(""),
    )


@pytest.fixture
def table_factory():
    return make_table


def build_planted_corpus():
    """Eight synthetic datasets with one planted individual spanning the
    arrest pair: same age/sex/race/date/location in both, and no other
    cross-candidate coincidence (other ages fall in different bins)."""
    arrests_a = make_table(
        "arrests_a",
        ["age", "sex", "race", "date", "location", "charge"],
        [
            ["34", "F", "Hawaiian", "2020-03-20", "Main St", "larceny"],
            ["21", "M", "White", "2020-01-03", "Oak Ave", "theft"],
            ["22", "F", "Black", "2020-01-09", "Elm St", "fraud"],
            ["23", "M", "Asian", "2020-02-11", "Pine Rd", "assault"],
            ["24", "M", "White", "2020-02-14", "Lake Dr", "theft"],
            ["25", "F", "Black", "2020-03-01", "Hill Ct", "vandalism"],
            ["26", "M", "White", "2020-03-05", "Bay Blvd", "theft"],
            ["27", "F", "Asian", "2020-03-18", "Dune Way", "larceny"],
        ],
        tags=("crime",),
    )
    arrests_b = make_table(
        "arrests_b",
        ["age", "sex", "race", "date", "location", "disposition"],
        [
            ["34", "f", "hawaiian", "2020-03-20", "main st", "open"],
            ["41", "M", "White", "2020-04-02", "River Rd", "closed"],
            ["42", "F", "Black", "2020-04-08", "Park Ln", "closed"],
            ["43", "M", "Asian", "2020-04-21", "Mill St", "open"],
            ["44", "F", "White", "2020-05-05", "Gate Pl", "closed"],
            ["45", "M", "Black", "2020-05-19", "Dock St", "closed"],
            ["46", "F", "White", "2020-06-02", "Farm Rd", "open"],
            ["49", "M", "Asian", "2020-06-30", "Shore Dr", "closed"],
        ],
        tags=("crime",),
    )
    permits_1 = make_table(
        "permits_1",
        ["permit_number", "fee", "status", "issued"],
        [[str(1000 + i), str(50 + i), "active" if i % 2 else "expired",
          f"2019-0{i + 1}-01"] for i in range(6)],
        tags=("permits",),
        granularity=Granularity.AGGREGATED,
    )
    permits_2 = make_table(
        "permits_2",
        ["permit_number", "fee", "status", "inspector"],
        [[str(2000 + i), str(80 + i), "active", f"insp_{i}"]
         for i in range(6)],
        tags=("permits",),
        granularity=Granularity.AGGREGATED,
    )
    library_1 = make_table(
        "library_1",
        ["branch", "visits", "books"],
        [[f"branch_{i}", str(100 + 7 * i), str(2000 + 13 * i)]
         for i in range(6)],
        tags=("library",),
        granularity=Granularity.AGGREGATED,
    )
    library_2 = make_table(
        "library_2",
        ["branch", "visits", "events"],
        [[f"branch_{i}", str(90 + 5 * i), str(3 + i)] for i in range(6)],
        tags=("library",),
        granularity=Granularity.AGGREGATED,
    )
    health_1 = make_table(
        "health_1",
        ["age", "county", "cases"],
        [[str(30 + i), f"county_{i}", str(5 + i)] for i in range(6)],
        tags=("health",),
        granularity=Granularity.AGGREGATED,
    )
    health_2 = make_table(
        "health_2",
        ["age", "county", "deaths"],
        [[str(60 + i), f"county_{i}", str(i)] for i in range(6)],
        tags=("health",),
        granularity=Granularity.AGGREGATED,
    )
    return [arrests_a, arrests_b, permits_1, permits_2, library_1,
            library_2, health_1, health_2]


@pytest.fixture
def planted_corpus():
    return build_planted_corpus()


def build_two_family_metas():
    """Six schemas around age/sex/race and six around permits; used to
    check that privacy weighting separates the families."""
    privacy = [
        make_meta(f"people_{i}", ["age", "sex", "race", f"case_{i}",
                                  f"note_{i}"])
        for i in range(6)
    ]
    mundane = [
        make_meta(f"permits_{i}", ["permit_number", "fee_amount",
                                   f"zone_{i}", f"code_{i}"])
        for i in range(6)
    ]
    return privacy + mundane


@pytest.fixture
def two_family_metas():
    return build_two_family_metas()


def write_corpus_files(root: Path, tables=None):
    """Materialize a corpus as CSV files plus a manifest; returns the
    manifest path."""
    from joinrisk.store import table_to_json

    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    entries = []
    for table in tables if tables is not None else build_planted_corpus():
        payload = table_to_json(table)
        path = root / f"{table.meta.id}.csv"
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(payload["meta"]["attribute_names"])
            columns = payload["columns"]
            for r in range(payload["meta"]["row_count"]):
                writer.writerow([
                    "" if col["values"][r] is None else
                    (f"{col['values'][r]:g}" if col["kind"] == "numeric"
                     else col["values"][r])
                    for col in columns
                ])
        entries.append({
            "id": table.meta.id,
            "name": table.meta.name,
            "portal": table.meta.portal,
            "tags": sorted(table.meta.tags),
            "granularity": table.meta.granularity.value,
            "path": path.name,
        })
    manifest = root / "manifest.json"
    manifest.write_text(json.dumps(entries, indent=2), encoding="utf-8")
    return manifest


def random_table_pair(rng: random.Random, max_rows=60):
    """A random pair of tables sharing a few columns, with overlapping
    values and sprinkled missing cells, for join-oracle checks."""
    shared = ["age", "sex", "zone"]
    extra_a = ["charge"]
    extra_b = ["status"]
    sexes = ["M", "F", "X"]
    zones = [f"z{k}" for k in range(4)]

    def rows_for(extra, n):
        rows = []
        for _ in range(n):
            age = rng.choice(["", str(rng.randint(10, 60))])
            sex = rng.choice(sexes + [""])
            zone = rng.choice(zones)
            rows.append([age, sex, zone, rng.choice(["a", "b", "c"])])
        return rows

    n_a = rng.randint(5, max_rows)
    n_b = rng.randint(5, max_rows)
    table_a = make_table("ra", shared + extra_a, rows_for(extra_a, n_a))
    table_b = make_table("rb", shared + extra_b, rows_for(extra_b, n_b))
    return table_a, table_b
