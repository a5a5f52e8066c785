"""Record real API responses as fixtures for the UI contract tests.

Run from the repository root:

    python3 frontend/scripts/record_fixtures.py

Spins up the FastAPI app in-process over two synthetic corpora (the
planted-linkage corpus and a seven-identical-schema corpus) and saves
the exact response bodies the browser would receive.
"""

import json
import sys
import time
from pathlib import Path

REPO = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(REPO / "tests"))

from fastapi.testclient import TestClient

from joinrisk.api import create_app
from joinrisk.config import Settings
from joinrisk.corpus import Granularity

from conftest import build_planted_corpus, make_table

FIXTURES = Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def save(name, payload):
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / name).write_text(json.dumps(payload, indent=2),
                                 encoding="utf-8")
    print(f"recorded {name}")


def overlap_corpus():
    """Seven schema-identical police datasets plus five mixed ones."""
    tables = []
    for i in range(7):
        tables.append(make_table(
            f"report_{i}",
            ["victim_age", "offender_age", "victim_race", "location"],
            [["15", "34", "white", "main st"], ["17", "28", "black", "oak av"]],
            tags=("crime",),
        ))
    for i in range(5):
        tables.append(make_table(
            f"misc_{i}",
            ["age", "sex", f"col_{i}", f"extra_{i}"],
            [["30", "F", "x", "y"], ["41", "M", "u", "v"]],
            granularity=Granularity.AGGREGATED,
        ))
    return tables


def wait_done(client, job_id):
    for _ in range(200):
        body = client.get(f"/groupings/{job_id}").json()
        if body["status"] == "done":
            return body["result"]
        if body["status"] in ("error", "cancelled"):
            raise RuntimeError(body)
        time.sleep(0.05)
    raise TimeoutError("grouping never finished")


def record_overlap(tmp_cache):
    app = create_app(overlap_corpus(), Settings(cache_dir=tmp_cache, seed=4))
    client = TestClient(app)
    job = client.post("/groupings", json={"seed": 4}).json()
    result = wait_done(client, job["id"])
    save("grouping_overlap.json", result)
    save("dictionary.json", client.get("/dictionary").json())


def record_planted(tmp_cache):
    # demographics table crosses the vulnerability threshold in both
    # directions: some categories are rare, others are well-populated
    demographics = make_table(
        "demographics",
        ["race", "sex"],
        [["white", "f"]] * 4 + [["white", "m"]] * 3
        + [["black", "f"]] * 2 + [["black", "m"]] * 1
        + [["hawaiian", "f"]] * 1,
        tags=("health",),
    )
    corpus = build_planted_corpus() + [demographics]
    app = create_app(corpus, Settings(cache_dir=tmp_cache, seed=3))
    client = TestClient(app)
    save("vulnerability.json",
         client.get("/datasets/demographics/vulnerability").json())

    joined = client.post("/join", json={
        "a": "arrests_a", "b": "arrests_b", "key": ["sex", "race"],
    }).json()
    save("join.json", joined)
    save("match_detail.json",
         client.get(f"/join/{joined['join_id']}/match/0").json())

    ids = [d["id"] for d in client.get("/corpus").json()]
    save("pairs.json", client.post("/pairs", json={"dataset_ids": ids}).json())


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        record_overlap(tmp + "/overlap")
        record_planted(tmp + "/planted")
