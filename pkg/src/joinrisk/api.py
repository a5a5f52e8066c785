"""HTTP API over the inspection workflow.

Single-defender service: one corpus snapshot, one privacy dictionary,
many readers.  Every derived artifact is stamped with the dictionary
version it was computed against; a stale grouping is answered with 409
instead of being served.  Groupings run as background jobs (projection
is the slow path) and are content-addressed, so identical requests at
identical versions share one computation and its on-disk cache.
"""

import threading
from dataclasses import dataclass, field
from typing import List, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .config import Settings
from .corpus import PrivacyDictionary, filter_corpus
from .dbscan import ClusteringConfig
from .disclosure import join, match_detail, suggest_features
from .errors import (
    DuplicateAttributeName,
    EmptyKey,
    EngineError,
    InvalidAttributeName,
    InvalidKey,
    OperationCancelled,
)
from .grouping import build_groups
from .pairrisk import rank_pairs
from .store import Store
from .tsne import ProjectionConfig
from .vulnerability import build_profile, relevance_score

_BAD_REQUEST_ERRORS = (InvalidKey, EmptyKey, InvalidAttributeName,
                       DuplicateAttributeName)


@dataclass
class SessionState:
    snapshot_id: str = ""
    dictionary_version: int = 1
    active_filters: dict = field(default_factory=dict)
    last_grouping_id: Optional[str] = None
    last_pair: Optional[list] = None
    last_join_key: dict = field(default_factory=dict)  # "a|b" -> key list

    def to_json(self):
        return {
            "snapshot_id": self.snapshot_id,
            "dictionary_version": self.dictionary_version,
            "active_filters": self.active_filters,
            "last_grouping_id": self.last_grouping_id,
            "last_pair": self.last_pair,
            "last_join_key": self.last_join_key,
        }


class GroupingJob:
    def __init__(self, job_id, dictionary_version):
        self.id = job_id
        self.dictionary_version = dictionary_version
        self.status = "pending"
        self.result = None
        self.error = None
        from .cancellation import CancellationToken

        self.cancel = CancellationToken()


class DictionaryBody(BaseModel):
    attributes: List[str]


class GroupingRequest(BaseModel):
    dataset_ids: Optional[List[str]] = None
    weight_candidates: Optional[List[float]] = None
    seed: Optional[int] = None


class PairsRequest(BaseModel):
    dataset_ids: List[str]


class RelevanceRequest(BaseModel):
    vulnerable_id: str
    candidate_ids: Optional[List[str]] = None


class JoinRequest(BaseModel):
    a: str
    b: str
    key: List[str]


def _meta_json(meta):
    return {
        "id": meta.id,
        "name": meta.name,
        "portal": meta.portal,
        "tags": sorted(meta.tags),
        "granularity": meta.granularity.value,
        "attribute_names": list(meta.attribute_names),
        "row_count": meta.row_count,
        "truncated": meta.truncated,
    }


def create_app(tables, settings: Settings = None,
               dictionary: PrivacyDictionary = None) -> FastAPI:
    """Build the service around an already-ingested corpus snapshot."""
    settings = settings or Settings()
    dictionary = dictionary or PrivacyDictionary()
    store = Store(settings.cache_dir)
    by_id = {t.meta.id: t for t in tables}
    snapshot_id = store.save_snapshot(tables)
    session = SessionState(snapshot_id=snapshot_id,
                           dictionary_version=dictionary.version)
    jobs = {}
    joins = {}
    lock = threading.Lock()

    app = FastAPI(title="joinrisk", version="0.1.0")

    @app.exception_handler(EngineError)
    async def engine_error_handler(request: Request, exc: EngineError):
        status = 400 if isinstance(exc, _BAD_REQUEST_ERRORS) else 422
        return JSONResponse(status_code=status,
                            content={"code": exc.code, "detail": str(exc)})

    def bad_request(code, detail):
        return JSONResponse(status_code=400,
                            content={"code": code, "detail": detail})

    def lookup(dataset_id):
        table = by_id.get(dataset_id)
        if table is None:
            raise LookupError(dataset_id)
        return table

    @app.get("/corpus")
    def get_corpus(tags: str = None, portals: str = None,
                   granularity: str = None):
        tag_set = set(tags.split(",")) if tags else None
        portal_set = set(portals.split(",")) if portals else None
        session.active_filters = {
            "tags": sorted(tag_set) if tag_set else [],
            "portals": sorted(portal_set) if portal_set else [],
            "granularity": granularity,
        }
        selected = filter_corpus(list(by_id.values()), tags=tag_set,
                                 portals=portal_set, granularity=granularity)
        return [_meta_json(t.meta) for t in selected]

    @app.get("/dictionary")
    def get_dictionary():
        return {"attributes": list(dictionary.attributes),
                "version": dictionary.version}

    @app.put("/dictionary")
    def put_dictionary(body: DictionaryBody):
        with lock:
            dictionary.replace(body.attributes)
            session.dictionary_version = dictionary.version
            for job in jobs.values():
                if job.status in ("pending", "running"):
                    job.cancel.cancel()
        return {"attributes": list(dictionary.attributes),
                "version": dictionary.version}

    def _run_grouping(job, selected, weights, seed):
        job.status = "running"
        try:
            result = build_groups(
                selected,
                dictionary.snapshot(),
                weight_candidates=weights,
                projection_cfg=ProjectionConfig(seed=seed),
                clustering_cfg=ClusteringConfig(),
                cancel=job.cancel,
            )
            job.result = result.to_json()
            store.save_artifact(job.id, job.result)
            job.status = "done"
        except OperationCancelled:
            job.status = "cancelled"
        except Exception as e:  # surfaced on poll
            job.error = str(e)
            job.status = "error"

    @app.post("/groupings")
    def post_groupings(body: GroupingRequest):
        ids = body.dataset_ids or sorted(by_id)
        try:
            selected = [lookup(i) for i in ids]
        except LookupError as e:
            return bad_request("UnknownDataset", f"unknown dataset id {e}")
        weights = tuple(body.weight_candidates or settings.weight_candidates)
        seed = body.seed if body.seed is not None else settings.seed
        job_id = store.artifact_key(
            "grouping",
            snapshot=snapshot_id,
            dictionary={"attributes": list(dictionary.attributes),
                        "version": dictionary.version},
            ids=sorted(ids),
            weights=list(weights),
            seed=seed,
        )
        with lock:
            session.last_grouping_id = job_id
            existing = jobs.get(job_id)
            if existing is not None and existing.status in (
                    "pending", "running", "done"):
                return {"id": job_id, "status": existing.status}
            job = GroupingJob(job_id, dictionary.version)
            jobs[job_id] = job
            cached = store.load_artifact(job_id)
            if cached is not None:
                job.result = cached
                job.status = "done"
                return {"id": job_id, "status": "done"}
            thread = threading.Thread(
                target=_run_grouping, args=(job, selected, weights, seed),
                daemon=True,
            )
            thread.start()
        return {"id": job_id, "status": job.status}

    @app.get("/groupings/{job_id}")
    def get_grouping(job_id: str):
        job = jobs.get(job_id)
        if job is None:
            return bad_request("UnknownGrouping", f"unknown grouping {job_id}")
        if job.dictionary_version != dictionary.version:
            return JSONResponse(
                status_code=409,
                content={"code": "StaleDictionary",
                         "detail": "dictionary changed since this grouping "
                                   "was computed; request a new grouping"},
            )
        body = {"id": job.id, "status": job.status}
        if job.status == "done":
            body["result"] = job.result
        elif job.status == "error":
            body["error"] = job.error
        return body

    @app.get("/datasets/{dataset_id}/vulnerability")
    def get_vulnerability(dataset_id: str):
        try:
            table = lookup(dataset_id)
        except LookupError:
            return bad_request("UnknownDataset",
                               f"unknown dataset id {dataset_id!r}")
        profile = build_profile(table, dictionary,
                                settings.vulnerable_threshold)
        return profile.to_json()

    @app.post("/pairs")
    def post_pairs(body: PairsRequest):
        try:
            selected = [lookup(i) for i in body.dataset_ids]
        except LookupError as e:
            return bad_request("UnknownDataset", f"unknown dataset id {e}")
        if len(selected) < 2:
            return bad_request("NotEnoughDatasets",
                               "need at least two dataset ids")
        pairs = rank_pairs(selected, dictionary, alpha=settings.alpha,
                           key_size=settings.key_size)
        return {
            "dictionary_version": dictionary.version,
            "pairs": [
                p.to_json(last_used_key=session.last_join_key.get(
                    f"{p.dataset_a}|{p.dataset_b}"))
                for p in pairs
            ],
        }

    @app.post("/relevance")
    def post_relevance(body: RelevanceRequest):
        try:
            vulnerable = lookup(body.vulnerable_id)
        except LookupError:
            return bad_request("UnknownDataset",
                               f"unknown dataset id {body.vulnerable_id!r}")
        profile = build_profile(vulnerable, dictionary,
                                settings.vulnerable_threshold)
        if body.candidate_ids is not None:
            candidates = [lookup(i) for i in body.candidate_ids]
        else:
            candidates = [t for t in by_id.values()
                          if t.meta.id != body.vulnerable_id]
        ranked = []
        for table in candidates:
            score, matched = relevance_score(profile.vulnerable_points,
                                             table, dictionary)
            ranked.append({
                "dataset_id": table.meta.id,
                "score": score,
                "matched": [p.to_json() for p in matched],
            })
        ranked.sort(key=lambda r: (-r["score"], r["dataset_id"]))
        return {"vulnerable_id": body.vulnerable_id, "partners": ranked}

    @app.post("/join")
    def post_join(body: JoinRequest):
        try:
            table_a, table_b = lookup(body.a), lookup(body.b)
        except LookupError as e:
            return bad_request("UnknownDataset", f"unknown dataset id {e}")
        outcome = join(table_a, table_b, body.key,
                       numeric_mode=settings.numeric_join_mode)
        join_id = store.artifact_key(
            "join", snapshot=snapshot_id, a=body.a, b=body.b,
            key=list(body.key), numeric_mode=settings.numeric_join_mode,
        )
        joins[join_id] = (outcome, table_a, table_b)
        pair_key = "|".join(sorted([body.a, body.b]))
        with lock:
            session.last_pair = sorted([body.a, body.b])
            session.last_join_key[pair_key] = list(body.key)
        if outcome.match_count >= 2:
            suggestions = suggest_features(outcome, table_a, table_b,
                                           mode=settings.nmi_mode)
            suggestions_json = {
                side: [s.to_json() for s in items]
                for side, items in suggestions.items()
            }
        else:
            suggestions_json = {"from_a": [], "from_b": []}
        return {
            "join_id": join_id,
            "outcome": outcome.to_json(),
            "suggestions": suggestions_json,
        }

    @app.get("/join/{join_id}/match/{index}")
    def get_match(join_id: str, index: int):
        entry = joins.get(join_id)
        if entry is None:
            return bad_request("UnknownJoin", f"unknown join {join_id!r}")
        outcome, table_a, table_b = entry
        try:
            return match_detail(outcome, table_a, table_b, index)
        except IndexError as e:
            return bad_request("BadMatchIndex", str(e))

    @app.get("/session")
    def get_session():
        return session.to_json()

    return app
