"""Batch command-line interface.

Every subcommand emits the same JSON the HTTP API serves, to stdout or
--out, so shell pipelines and the UI see identical numbers.
"""

import json
import sys

import click

from .config import Settings, load_settings
from .corpus import PrivacyDictionary, load_corpus
from .dbscan import ClusteringConfig
from .disclosure import join as join_tables
from .disclosure import suggest_features
from .errors import EngineError
from .grouping import build_groups
from .pairrisk import rank_pairs, risk_score
from .store import Store
from .tsne import ProjectionConfig
from .vulnerability import build_profile, rank_vulnerable


def _settings(ctx) -> Settings:
    return ctx.obj["settings"]


def _store(ctx) -> Store:
    return Store(_settings(ctx).cache_dir)


def _dictionary(ctx) -> PrivacyDictionary:
    attrs = ctx.obj.get("privacy_attrs")
    return PrivacyDictionary(tuple(attrs)) if attrs else PrivacyDictionary()


def _load_tables(ctx, snapshot=None):
    store = _store(ctx)
    snapshot_id = snapshot or store.latest_snapshot()
    if snapshot_id is None:
        raise click.ClickException(
            "no corpus snapshot found; run `joinrisk ingest <manifest>` first"
        )
    return snapshot_id, store.load_snapshot(snapshot_id)


def _emit(payload, out):
    text = json.dumps(payload, indent=2, sort_keys=False)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        click.echo(text)


@click.group()
@click.option("--config", "config_file", type=click.Path(exists=True),
              default=None, help="JSON settings file.")
@click.option("--cache-dir", envvar="JOINRISK_CACHE_DIR", default=None,
              help="Snapshot/artifact cache directory.")
@click.option("--privacy-attrs", default=None,
              help="Comma-separated privacy attributes overriding the "
                   "default dictionary.")
@click.pass_context
def main(ctx, config_file, cache_dir, privacy_attrs):
    """Joinability-risk inspection over a local dataset corpus."""
    settings = load_settings(config_file)
    if cache_dir:
        settings.cache_dir = cache_dir
    ctx.obj = {
        "settings": settings,
        "privacy_attrs": ([a.strip() for a in privacy_attrs.split(",")]
                          if privacy_attrs else None),
    }


@main.command()
@click.argument("manifest", type=click.Path(exists=True))
@click.option("--truncate/--no-truncate", default=None,
              help="Keep the first record-cap rows instead of failing.")
@click.option("--record-cap", type=int, default=None)
@click.option("--out", default=None)
@click.pass_context
def ingest(ctx, manifest, truncate, record_cap, out):
    """Ingest the datasets listed in a corpus MANIFEST and snapshot them."""
    settings = _settings(ctx)
    if truncate is not None:
        settings.truncate = truncate
    if record_cap is not None:
        settings.record_cap = record_cap
    try:
        tables = load_corpus(manifest, record_cap=settings.record_cap,
                             truncate=settings.truncate)
    except EngineError as e:
        raise click.ClickException(f"{e.code}: {e}")
    snapshot_id = _store(ctx).save_snapshot(tables)
    _emit({
        "snapshot_id": snapshot_id,
        "datasets": [t.meta.id for t in tables],
        "row_counts": {t.meta.id: t.meta.row_count for t in tables},
    }, out)


@main.command()
@click.option("--snapshot", default=None)
@click.option("--ids", default=None, help="Comma-separated dataset ids.")
@click.option("--seed", type=int, default=None)
@click.option("--weights", default=None, help="Comma-separated candidates.")
@click.option("--out", default=None)
@click.pass_context
def groups(ctx, snapshot, ids, seed, weights, out):
    """Compute ranked joinable groups for the corpus."""
    settings = _settings(ctx)
    _, tables = _load_tables(ctx, snapshot)
    if ids:
        wanted = set(ids.split(","))
        tables = [t for t in tables if t.meta.id in wanted]
    candidates = (tuple(float(w) for w in weights.split(","))
                  if weights else settings.weight_candidates)
    result = build_groups(
        tables,
        _dictionary(ctx),
        weight_candidates=candidates,
        projection_cfg=ProjectionConfig(
            seed=seed if seed is not None else settings.seed),
        clustering_cfg=ClusteringConfig(),
    )
    _emit(result.to_json(), out)


@main.command()
@click.option("--snapshot", default=None)
@click.option("--threshold", type=int, default=None)
@click.option("--out", default=None)
@click.pass_context
def vulnerable(ctx, snapshot, threshold, out):
    """Rank datasets by low-count privacy record points."""
    settings = _settings(ctx)
    threshold = threshold if threshold is not None else settings.vulnerable_threshold
    _, tables = _load_tables(ctx, snapshot)
    dictionary = _dictionary(ctx)
    profiles = []
    for t in tables:
        if any(name in dictionary for name in t.meta.normalized_attributes):
            profiles.append(build_profile(t, dictionary, threshold))
    ranked = rank_vulnerable(profiles)
    _emit({"threshold": threshold,
           "profiles": [p.to_json() for p in ranked]}, out)


@main.command()
@click.option("--snapshot", default=None)
@click.option("--ids", default=None, help="Comma-separated dataset ids.")
@click.option("--alpha", type=float, default=None)
@click.option("--out", default=None)
@click.pass_context
def pairs(ctx, snapshot, ids, alpha, out):
    """Rank all dataset pairs by joinability risk."""
    settings = _settings(ctx)
    _, tables = _load_tables(ctx, snapshot)
    if ids:
        wanted = set(ids.split(","))
        tables = [t for t in tables if t.meta.id in wanted]
    ranked = rank_pairs(tables, _dictionary(ctx),
                        alpha=alpha if alpha is not None else settings.alpha,
                        key_size=settings.key_size)
    _emit({"pairs": [p.to_json() for p in ranked]}, out)


@main.command(name="join")
@click.argument("dataset_a")
@click.argument("dataset_b")
@click.option("--key", "key", multiple=True, required=True,
              help="Join-key attribute (repeatable).")
@click.option("--numeric-mode", type=click.Choice(["binned", "raw"]),
              default=None)
@click.option("--snapshot", default=None)
@click.option("--out", default=None)
@click.pass_context
def join_cmd(ctx, dataset_a, dataset_b, key, numeric_mode, snapshot, out):
    """Join two datasets on KEY attributes and report matching records."""
    settings = _settings(ctx)
    _, tables = _load_tables(ctx, snapshot)
    by_id = {t.meta.id: t for t in tables}
    for dataset in (dataset_a, dataset_b):
        if dataset not in by_id:
            raise click.ClickException(f"unknown dataset id {dataset!r}")
    try:
        outcome = join_tables(by_id[dataset_a], by_id[dataset_b], list(key),
                              numeric_mode=numeric_mode
                              or settings.numeric_join_mode)
    except EngineError as e:
        raise click.ClickException(f"{e.code}: {e}")
    payload = {"outcome": outcome.to_json()}
    if outcome.match_count >= 2:
        suggestions = suggest_features(outcome, by_id[dataset_a],
                                       by_id[dataset_b],
                                       mode=settings.nmi_mode)
        payload["suggestions"] = {
            side: [s.to_json() for s in items]
            for side, items in suggestions.items()
        }
    else:
        payload["suggestions"] = {"from_a": [], "from_b": []}
    _emit(payload, out)


@main.command()
@click.option("--snapshot", default=None)
@click.option("--top", type=int, default=3,
              help="How many top-risk pairs to join.")
@click.option("--seed", type=int, default=None)
@click.option("--out", default=None)
@click.pass_context
def audit(ctx, snapshot, top, seed, out):
    """End-to-end sweep: groups, ranked pairs, suggested-key joins."""
    settings = _settings(ctx)
    snapshot_id, tables = _load_tables(ctx, snapshot)
    dictionary = _dictionary(ctx)

    report = {"snapshot_id": snapshot_id,
              "dictionary_version": dictionary.version}
    if len(tables) >= 3:
        grouping = build_groups(
            tables, dictionary,
            weight_candidates=settings.weight_candidates,
            projection_cfg=ProjectionConfig(
                seed=seed if seed is not None else settings.seed),
            clustering_cfg=ClusteringConfig(),
        )
        report["grouping"] = grouping.to_json()

    ranked = rank_pairs(tables, dictionary, alpha=settings.alpha,
                        key_size=settings.key_size)
    report["ranked_pairs"] = [p.to_json() for p in ranked]

    joins = []
    by_id = {t.meta.id: t for t in tables}
    for pair in ranked[:top]:
        if not pair.suggested_key:
            continue
        outcome = join_tables(by_id[pair.dataset_a], by_id[pair.dataset_b],
                              pair.suggested_key,
                              numeric_mode=settings.numeric_join_mode)
        entry = {
            "a": pair.dataset_a,
            "b": pair.dataset_b,
            "key": pair.suggested_key,
            "match_count": outcome.match_count,
            "distinct_key_count": outcome.distinct_key_count,
        }
        if outcome.match_count >= 2:
            suggestions = suggest_features(outcome, by_id[pair.dataset_a],
                                           by_id[pair.dataset_b],
                                           mode=settings.nmi_mode)
            entry["suggestions"] = {
                side: [s.to_json() for s in items]
                for side, items in suggestions.items()
            }
        joins.append(entry)
    report["joins"] = joins
    _emit(report, out)


@main.command(name="alpha-sweep")
@click.option("--from", "alpha_from", type=int, default=1, show_default=True)
@click.option("--to", "alpha_to", type=int, default=100, show_default=True)
@click.option("--snapshot", default=None)
@click.option("--out", default=None)
@click.pass_context
def alpha_sweep(ctx, alpha_from, alpha_to, snapshot, out):
    """Sweep the risk ratio and report privacy/non-privacy separation."""
    _, tables = _load_tables(ctx, snapshot)
    dictionary = _dictionary(ctx)
    base = rank_pairs(tables, dictionary, alpha=1.0)
    counts = [(p.p, p.c) for p in base]
    sweep = []
    for alpha in range(alpha_from, alpha_to + 1):
        privacy = [risk_score(p, c, alpha) for p, c in counts if p >= 1]
        plain = [risk_score(p, c, alpha) for p, c in counts if p == 0]
        separated = (bool(privacy) and bool(plain)
                     and min(privacy) > max(plain))
        sweep.append({
            "alpha": alpha,
            "privacy_pairs": len(privacy),
            "non_privacy_pairs": len(plain),
            "min_privacy_risk": min(privacy) if privacy else None,
            "max_non_privacy_risk": max(plain) if plain else None,
            "separated": separated,
        })
    _emit({"sweep": sweep}, out)


@main.command()
@click.option("--manifest", type=click.Path(exists=True), required=True)
@click.option("--port", type=int, default=None)
@click.option("--host", default="127.0.0.1")
@click.pass_context
def serve(ctx, manifest, port, host):
    """Start the HTTP API for the triage UI."""
    import uvicorn

    from .api import create_app

    settings = _settings(ctx)
    tables = load_corpus(manifest, record_cap=settings.record_cap,
                         truncate=settings.truncate)
    app = create_app(tables, settings, _dictionary(ctx))
    uvicorn.run(app, host=host, port=port or settings.port)


if __name__ == "__main__":
    main(sys.argv[1:])
