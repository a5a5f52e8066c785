"""Socrata catalog client with record/replay fixtures.

The engine never needs the network: a fixture directory of recorded
responses substitutes for live HTTP, and every other module works on a
purely local corpus.  When the network is used, responses are cached
with a timestamp so repeat runs stay cheap.
"""

import hashlib
import json
import time
from dataclasses import dataclass
from pathlib import Path

import requests

from .errors import MalformedResponse, NetworkError

DEFAULT_CATALOG_URL = "http://api.us.socrata.com/api/catalog/v1/domains"


@dataclass(frozen=True)
class PortalDescriptor:
    domain: str
    resource_count: int


def fixture_path_for(fixture_dir, url: str) -> Path:
    digest = hashlib.sha256(url.encode("utf-8")).hexdigest()[:16]
    return Path(fixture_dir) / f"{digest}.json"


def _official_count(entry) -> int:
    """Official resource count for one portal entry.

    Entries either carry an explicit resource list (each resource with a
    provenance field; only "official" ones count) or a plain count.
    """
    if "resources" in entry:
        return sum(
            1
            for r in entry["resources"]
            if str(r.get("provenance", "")).lower() == "official"
        )
    if "count" in entry:
        return int(entry["count"])
    raise MalformedResponse(f"portal entry {entry!r} has no count or resources")


def _parse_domains(payload) -> list:
    try:
        results = payload["results"]
    except (TypeError, KeyError):
        raise MalformedResponse("catalog response has no 'results' field")
    portals = []
    for entry in results:
        try:
            domain = entry["domain"]
        except (TypeError, KeyError):
            raise MalformedResponse(f"portal entry {entry!r} has no domain")
        portals.append(PortalDescriptor(domain=domain,
                                        resource_count=_official_count(entry)))
    return portals


def fetch_catalog(
    base_url: str = DEFAULT_CATALOG_URL,
    min_resources: int = 2,
    *,
    fixture_dir=None,
    record: bool = False,
    cache_dir=None,
    timeout: float = 30.0,
):
    """Portals with at least ``min_resources`` official resources.

    With a fixture directory, a recorded response for ``base_url`` is
    replayed; a missing recording only falls through to the network when
    ``record=True`` (the response is then saved for replay).
    """
    payload = None
    if fixture_dir is not None:
        fixture = fixture_path_for(fixture_dir, base_url)
        if fixture.exists():
            payload = json.loads(fixture.read_text(encoding="utf-8"))
        elif not record:
            raise NetworkError(
                f"no recorded response for {base_url} in {fixture_dir}"
            )
    if payload is None:
        try:
            resp = requests.get(base_url, timeout=timeout)
            resp.raise_for_status()
            payload = resp.json()
        except requests.RequestException as e:
            raise NetworkError(f"catalog fetch failed: {e}") from e
        except ValueError as e:
            raise MalformedResponse(f"catalog response is not JSON: {e}") from e
        if fixture_dir is not None and record:
            fixture = fixture_path_for(fixture_dir, base_url)
            fixture.parent.mkdir(parents=True, exist_ok=True)
            fixture.write_text(json.dumps(payload, indent=2), encoding="utf-8")
    portals = [p for p in _parse_domains(payload)
               if p.resource_count >= min_resources]
    if cache_dir is not None:
        cache_file = Path(cache_dir) / "catalog.json"
        cache_file.parent.mkdir(parents=True, exist_ok=True)
        cache_file.write_text(
            json.dumps(
                {
                    "fetched_at": time.time(),
                    "base_url": base_url,
                    "portals": [
                        {"domain": p.domain, "resource_count": p.resource_count}
                        for p in portals
                    ],
                },
                indent=2,
            ),
            encoding="utf-8",
        )
    return portals
