"""Engine-side access to material properties: HTTP client or local file.

The client pages through the service's 30-record batches, asserts the page
size it was promised, retries transport failures with exponential backoff,
and memoizes every record it has seen so a name is fetched at most once per
process. `resolve` is what the engines call: it returns an immutable
name->record snapshot or raises with the complete list of missing names.
"""
from __future__ import annotations

import threading
import time
from typing import Iterable, Mapping
from urllib.parse import quote

import httpx

from ..errors import ServiceUnavailable, UnresolvedMaterial
from .records import BATCH_SIZE, MaterialRecord, canonical_name, load_dataset

RETRY_ATTEMPTS = 3
RETRY_BASE_SECONDS = 0.2


class BatchPage:
    """One page of a batched query: at most 30 records plus missing names."""

    def __init__(self, items: list[MaterialRecord], missing: list[str], next_cursor):
        if len(items) + len(missing) > BATCH_SIZE:
            raise ServiceUnavailable(
                f"service returned a page of {len(items) + len(missing)} > {BATCH_SIZE}"
            )
        self.items = items
        self.missing = missing
        self.next_cursor = next_cursor


class LocalMaterialsSource:
    """Offline source reading the same delimited dataset schema."""

    def __init__(self, path=None):
        self._records = load_dataset(path)

    def lookup(self, names: Iterable[str]) -> tuple[dict[str, MaterialRecord], list[str]]:
        found: dict[str, MaterialRecord] = {}
        missing: list[str] = []
        for name in names:
            key = canonical_name(name)
            rec = self._records.get(key)
            if rec is None:
                missing.append(name)
            else:
                found[key] = rec
        return found, missing

    def all_names(self) -> list[str]:
        return sorted(self._records)


class MaterialsClient:
    def __init__(self, base_url: str, transport: httpx.BaseTransport | None = None,
                 sleep=time.sleep):
        self.base_url = base_url.rstrip("/")
        self._client = httpx.Client(base_url=self.base_url, transport=transport,
                                    timeout=10.0)
        self._cache: dict[str, MaterialRecord] = {}
        self._known_missing: set[str] = set()
        self._lock = threading.Lock()
        self._sleep = sleep
        self.request_count = 0

    def close(self) -> None:
        self._client.close()

    def _get(self, params: dict) -> dict:
        last_exc: Exception | None = None
        for attempt in range(RETRY_ATTEMPTS):
            try:
                resp = self._client.get("/materials", params=params)
                if resp.status_code >= 500:
                    raise httpx.HTTPError(f"server error {resp.status_code}")
                self.request_count += 1
                return resp.json()
            except httpx.HTTPError as exc:
                last_exc = exc
                if attempt < RETRY_ATTEMPTS - 1:
                    self._sleep(RETRY_BASE_SECONDS * 2**attempt)
        raise ServiceUnavailable(
            f"materials service unreachable after {RETRY_ATTEMPTS} attempts: {last_exc}"
        )

    def query_batch(self, names: list[str]) -> list[BatchPage]:
        """Fetch all pages for the requested names, in request order."""
        if not names:
            raise ValueError("names must be non-empty")
        pages: list[BatchPage] = []
        cursor = None
        # Names may themselves contain commas; percent-encode each one so the
        # wire format stays a plain comma-separated list.
        joined = ",".join(quote(n, safe="") for n in names)
        while True:
            params = {"names": joined}
            if cursor:
                params["cursor"] = cursor
            body = self._get(params)
            page = BatchPage(
                items=[MaterialRecord.from_json(d) for d in body.get("items", [])],
                missing=list(body.get("missing", [])),
                next_cursor=body.get("next_cursor"),
            )
            pages.append(page)
            cursor = page.next_cursor
            if not cursor:
                return pages

    def lookup(self, names: Iterable[str]) -> tuple[dict[str, MaterialRecord], list[str]]:
        """Cache-through lookup; one batched fetch covers all cache misses."""
        wanted = [canonical_name(n) for n in names]
        with self._lock:
            misses = [
                n for n in dict.fromkeys(wanted)
                if n not in self._cache and n not in self._known_missing
            ]
            if misses:
                for page in self.query_batch(misses):
                    for rec in page.items:
                        self._cache[rec.canonical_name] = rec
                    self._known_missing.update(canonical_name(m) for m in page.missing)
            found = {n: self._cache[n] for n in wanted if n in self._cache}
            missing = [n for n in wanted if n not in self._cache]
        return found, missing

    def health(self) -> bool:
        try:
            return self._client.get("/health").status_code == 200
        except httpx.HTTPError:
            return False

    def all_names(self) -> list[str]:
        try:
            resp = self._client.get("/materials/names")
            return list(resp.json().get("names", []))
        except httpx.HTTPError:
            return []


def resolve(material_refs: Iterable[str], source) -> Mapping[str, MaterialRecord]:
    """Resolve every distinct reference once; all-or-nothing snapshot.

    `source` is anything with `.lookup(names) -> (found, missing)`, i.e. a
    MaterialsClient or a LocalMaterialsSource. Raises UnresolvedMaterial
    naming every missing reference so one round of manual data entry can fix
    the whole model.
    """
    refs = list(dict.fromkeys(material_refs))
    if not refs:
        return {}
    found, missing = source.lookup(refs)
    if missing:
        raise UnresolvedMaterial(missing)
    return dict(found)
