import httpx
import pytest
from hypothesis import given, strategies as st

from gse.errors import ServiceUnavailable, UnresolvedMaterial, ValidationError
from gse.materials import (
    LocalMaterialsSource,
    MaterialsClient,
    canonical_name,
    load_dataset,
    resolve,
)
from gse.materials.records import BATCH_SIZE, MaterialRecord, ReviewStatus
from gse.materials.service import create_app
from gse.materials.store import MaterialStore

from .helpers import SyncASGITransport


def make_client(app=None, **kwargs) -> MaterialsClient:
    app = app or create_app()
    return MaterialsClient("http://materials.test",
                           transport=SyncASGITransport(app), **kwargs)


# --- names and records ---------------------------------------------------


def test_canonicalization_examples():
    assert canonical_name("Concrete, Cast") == canonical_name("concrete,  cast")
    assert canonical_name("  Gypsum   Board ") == "gypsum board"


@given(st.text(min_size=0, max_size=60))
def test_canonicalization_idempotent(name):
    once = canonical_name(name)
    assert canonical_name(once) == once


def test_record_requires_source_tag():
    with pytest.raises(ValidationError):
        MaterialRecord("x", 1.0, 1.0, 1.0, 1.0, 0.0, "  ")


def test_record_rejects_negative_values():
    with pytest.raises(ValidationError):
        MaterialRecord("x", -1.0, 1.0, 1.0, 1.0, 0.0, "t")


def test_bundled_dataset_loads():
    data = load_dataset()
    assert len(data) >= 40
    assert all(rec.source_tag for rec in data.values())
    assert "concrete, cast in situ" in data
    assert "brick, common" in data


# --- store ---------------------------------------------------------------


def test_store_roundtrip_numeric_identity(tmp_path):
    store = MaterialStore(tmp_path / "m.sqlite")
    rec = MaterialRecord("Test Brick", 0.72123456789, 1920.5, 790.25,
                         3.00001, 1.625, "ASHRAE 90.1-2007")
    store.upsert(rec)
    got = store.get("test  brick")
    assert got is not None
    assert got.conductivity == rec.conductivity
    assert got.density == rec.density
    assert got.ee_coeff == rec.ee_coeff
    assert got.source_tag == "ASHRAE 90.1-2007"


def test_store_replacement_resets_review_status(tmp_path):
    store = MaterialStore(tmp_path / "m.sqlite")
    first = MaterialRecord("mat", 1.0, 100.0, 800.0, 1.0, 0.0, "src",
                           ReviewStatus.PEER_REVIEWED)
    store.upsert(first)
    assert store.get("mat").review_status is ReviewStatus.PEER_REVIEWED
    second = MaterialRecord("mat", 1.0, 150.0, 800.0, 1.0, 0.0, "src2",
                            ReviewStatus.PEER_REVIEWED)
    stored = store.upsert(second)
    assert stored.review_status is ReviewStatus.UNREVIEWED
    assert store.get("mat").density == 150.0


def test_store_survives_restart(tmp_path):
    path = tmp_path / "m.sqlite"
    store = MaterialStore(path)
    store.upsert(MaterialRecord("durable", 1.0, 1.0, 1.0, 1.0, 0.0, "src"))
    store.close()
    again = MaterialStore(path)
    assert again.get("durable") is not None


# --- service over HTTP ---------------------------------------------------


def test_batch_of_hundred_names_pages_30_30_30_10():
    client = make_client()
    data = load_dataset()
    known = list(data)  # 40+ known names
    names = [known[i % len(known)] + f" variant {i}" for i in range(100)]
    # unknown names still occupy their slot in the page (as missing)
    pages = client.query_batch(names)
    assert [len(p.items) + len(p.missing) for p in pages] == [30, 30, 30, 10]
    assert pages[-1].next_cursor is None
    returned = []
    for page in pages:
        returned.extend(page.missing)
    assert returned == names  # request order preserved, nothing dropped


def test_single_name_single_page():
    client = make_client()
    pages = client.query_batch(["Concrete, Cast In Situ"])
    assert len(pages) == 1
    assert pages[0].next_cursor is None
    assert pages[0].items[0].canonical_name == "concrete, cast in situ"


def test_thirty_names_exactly_one_page():
    client = make_client()
    names = list(load_dataset())[:30]
    pages = client.query_batch(names)
    assert len(pages) == 1
    assert len(pages[0].items) == 30


@given(st.integers(min_value=1, max_value=130))
def test_pagination_partitions_request(n):
    data = list(load_dataset())
    client = make_client()
    names = [data[i % len(data)] for i in range(n)]
    pages = client.query_batch(names)
    expected_pages = -(-n // BATCH_SIZE)
    assert len(pages) == expected_pages
    got = [rec.canonical_name for page in pages for rec in page.items]
    assert got == [canonical_name(x) for x in names]
    assert all(len(p.items) + len(p.missing) <= BATCH_SIZE for p in pages)
    client.close()


def test_health_endpoint():
    with httpx.Client(transport=SyncASGITransport(create_app()),
                      base_url="http://materials.test") as c:
        resp = c.get("/health")
        assert resp.status_code == 200
        assert resp.json()["status"] == "ok"


def test_upsert_over_http_and_reset():
    app = create_app()
    with httpx.Client(transport=SyncASGITransport(app),
                      base_url="http://materials.test") as c:
        body = {
            "conductivity": 0.5, "density": 1000.0, "specific_heat": 900.0,
            "ee_coeff": 2.0, "ew_coeff": 0.5,
            "source_tag": "ASHRAE 90.1-2007",
        }
        resp = c.put("/materials/New Material", json=body)
        assert resp.status_code == 200
        assert resp.json()["review_status"] == "Unreviewed"
        assert resp.json()["canonical_name"] == "new material"

        missing = dict(body)
        missing["source_tag"] = ""
        assert c.put("/materials/Bad Material", json=missing).status_code == 422

        body["density"] = 1500.0
        again = c.put("/materials/new  material", json=body)
        assert again.status_code == 200
        assert again.json()["density"] == 1500.0


def test_service_reports_missing_names():
    client = make_client()
    found, missing = client.lookup(["Concrete, Cast In Situ", "unobtainium"])
    assert "concrete, cast in situ" in found
    assert missing == ["unobtainium"]


# --- client cache and retry ----------------------------------------------


def test_cache_one_fetch_for_twelve_names():
    client = make_client()
    names = list(load_dataset())[:12]
    client.lookup(names)
    assert client.request_count == 1
    client.lookup(names)
    assert client.request_count == 1  # warm cache: zero extra requests


def test_forty_five_names_two_pages():
    data = list(load_dataset())
    names = [data[i % len(data)] + ("" if i < len(data) else " b") for i in range(45)]
    client = make_client()
    client.lookup(names)
    assert client.request_count == 2


def test_retry_then_success():
    app = create_app()
    inner = SyncASGITransport(app)
    calls = {"n": 0}

    class FlakyTransport(httpx.BaseTransport):
        def handle_request(self, request):
            calls["n"] += 1
            if calls["n"] <= 2:
                raise httpx.ConnectError("boom", request=request)
            return inner.handle_request(request)

    sleeps = []
    client = MaterialsClient("http://materials.test", transport=FlakyTransport(),
                             sleep=sleeps.append)
    found, missing = client.lookup(["Concrete, Cast In Situ"])
    assert found and not missing
    assert calls["n"] == 3
    assert len(sleeps) == 2
    assert sleeps[1] > sleeps[0]  # exponential backoff


def test_retries_exhausted_raises_service_unavailable():
    class DeadTransport(httpx.BaseTransport):
        def handle_request(self, request):
            raise httpx.ConnectError("down", request=request)

    client = MaterialsClient("http://materials.test", transport=DeadTransport(),
                             sleep=lambda s: None)
    with pytest.raises(ServiceUnavailable):
        client.query_batch(["anything"])


# --- resolve -------------------------------------------------------------


def test_resolve_local_source(single_room):
    source = LocalMaterialsSource()
    snapshot = resolve(single_room.material_refs(), source)
    assert "brick, common" in snapshot


def test_resolve_missing_lists_all():
    source = LocalMaterialsSource()
    with pytest.raises(UnresolvedMaterial) as err:
        resolve(["Brick, Common", "ghost one", "ghost two"], source)
    assert err.value.missing == ["ghost one", "ghost two"]


def test_resolve_empty_refs():
    assert resolve([], LocalMaterialsSource()) == {}


def test_resolve_via_service_client(single_room):
    client = make_client()
    snapshot = resolve(single_room.material_refs(), client)
    assert "insulation, fiberglass batt" in snapshot
    assert client.request_count == 1
