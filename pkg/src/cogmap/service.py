"""HTTP JSON API over an in-memory map store.

Bundled datasets are preloaded read-only; uploaded documents get fresh
ids and are mirrored to the persistence directory when one is
configured.  Stored maps are immutable, so concurrent inferences never
see a map change under them; mutation of the registry itself is
serialized by a lock.
"""

from __future__ import annotations

import json
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from cogmap.inference import (
    DimensionMismatch,
    ThresholdPolicy,
    hidden_pattern,
    relational_hidden_pattern,
    sweep,
)
from cogmap.io_formats import (
    MAP_SUFFIX,
    MapDocumentError,
    UnknownLabelError,
    data_dir as default_data_dir,
    load_map,
    load_scenario,
    resolve_initial,
    save_map,
)
from cogmap.model import CognitiveMap, RelationalMap
from cogmap.reports import run_report, sweep_report

MAX_NODES = 512
REQUEST_TIMEOUT = 5.0


@dataclass(frozen=True)
class StoredMap:
    id: str
    mapping: object
    document: dict
    bundled: bool


def _node_total(mapping) -> int:
    if isinstance(mapping, RelationalMap):
        return mapping.domain_count + mapping.range_count
    return mapping.node_count


class MapStore:
    """id -> immutable map registry; bundled entries are preloaded read-only."""

    def __init__(self, data_dir: Optional[str] = None, persist_dir: Optional[str] = None):
        self._lock = threading.Lock()
        self._maps = {}
        self.persist_dir = Path(persist_dir) if persist_dir else None
        directory = Path(data_dir) if data_dir else default_data_dir()
        if directory.is_dir():
            for path in sorted(directory.glob(f"*{MAP_SUFFIX}")):
                self._load_file(path, bundled=True)
        if self.persist_dir:
            self.persist_dir.mkdir(parents=True, exist_ok=True)
            for path in sorted(self.persist_dir.glob(f"*{MAP_SUFFIX}")):
                self._load_file(path, bundled=False)

    def _load_file(self, path: Path, bundled: bool):
        doc = json.loads(path.read_text(encoding="utf-8"))
        map_id = path.name[: -len(MAP_SUFFIX)]
        self._maps[map_id] = StoredMap(map_id, load_map(doc), doc, bundled)

    def list(self):
        return list(self._maps.values())

    def get(self, map_id: str) -> StoredMap:
        return self._maps[map_id]

    def add(self, doc: dict) -> str:
        mapping = load_map(doc)
        if _node_total(mapping) > MAX_NODES:
            raise MapDocumentError(
                [f"map has {_node_total(mapping)} nodes; uploads are capped at {MAX_NODES}"]
            )
        canonical = save_map(mapping, doc.get("metadata") or {})
        with self._lock:
            map_id = f"u-{uuid.uuid4().hex[:8]}"
            while map_id in self._maps:
                map_id = f"u-{uuid.uuid4().hex[:8]}"
            self._maps[map_id] = StoredMap(map_id, mapping, canonical, bundled=False)
            if self.persist_dir:
                path = self.persist_dir / f"{map_id}{MAP_SUFFIX}"
                path.write_text(json.dumps(canonical, indent=2, ensure_ascii=False) + "\n",
                                encoding="utf-8")
        return map_id

    def delete(self, map_id: str):
        with self._lock:
            stored = self._maps[map_id]
            if stored.bundled:
                raise PermissionError(f"bundled map {map_id!r} is read-only")
            del self._maps[map_id]
            if self.persist_dir:
                path = self.persist_dir / f"{map_id}{MAP_SUFFIX}"
                if path.exists():
                    path.unlink()


def _listing_entry(stored: StoredMap) -> dict:
    mapping = stored.mapping
    entry = {
        "id": stored.id,
        "kind": stored.document["kind"],
        "variant": mapping.kind,
        "node_count": _node_total(mapping),
        "bundled": stored.bundled,
        "metadata": stored.document.get("metadata", {}),
    }
    if isinstance(mapping, RelationalMap):
        entry["domain_count"] = mapping.domain_count
        entry["range_count"] = mapping.range_count
    return entry


def create_app(
    data_dir: Optional[str] = None,
    persist_dir: Optional[str] = None,
    static_dir: Optional[str] = None,
    request_timeout: float = REQUEST_TIMEOUT,
) -> FastAPI:
    app = FastAPI(title="cogmap", version="0.1.0")
    store = MapStore(data_dir=data_dir, persist_dir=persist_dir)
    app.state.store = store
    executor = ThreadPoolExecutor(max_workers=8)

    def error(status: int, message: str, findings=None):
        body = {"error": message}
        if findings is not None:
            body["findings"] = list(findings)
        return JSONResponse(body, status_code=status)

    async def read_json(request: Request):
        body = await request.body()
        if not body:
            return {}
        return json.loads(body)

    def run_bounded(fn, *args):
        future = executor.submit(fn, *args)
        return future.result(timeout=request_timeout)

    @app.get("/api/maps")
    def list_maps():
        return {"maps": [_listing_entry(s) for s in store.list()]}

    @app.get("/api/maps/{map_id}")
    def get_map(map_id: str):
        try:
            return store.get(map_id).document
        except KeyError:
            return error(404, f"no map {map_id!r}")

    @app.post("/api/maps", status_code=201)
    async def upload_map(request: Request):
        try:
            doc = await read_json(request)
        except json.JSONDecodeError as exc:
            return error(400, "body is not valid JSON", [str(exc)])
        try:
            map_id = store.add(doc)
        except MapDocumentError as exc:
            return error(400, "map document rejected", exc.findings)
        return {"id": map_id}

    @app.post("/api/maps/{map_id}/infer")
    async def infer(map_id: str, request: Request):
        try:
            stored = store.get(map_id)
        except KeyError:
            return error(404, f"no map {map_id!r}")
        try:
            body = await read_json(request)
        except json.JSONDecodeError as exc:
            return error(400, "body is not valid JSON", [str(exc)])
        try:
            scenario = load_scenario(body)
        except MapDocumentError as exc:
            return error(400, "scenario rejected", exc.findings)
        mapping = stored.mapping
        try:
            initial = resolve_initial(mapping, scenario)
            policy = ThresholdPolicy(scenario.threshold)
            if isinstance(mapping, RelationalMap):
                pattern = run_bounded(
                    relational_hidden_pattern,
                    mapping, initial, scenario.side, policy, scenario.max_iters,
                )
            else:
                pattern = run_bounded(
                    hidden_pattern, mapping, initial, policy, scenario.max_iters
                )
        except (UnknownLabelError, DimensionMismatch) as exc:
            return error(422, str(exc))
        except FutureTimeout:
            return error(504, f"inference exceeded {request_timeout}s")
        return run_report(mapping, pattern, include_trajectory=True)

    @app.post("/api/maps/{map_id}/sweep")
    async def sweep_map(map_id: str, request: Request):
        try:
            stored = store.get(map_id)
        except KeyError:
            return error(404, f"no map {map_id!r}")
        if not isinstance(stored.mapping, CognitiveMap):
            return error(422, "sweep requires a cognitive map")
        try:
            body = await read_json(request)
        except json.JSONDecodeError as exc:
            return error(400, "body is not valid JSON", [str(exc)])
        try:
            policy = ThresholdPolicy(body.get("threshold", 1))
            max_iters = int(body.get("max_iters", 1000))
        except (TypeError, ValueError) as exc:
            return error(400, "bad sweep parameters", [str(exc)])
        try:
            entries = run_bounded(sweep, stored.mapping, policy, max_iters)
        except FutureTimeout:
            return error(504, f"sweep exceeded {request_timeout}s")
        return sweep_report(stored.mapping, entries)

    @app.delete("/api/maps/{map_id}", status_code=204)
    def delete_map(map_id: str):
        try:
            store.delete(map_id)
        except KeyError:
            return error(404, f"no map {map_id!r}")
        except PermissionError as exc:
            return error(403, str(exc))

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
