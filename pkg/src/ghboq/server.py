"""HTTP service exposing the estimation engine.

Estimation is snapshot-pure: each request reads one immutable pricebook
snapshot, so concurrent requests cannot observe partial override
writes. Override writes are serialized behind a single lock and can be
made conditional on the current version (409 on mismatch, retry with
the returned version).
"""

from __future__ import annotations

import os
import threading

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .building import parse_spec
from .errors import (
    EngineError,
    ParseError,
    UnknownCase,
    UnknownFormat,
    UnknownMaterial,
    UnknownRegion,
    ValidationError,
)
from .estimator import EstimateFlags, estimate
from .export import ENGINE_VERSION, estimate_to_dict, gap_to_dict
from .fixtures import case_request_document
from .gap import gap as gap_report
from .geometry import parse_layout
from .pricebook import (
    PriceBook,
    Region,
    apply_override,
    default_pricebook,
    load_pricebook,
    parse_price,
    save_pricebook,
)

__all__ = ["create_app", "PriceBookStore", "VersionConflict"]


class VersionConflict(EngineError):
    def __init__(self, expected: str, current: str):
        self.expected = expected
        self.current = current
        super().__init__(
            f"pricebook version conflict: expected {expected!r} but the "
            f"current version is {current!r}; re-read and retry"
        )


class PriceBookStore:
    """Single-writer pricebook holder, optionally file-backed."""

    def __init__(self, store_path: str | None = None):
        self._lock = threading.Lock()
        self._path = store_path
        if store_path and os.path.exists(store_path):
            self._book = load_pricebook(store_path)
        else:
            self._book = default_pricebook()

    def snapshot(self) -> PriceBook:
        with self._lock:
            return self._book

    def put_overrides(
        self, overrides: dict[str, object], expected_version: str | None
    ) -> PriceBook:
        with self._lock:
            book = self._book
            if expected_version is not None and expected_version != book.version:
                raise VersionConflict(expected_version, book.version)
            for material, price in overrides.items():
                price_m = parse_price(f"overrides.{material}", price)
                book = apply_override(book, material, price_m)
            if self._path:
                save_pricebook(book, self._path)
            self._book = book
            return book


def _versioned(book: PriceBook, body: dict) -> dict:
    body.setdefault("engine_version", ENGINE_VERSION)
    body.setdefault("pricebook_version", book.version)
    return body


def _estimate_from_payload(payload: dict, book: PriceBook):
    if not isinstance(payload, dict):
        raise ParseError("request body must be an object")
    if "spec" not in payload:
        raise ValidationError("spec", "is required")
    spec = parse_spec(payload["spec"])
    layout = None
    if payload.get("layout") is not None:
        layout = parse_layout(payload["layout"])
    region = None
    if payload.get("region") is not None:
        raw = payload["region"]
        try:
            region = Region(raw)
        except ValueError:
            raise UnknownRegion(str(raw)) from None
    flags_doc = payload.get("flags") or {}
    if not isinstance(flags_doc, dict):
        raise ValidationError("flags", "must be an object")
    flags = EstimateFlags.from_dict(flags_doc)
    inline = payload.get("overrides") or {}
    if not isinstance(inline, dict):
        raise ValidationError("overrides", "must be an object of material: price")
    for material, price in inline.items():
        book = apply_override(book, material, parse_price(f"overrides.{material}", price))
    return estimate(spec, book, layout, region=region, flags=flags), book


def create_app(store_path: str | None = None) -> FastAPI:
    app = FastAPI(title="ghboq", version=ENGINE_VERSION, docs_url=None, redoc_url=None)
    # Browser clients are served from their own origin during development.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST", "PUT"],
        allow_headers=["content-type"],
    )
    store = PriceBookStore(store_path)
    app.state.store = store

    @app.exception_handler(EngineError)
    async def on_engine_error(_request: Request, exc: EngineError):
        if isinstance(exc, VersionConflict):
            status = 409
            extra = {"current_version": exc.current, "guidance": "re-read and retry"}
        elif isinstance(exc, (UnknownCase, UnknownRegion, UnknownMaterial)):
            status = 404
            extra = {}
        elif isinstance(exc, UnknownFormat):
            status = 400
            extra = {}
        else:
            status = 400
            extra = {}
            if isinstance(exc, ValidationError):
                extra = {"field": exc.field}
        body = {"error": {"type": type(exc).__name__, "message": str(exc), **extra}}
        return JSONResponse(status_code=status, content=body)

    @app.post("/v1/estimate")
    async def post_estimate(request: Request):
        payload = await _json_body(request)
        est, book = _estimate_from_payload(payload, store.snapshot())
        return _versioned(book, {"estimate": estimate_to_dict(est)})

    @app.post("/v1/gap")
    async def post_gap(request: Request):
        payload = await _json_body(request)
        est, book = _estimate_from_payload(payload, store.snapshot())
        report = gap_report(est, book.informal_band)
        return _versioned(
            book,
            {"gap": gap_to_dict(report), "estimate": estimate_to_dict(est)},
        )

    @app.get("/v1/pricebook")
    async def get_pricebook():
        book = store.snapshot()
        return _versioned(book, {"pricebook": _pricebook_doc(book)})

    @app.put("/v1/pricebook/overrides")
    async def put_overrides(request: Request):
        payload = await _json_body(request)
        if not isinstance(payload, dict) or not isinstance(payload.get("overrides"), dict):
            raise ValidationError("overrides", "must be an object of material: price")
        expected = payload.get("expected_version")
        if expected is not None and not isinstance(expected, str):
            raise ValidationError("expected_version", "must be a string")
        book = store.put_overrides(payload["overrides"], expected)
        return _versioned(
            book,
            {"overrides": {m.value: p.format() for m, p in sorted(book.overrides.items())}},
        )

    @app.get("/v1/regions")
    async def get_regions():
        book = store.snapshot()
        regions = [
            {
                "id": region.value,
                "manufactured_factor": str(mult.manufactured_factor),
                "local_factor": str(mult.local_factor),
            }
            for region, mult in sorted(book.regions.items(), key=lambda kv: kv[0].value)
        ]
        return _versioned(book, {"regions": regions})

    @app.get("/v1/cases/{case_id}")
    async def get_case(case_id: str):
        book = store.snapshot()
        return _versioned(book, {"case": case_request_document(case_id)})

    return app


async def _json_body(request: Request) -> dict:
    try:
        return await request.json()
    except Exception:
        raise ParseError("request body is not valid JSON") from None


def _pricebook_doc(book: PriceBook) -> dict:
    return {
        "version": book.version,
        "labour_rate_per_m2": book.labour_rate_per_m2.format(),
        "defaults": {m.value: p.format() for m, p in sorted(book.defaults.items())},
        "overrides": {m.value: p.format() for m, p in sorted(book.overrides.items())},
        "features": {key: p.format() for key, p in sorted(book.features.items())},
        "fees": {
            "design_base": book.fees.design_base.format(),
            "permit_base": book.fees.permit_base.format(),
            "utility_connection": book.fees.utility_connection.format(),
            "design_multi_factor": str(book.fees.design_multi_factor),
            "permit_multi_factor": str(book.fees.permit_multi_factor),
        },
        "informal_band": {
            "low_per_m2": book.informal_band.low_per_m2.format(),
            "high_per_m2": book.informal_band.high_per_m2.format(),
        },
        "gap_omitted_items": list(book.gap_omitted_items),
    }
