"""HTTP case-management service: the programmatic face of the pipeline.

Every response body comes straight from a library call; the service owns
case storage, locking and error mapping, never the math. Cases persist
as plain directories (original.pgm, stage PGMs, case.json) so any state
can be inspected or rebuilt with the CLI.
"""

from __future__ import annotations

import json
import os
import re
import secrets
import threading
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .errors import (
    BadHeader,
    BadMagic,
    InvalidCalibration,
    InvalidParams,
    MammosegError,
    MissingLine,
    NoReportYet,
    ParseError,
    PrerequisiteMissing,
    TruncatedRaster,
    ValidationError,
)
from .measure import Calibration, DiameterMeasurement, PixelLine, manual_distance, pixels_to_cm
from .pgm import mask_to_pgm, read_pgm, write_pgm
from .pipeline import (
    DEFAULT_STEPS,
    PipelineConfig,
    PipelineState,
    Snapshot,
    canonical_step,
    measure_auto,
    resolve_se,
    run_step,
)
from .report import (
    PatientRecord,
    PipelineStep,
    TestReport,
    generate_report,
    report_from_dict,
    report_to_dict,
    utc_now_isoformat,
)

_VALID_STEPS = {
    "median", "otsu", "morph-open", "morph-close", "open", "close",
    "erode", "dilate", "watershed", "watershed-split", "components",
}
_COMPOSITE_STEP = "run-default-pipeline"


class CaseNotFound(MammosegError):
    pass


_STATUS_BY_ERROR = {
    ValidationError: 400,
    CaseNotFound: 404,
    NoReportYet: 404,
    PrerequisiteMissing: 409,
    BadMagic: 422,
    BadHeader: 422,
    TruncatedRaster: 422,
    InvalidParams: 422,
    InvalidCalibration: 422,
    MissingLine: 422,
    ParseError: 422,
}


def _error_code(exc: MammosegError) -> str:
    name = type(exc).__name__
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).lower()


class Case:
    """One patient case: the original slide, pipeline snapshots, and any
    committed measurement / report."""

    def __init__(self, case_id: str, record: PatientRecord, created_at: str):
        self.case_id = case_id
        self.record = record
        self.created_at = created_at
        self.state: PipelineState | None = None
        self.calibration: Calibration | None = None
        self.measurement: DiameterMeasurement | None = None
        self.report: TestReport | None = None
        self.lock = threading.RLock()


class CaseStore:
    """Directory-backed case registry with per-case writer locks."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._cases: dict[str, Case] = {}
        self._registry_lock = threading.Lock()

    # -- lifecycle -------------------------------------------------------

    def create(self, record: PatientRecord) -> Case:
        case_id = secrets.token_hex(16)
        case = Case(case_id, record, utc_now_isoformat())
        with self._registry_lock:
            self._cases[case_id] = case
        with case.lock:
            self.persist(case)
        return case

    def get(self, case_id: str) -> Case:
        with self._registry_lock:
            case = self._cases.get(case_id)
        if case is None:
            case = self._load(case_id)
            if case is None:
                raise CaseNotFound(f"no case {case_id!r}")
            with self._registry_lock:
                case = self._cases.setdefault(case_id, case)
        return case

    def list_ids(self) -> list[str]:
        ids = set(self._cases)
        if self.data_dir.is_dir():
            for entry in self.data_dir.iterdir():
                if entry.is_dir() and (entry / "case.json").is_file():
                    ids.add(entry.name)
        return sorted(ids)

    def summaries(self) -> list[dict]:
        """Light-weight case listing straight from metadata; never loads
        stage rasters for cases that are not already in memory."""
        out = []
        for case_id in self.list_ids():
            with self._registry_lock:
                case = self._cases.get(case_id)
            if case is not None:
                out.append(_case_summary(case))
                continue
            meta_path = self.data_dir / case_id / "case.json"
            doc = json.loads(meta_path.read_text())
            summary = {
                "case_id": case_id,
                "patient_id": doc["patient"]["patient_id"],
                "created_at": doc["created_at"],
                "stages": doc.get("stages", []),
                "has_measurement": doc.get("measurement") is not None,
                "has_report": doc.get("report") is not None,
            }
            if "width" in doc:
                summary["width"] = doc["width"]
                summary["height"] = doc["height"]
            out.append(summary)
        return out

    # -- persistence -----------------------------------------------------

    def _case_dir(self, case_id: str) -> Path:
        if not re.fullmatch(r"[0-9a-f]{32}", case_id):
            raise CaseNotFound(f"no case {case_id!r}")
        return self.data_dir / case_id

    def persist(self, case: Case) -> None:
        cdir = self._case_dir(case.case_id)
        (cdir / "stages").mkdir(parents=True, exist_ok=True)
        doc = {
            "case_id": case.case_id,
            "created_at": case.created_at,
            "patient": {
                "patient_id": case.record.patient_id,
                "name": case.record.name,
                "age_years": case.record.age_years,
            },
            "calibration": (
                case.calibration.cm_per_pixel if case.calibration else None
            ),
            "measurement": _measurement_doc(case.measurement),
            "report": report_to_dict(case.report) if case.report else None,
            "stages": [],
            "provenance": [],
        }
        if case.state is not None:
            h, w = case.state.snapshots[0].data.shape
            doc["width"] = w
            doc["height"] = h
            doc["stages"] = [
                {"name": s.name, "kind": s.kind} for s in case.state.snapshots
            ]
            doc["provenance"] = [
                {"name": p.name, "params": dict(p.params)}
                for p in case.state.provenance
            ]
            for snap in case.state.snapshots:
                path = cdir / "stages" / f"{snap.name}.pgm"
                if not path.exists():
                    path.write_bytes(_snapshot_pgm(snap))
            original = case.state.get_snapshot("original")
            if original is not None:
                opath = cdir / "original.pgm"
                if not opath.exists():
                    opath.write_bytes(write_pgm(original.data))
        tmp = cdir / "case.json.tmp"
        tmp.write_text(json.dumps(doc, sort_keys=True, indent=1))
        os.replace(tmp, cdir / "case.json")

    def _load(self, case_id: str) -> Case | None:
        try:
            cdir = self._case_dir(case_id)
        except CaseNotFound:
            return None
        meta_path = cdir / "case.json"
        if not meta_path.is_file():
            return None
        doc = json.loads(meta_path.read_text())
        record = PatientRecord(
            patient_id=doc["patient"]["patient_id"],
            name=doc["patient"].get("name"),
            age_years=doc["patient"].get("age_years"),
        )
        case = Case(case_id, record, doc["created_at"])
        if doc.get("calibration") is not None:
            case.calibration = Calibration(doc["calibration"])
        if doc.get("measurement") is not None:
            m = doc["measurement"]
            case.measurement = DiameterMeasurement(
                pixels=m["pixels"],
                cm=m["cm"],
                method=m["method"],
                component_area_px=m.get("component_area_px"),
            )
        if doc.get("report") is not None:
            case.report = report_from_dict(doc["report"])
        if doc.get("stages"):
            case.state = _state_from_disk(cdir, doc)
        return case

    def reset_stages(self, case: Case, image: np.ndarray) -> None:
        """Replace the original image and drop all derived state."""
        cdir = self._case_dir(case.case_id)
        stages_dir = cdir / "stages"
        if stages_dir.is_dir():
            for entry in stages_dir.iterdir():
                entry.unlink()
        opath = cdir / "original.pgm"
        if opath.exists():
            opath.unlink()
        state = PipelineState(image=image)
        state.add_snapshot("original", "image", image)
        case.state = state
        case.calibration = None
        case.measurement = None
        case.report = None
        self.persist(case)


def _snapshot_pgm(snap: Snapshot) -> bytes:
    if snap.kind == "mask":
        return mask_to_pgm(snap.data)
    if snap.kind == "labels":
        labels = snap.data
        if labels.max() > 255:
            raise InvalidParams("label snapshot with more than 255 regions")
        return write_pgm(labels.astype(np.uint8))
    return write_pgm(snap.data)


def _state_from_disk(cdir: Path, doc: dict) -> PipelineState:
    snapshots: list[Snapshot] = []
    image = None
    mask = None
    labels = None
    for meta in doc["stages"]:
        raw = read_pgm((cdir / "stages" / f"{meta['name']}.pgm").read_bytes())
        if meta["kind"] == "mask":
            data: np.ndarray = raw > 0
            mask = data
            labels = None
        elif meta["kind"] == "labels":
            data = raw.astype(np.int32)
            labels = data
        else:
            data = raw
            image = raw
        snapshots.append(Snapshot(name=meta["name"], kind=meta["kind"], data=data))
    state = PipelineState(image=image if image is not None else snapshots[0].data)
    state.snapshots = snapshots
    state.mask = mask
    state.labels = labels
    state.provenance = [
        PipelineStep(name=p["name"], params=p["params"])
        for p in doc.get("provenance", [])
    ]
    return state


def _measurement_doc(m: DiameterMeasurement | None) -> dict | None:
    if m is None:
        return None
    return {
        "pixels": m.pixels,
        "cm": m.cm,
        "method": m.method,
        "component_area_px": m.component_area_px,
    }


# -- request parsing helpers ---------------------------------------------


def _field(body: dict, key: str, kind, required: bool = True, default=None):
    if key not in body or body[key] is None:
        if required:
            raise ValidationError(f"missing field {key!r}", key)
        return default
    value = body[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(f"{key} must be a number", key)
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"{key} must be an integer", key)
        return value
    if not isinstance(value, kind):
        raise ValidationError(f"{key} must be {kind.__name__}", key)
    return value


def _config_from_params(params: dict) -> PipelineConfig:
    config = PipelineConfig()
    if "window" in params:
        config.median_window = _field(params, "window", int)
    if "se" in params:
        config.se_name = _field(params, "se", str)
        resolve_se(config.se_name)
    if "invert" in params:
        config.invert = _field(params, "invert", bool)
    if "h_min" in params:
        config.h_min = _field(params, "h_min", float)
        if config.h_min < 0:
            raise InvalidParams("h_min must be >= 0")
    if "connectivity" in params:
        config.connectivity = _field(params, "connectivity", int)
        if config.connectivity not in (4, 8):
            raise InvalidParams("connectivity must be 4 or 8")
    if "min_area" in params:
        config.min_area = _field(params, "min_area", int)
        if config.min_area < 1:
            raise InvalidParams("min_area must be >= 1")
    known = {"window", "se", "invert", "h_min", "connectivity", "min_area"}
    for key in params:
        if key not in known:
            raise InvalidParams(f"unknown step parameter {key!r}")
    return config


def create_app(data_dir: str | Path, ui_dir: str | Path | None = None) -> FastAPI:
    """Build the service around a case directory; `ui_dir` optionally
    mounts a built single-page UI at the root."""
    app = FastAPI(title="mammoseg case service")
    store = CaseStore(data_dir)
    app.state.store = store
    # the browser UI may be served from another origin; there is no auth
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(MammosegError)
    async def _mammoseg_error(request: Request, exc: MammosegError):
        status = 422
        for cls, code in _STATUS_BY_ERROR.items():
            if isinstance(exc, cls):
                status = code
                break
        body = {"error_code": _error_code(exc), "message": str(exc)}
        field = getattr(exc, "field", None)
        if field:
            body["field"] = field
        return JSONResponse(status_code=status, content=body)

    async def _json_body(request: Request) -> dict:
        raw = await request.body()
        if not raw:
            return {}
        try:
            body = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"request body is not valid JSON: {exc}")
        if not isinstance(body, dict):
            raise ValidationError("request body must be a JSON object")
        return body

    @app.post("/cases", status_code=201)
    async def create_case(request: Request):
        body = await _json_body(request)
        record = PatientRecord(
            patient_id=_field(body, "patient_id", str),
            name=_field(body, "name", str, required=False),
            age_years=_field(body, "age_years", int, required=False),
        )
        case = store.create(record)
        return {"case_id": case.case_id}

    @app.get("/cases")
    async def list_cases():
        return {"cases": store.summaries()}

    @app.get("/cases/{case_id}")
    async def case_detail(case_id: str):
        case = store.get(case_id)
        detail = _case_summary(case)
        detail["measurement"] = _measurement_doc(case.measurement)
        detail["calibration"] = (
            case.calibration.cm_per_pixel if case.calibration else None
        )
        return detail

    @app.post("/cases/{case_id}/image")
    async def upload_image(case_id: str, request: Request):
        case = store.get(case_id)
        data = await request.body()
        image = read_pgm(data)
        with case.lock:
            store.reset_stages(case, image)
        h, w = image.shape
        return {"width": w, "height": h}

    @app.post("/cases/{case_id}/steps/{step}")
    async def execute_step(case_id: str, step: str, request: Request):
        case = store.get(case_id)
        body = await _json_body(request)
        config = _config_from_params(body)
        with case.lock:
            if case.state is None:
                raise PrerequisiteMissing("upload an image before running steps")
            if step == _COMPOSITE_STEP:
                outputs = {}
                stages = []
                for name in DEFAULT_STEPS:
                    result = run_step(case.state, name, config)
                    stages.append(result.pop("stage"))
                    outputs[name] = result
                store.persist(case)
                return {"step": step, "stages": stages, "outputs": outputs}
            if step not in _VALID_STEPS:
                raise InvalidParams(f"unknown step {step!r}")
            result = run_step(case.state, step, config)
            store.persist(case)
        result["step"] = canonical_step(step)
        result["params"] = dict(body)
        return result

    @app.get("/cases/{case_id}/stages/{name}")
    async def fetch_stage(case_id: str, name: str):
        case = store.get(case_id)
        if case.state is None:
            raise CaseNotFound(f"case {case_id} has no stages")
        snap = case.state.get_snapshot(name)
        if snap is None:
            raise CaseNotFound(f"no stage {name!r}")
        return Response(
            content=_snapshot_pgm(snap), media_type="image/x-portable-graymap"
        )

    @app.get("/cases/{case_id}/histogram")
    async def fetch_histogram(case_id: str):
        from .imaging import histogram

        case = store.get(case_id)
        if case.state is None:
            raise PrerequisiteMissing("upload an image before requesting a histogram")
        return [int(c) for c in histogram(case.state.image)]

    @app.post("/cases/{case_id}/measurement")
    async def set_measurement(case_id: str, request: Request):
        case = store.get(case_id)
        body = await _json_body(request)
        mode = _field(body, "mode", str)
        if mode not in ("auto", "manual"):
            raise ValidationError("mode must be 'auto' or 'manual'", "mode")
        cm_per_pixel = _field(body, "cm_per_pixel", float)
        try:
            cal = Calibration(cm_per_pixel)
        except InvalidCalibration:
            raise InvalidCalibration(
                f"cm_per_pixel must be positive and finite, got {cm_per_pixel}"
            )
        with case.lock:
            if case.state is None:
                raise PrerequisiteMissing("upload an image before measuring")
            if mode == "auto":
                if case.state.mask is None:
                    raise PrerequisiteMissing("automatic measurement requires a mask stage")
                min_area = _field(body, "min_area", int, required=False, default=5)
                measurement = measure_auto(case.state, cal, min_area=min_area)
            else:
                line_doc = _field(body, "line", dict, required=False)
                if line_doc is None:
                    raise MissingLine("manual measurement requires line endpoints")
                line = _parse_line(line_doc, case.state)
                px = manual_distance(line)
                measurement = DiameterMeasurement(
                    pixels=px, cm=pixels_to_cm(px, cal), method="manual"
                )
                case.state.provenance.append(
                    PipelineStep("measure", {"method": "manual"})
                )
            case.calibration = cal
            case.measurement = measurement
            case.report = None
            store.persist(case)
        return _measurement_doc(measurement)

    @app.get("/cases/{case_id}/report")
    async def fetch_report(case_id: str, generate: bool = False):
        case = store.get(case_id)
        with case.lock:
            if generate:
                if case.measurement is None or case.calibration is None:
                    raise PrerequisiteMissing("commit a measurement before a report")
                provenance = case.state.provenance if case.state else []
                case.report = generate_report(
                    case.record, case.measurement, case.calibration, provenance
                )
                store.persist(case)
            if case.report is None:
                raise NoReportYet(f"case {case_id} has no stored report")
            return report_to_dict(case.report)

    if ui_dir is not None:
        # mounted last so API routes take precedence
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def _case_summary(case: Case) -> dict:
    doc = {
        "case_id": case.case_id,
        "patient_id": case.record.patient_id,
        "created_at": case.created_at,
        "stages": [],
        "has_measurement": case.measurement is not None,
        "has_report": case.report is not None,
    }
    if case.state is not None:
        doc["stages"] = [
            {"name": s.name, "kind": s.kind} for s in case.state.snapshots
        ]
        h, w = case.state.snapshots[0].data.shape
        doc["width"] = w
        doc["height"] = h
    return doc


def _parse_line(doc: dict, state: PipelineState) -> PixelLine:
    x1 = _field(doc, "x1", float)
    y1 = _field(doc, "y1", float)
    x2 = _field(doc, "x2", float)
    y2 = _field(doc, "y2", float)
    h, w = state.image.shape
    clamp = lambda v, hi: min(max(v, -0.5), hi - 0.5)
    return PixelLine(
        p1=(clamp(x1, w), clamp(y1, h)),
        p2=(clamp(x2, w), clamp(y2, h)),
    )
