"""Patient test report assembly, rendering and canonical serialization.

Classifications are always recomputed from the measured diameter when a
report is generated, so a stored report can never disagree with the
rules. The serialized form is canonical JSON (sorted keys, no
insignificant whitespace); reads are strict and reject unknown fields.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from decimal import ROUND_HALF_UP, Decimal

from .classify import (
    RiskStage,
    TCategory,
    TumorType,
    classify_risk,
    classify_t_category,
    classify_type,
)
from .errors import ParseError, ValidationError
from .measure import Calibration, DiameterMeasurement

_TIME_FORMAT = "%Y-%m-%dT%H:%M:%SZ"

_RISK_WORDING = {
    RiskStage.NO_RISK: "no risk",
    RiskStage.LOW: "low risk",
    RiskStage.LOW_MEDIUM: "low to medium risk",
    RiskStage.HIGH: "high risk",
}


@dataclass(frozen=True)
class PatientRecord:
    patient_id: str
    name: str | None = None
    age_years: int | None = None

    def __post_init__(self):
        if not isinstance(self.patient_id, str) or not self.patient_id:
            raise ValidationError("patient_id must be a nonempty string", "patient_id")
        if self.age_years is not None and self.age_years <= 0:
            raise ValidationError("age_years must be positive", "age_years")


@dataclass(frozen=True)
class PipelineStep:
    """One executed pipeline step with the parameters actually applied."""

    name: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TestReport:
    record: PatientRecord
    generated_at: str  # UTC ISO-8601, seconds precision
    diameter_px: float
    diameter_cm: float
    method: str  # "auto" | "manual"
    cm_per_pixel: float
    tumor_type: TumorType
    risk_stage: RiskStage
    t_category: TCategory | None
    provenance: tuple[PipelineStep, ...]


def round_half_up(value: float, digits: int = 2) -> float:
    """Decimal display rounding, .005 always rounding away from zero."""
    q = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP))


def utc_now_isoformat() -> str:
    return datetime.now(timezone.utc).strftime(_TIME_FORMAT)


def generate_report(
    record: PatientRecord,
    measurement: DiameterMeasurement,
    cal: Calibration,
    provenance: list[PipelineStep] | tuple[PipelineStep, ...] = (),
    generated_at: str | None = None,
) -> TestReport:
    """Build a report for one measurement; type, risk and size category
    are recomputed here from the diameter, never taken from the caller.
    `generated_at` is injectable for reproducible batch artifacts.
    """
    d_cm = measurement.cm
    tumor_type = classify_type(d_cm)
    risk_stage = classify_risk(d_cm)
    t_cat = None if d_cm == 0 else classify_t_category(d_cm * 10.0)
    return TestReport(
        record=record,
        generated_at=generated_at if generated_at is not None else utc_now_isoformat(),
        diameter_px=float(measurement.pixels),
        diameter_cm=float(d_cm),
        method=measurement.method,
        cm_per_pixel=cal.cm_per_pixel,
        tumor_type=tumor_type,
        risk_stage=risk_stage,
        t_category=t_cat,
        provenance=tuple(provenance),
    )


def render_report_text(report: TestReport) -> str:
    """Deterministic plain-text report; benign/malignant findings keep
    their hedged "possibility to be ..." wording.
    """
    rec = report.record
    lines = [
        "PATIENT TEST REPORT",
        "===================",
        f"Patient ID : {rec.patient_id}",
        f"Name       : {rec.name if rec.name is not None else '-'}",
        f"Age        : {rec.age_years if rec.age_years is not None else '-'}",
        f"Generated  : {report.generated_at}",
        "",
        f"Tumor diameter : {round_half_up(report.diameter_px):.2f} px"
        f" = {round_half_up(report.diameter_cm):.2f} cm ({report.method})",
        f"Calibration    : {report.cm_per_pixel} cm/px",
    ]
    if report.tumor_type is TumorType.HEALTHY:
        lines.append("Finding        : healthy breast with no lump")
    else:
        lines.append(
            f"Finding        : possibility to be {report.tumor_type.value} tumor"
        )
    lines.append(f"Risk stage     : {_RISK_WORDING[report.risk_stage]}")
    if report.t_category is not None:
        lines.append(f"Size category  : {report.t_category.value}")
    lines.append("")
    if report.provenance:
        steps = " -> ".join(
            _format_step(step) for step in report.provenance
        )
        lines.append(f"Pipeline: {steps}")
    else:
        lines.append("Pipeline: (none recorded)")
    return "\n".join(lines) + "\n"


def _format_step(step: PipelineStep) -> str:
    if not step.params:
        return step.name
    params = ", ".join(f"{k}={step.params[k]}" for k in sorted(step.params))
    return f"{step.name}({params})"


def report_to_dict(report: TestReport) -> dict:
    """Report as a plain JSON-shaped dict (the document schema)."""
    doc = {
        "record": {
            "patient_id": report.record.patient_id,
            "name": report.record.name,
            "age_years": report.record.age_years,
        },
        "generated_at": report.generated_at,
        "diameter_px": report.diameter_px,
        "diameter_cm": report.diameter_cm,
        "method": report.method,
        "cm_per_pixel": report.cm_per_pixel,
        "tumor_type": report.tumor_type.value,
        "risk_stage": report.risk_stage.value,
        "provenance": [
            {"name": s.name, "params": dict(s.params)} for s in report.provenance
        ],
    }
    if report.t_category is not None:
        doc["t_category"] = report.t_category.value
    return doc


def serialize_report(report: TestReport) -> str:
    """Canonical JSON: sorted keys, compact separators; healthy reports
    omit the size category entirely.
    """
    return json.dumps(report_to_dict(report), sort_keys=True, separators=(",", ":"))


def _want(doc: dict, key: str, kind, path: str, optional: bool = False):
    if key not in doc:
        if optional:
            return None
        raise ParseError(f"{path}{key}", "missing field")
    value = doc[key]
    if optional and value is None:
        return None
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"{path}{key}", f"expected a number, got {value!r}")
        return float(value)
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise ParseError(f"{path}{key}", f"expected {kind.__name__}, got {value!r}")
    return value


def _reject_unknown(doc: dict, allowed: set[str], path: str = ""):
    for key in doc:
        if key not in allowed:
            raise ParseError(f"{path}{key}", "unknown field")


def report_from_dict(doc: dict) -> TestReport:
    """Strict inverse of report_to_dict; raises ParseError with the
    offending field path, and re-checks classification consistency.
    """
    if not isinstance(doc, dict):
        raise ParseError("", "expected a JSON object")
    _reject_unknown(
        doc,
        {
            "record", "generated_at", "diameter_px", "diameter_cm", "method",
            "cm_per_pixel", "tumor_type", "risk_stage", "t_category", "provenance",
        },
    )
    rec_doc = _want(doc, "record", dict, "")
    _reject_unknown(rec_doc, {"patient_id", "name", "age_years"}, "record.")
    patient_id = _want(rec_doc, "patient_id", str, "record.")
    if not patient_id:
        raise ParseError("record.patient_id", "must be nonempty")
    name = _want(rec_doc, "name", str, "record.", optional=True)
    age = _want(rec_doc, "age_years", int, "record.", optional=True)
    try:
        record = PatientRecord(patient_id=patient_id, name=name, age_years=age)
    except ValidationError as exc:
        raise ParseError(f"record.{exc.field}", str(exc)) from exc

    generated_at = _want(doc, "generated_at", str, "")
    try:
        datetime.strptime(generated_at, _TIME_FORMAT)
    except ValueError as exc:
        raise ParseError("generated_at", f"bad timestamp: {exc}") from exc
    diameter_px = _want(doc, "diameter_px", float, "")
    diameter_cm = _want(doc, "diameter_cm", float, "")
    method = _want(doc, "method", str, "")
    if method not in ("auto", "manual"):
        raise ParseError("method", f"expected 'auto' or 'manual', got {method!r}")
    cm_per_pixel = _want(doc, "cm_per_pixel", float, "")

    tumor_type = _parse_enum(doc, "tumor_type", TumorType)
    risk_stage = _parse_enum(doc, "risk_stage", RiskStage)
    t_category = (
        _parse_enum(doc, "t_category", TCategory) if "t_category" in doc else None
    )

    prov_doc = _want(doc, "provenance", list, "")
    provenance = []
    for i, item in enumerate(prov_doc):
        path = f"provenance[{i}]."
        if not isinstance(item, dict):
            raise ParseError(f"provenance[{i}]", "expected an object")
        _reject_unknown(item, {"name", "params"}, path)
        step_name = _want(item, "name", str, path)
        params = _want(item, "params", dict, path)
        provenance.append(PipelineStep(name=step_name, params=params))

    # the stored classifications must match a fresh run of the rules
    if classify_type(diameter_cm) is not tumor_type:
        raise ParseError("tumor_type", "inconsistent with diameter_cm")
    if classify_risk(diameter_cm) is not risk_stage:
        raise ParseError("risk_stage", "inconsistent with diameter_cm")
    expected_t = None if diameter_cm == 0 else classify_t_category(diameter_cm * 10.0)
    if expected_t is not t_category:
        raise ParseError("t_category", "inconsistent with diameter_cm")

    return TestReport(
        record=record,
        generated_at=generated_at,
        diameter_px=diameter_px,
        diameter_cm=diameter_cm,
        method=method,
        cm_per_pixel=cm_per_pixel,
        tumor_type=tumor_type,
        risk_stage=risk_stage,
        t_category=t_category,
        provenance=tuple(provenance),
    )


def _parse_enum(doc: dict, key: str, enum_cls):
    raw = _want(doc, key, str, "")
    for member in enum_cls:
        if member.value == raw:
            return member
    raise ParseError(key, f"unknown value {raw!r}")


def deserialize_report(text: str) -> TestReport:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("", f"invalid JSON: {exc}") from exc
    return report_from_dict(doc)
