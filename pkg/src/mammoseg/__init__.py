"""Tumor measurement toolkit for grayscale mammogram-style rasters.

Segment a bright lesion (median filter, Otsu threshold, binary
morphology, distance-transform watershed), measure its diameter in
pixels and centimeters, classify type / risk stage / size category from
the diameter, and emit a patient test report. A batch CLI and an HTTP
case service wrap the same library calls.

These size rules are a research reimplementation of a published
workflow, not medical advice.
"""

from .classify import (
    RiskStage,
    TCategory,
    TumorType,
    classify_risk,
    classify_t_category,
    classify_type,
)
from .errors import MammosegError
from .imaging import binarize, histogram, median_filter, otsu_threshold
from .measure import (
    Calibration,
    DiameterMeasurement,
    PixelLine,
    feret_diameter,
    manual_distance,
    pixels_to_cm,
    select_tumor_component,
)
from .morphology import StructuringElement, closing, dilate, erode, opening
from .pgm import mask_to_pgm, pgm_to_mask, read_pgm, write_pgm
from .pipeline import (
    DEFAULT_STEPS,
    PipelineConfig,
    PipelineState,
    measure_auto,
    run_step,
    run_steps,
)
from .regions import RegionStats, connected_components, distance_transform, region_stats
from .report import (
    PatientRecord,
    PipelineStep,
    TestReport,
    deserialize_report,
    generate_report,
    render_report_text,
    serialize_report,
)
from .watershed import find_markers, watershed

__version__ = "0.1.0"

__all__ = [
    "Calibration",
    "DEFAULT_STEPS",
    "DiameterMeasurement",
    "MammosegError",
    "PatientRecord",
    "PipelineConfig",
    "PipelineState",
    "PipelineStep",
    "PixelLine",
    "RegionStats",
    "RiskStage",
    "StructuringElement",
    "TCategory",
    "TestReport",
    "TumorType",
    "binarize",
    "classify_risk",
    "classify_t_category",
    "classify_type",
    "closing",
    "connected_components",
    "deserialize_report",
    "dilate",
    "distance_transform",
    "erode",
    "feret_diameter",
    "find_markers",
    "generate_report",
    "histogram",
    "manual_distance",
    "mask_to_pgm",
    "measure_auto",
    "median_filter",
    "opening",
    "otsu_threshold",
    "pgm_to_mask",
    "pixels_to_cm",
    "read_pgm",
    "region_stats",
    "render_report_text",
    "run_step",
    "run_steps",
    "select_tumor_component",
    "serialize_report",
    "watershed",
    "write_pgm",
]
