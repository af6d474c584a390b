"""End-to-end segmentation pipeline: denoise, threshold, clean, split,
then measure. The step order follows the flow diagram the whole artifact
reproduces, with the erosion/dilation ambiguity resolved as opening then
closing (remove speckle, then fill pits); any other order can be
requested explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .errors import InvalidParams, PrerequisiteMissing
from .imaging import binarize, histogram, median_filter, otsu_threshold
from .measure import Calibration, DiameterMeasurement, feret_diameter, pixels_to_cm, select_tumor_component
from .morphology import StructuringElement, closing, dilate, erode, opening
from .regions import RegionStats, connected_components, distance_transform, region_stats
from .report import PipelineStep
from .watershed import find_markers, watershed

DEFAULT_STEPS = ("median", "otsu", "open", "close", "watershed", "components")

_SE_NAMES = {
    "square3": lambda: StructuringElement.square(3),
    "square5": lambda: StructuringElement.square(5),
    "cross3": lambda: StructuringElement.cross(3),
}

_STEP_ALIASES = {
    "morph-open": "open",
    "morph-close": "close",
    "watershed-split": "watershed",
}


def resolve_se(name: str) -> StructuringElement:
    if name not in _SE_NAMES:
        raise InvalidParams(f"unknown structuring element {name!r}; "
                            f"choose one of {sorted(_SE_NAMES)}")
    return _SE_NAMES[name]()


@dataclass
class PipelineConfig:
    median_window: int = 3
    se_name: str = "square3"
    connectivity: int = 8
    h_min: float = 1.0
    min_area: int = 5
    invert: bool = False

    @property
    def se(self) -> StructuringElement:
        return resolve_se(self.se_name)


@dataclass(frozen=True)
class Snapshot:
    """One stored intermediate: kind is 'image', 'mask' or 'labels'."""

    name: str
    kind: str
    data: np.ndarray


@dataclass
class PipelineState:
    """Mutable run state threaded through the steps."""

    image: np.ndarray
    mask: np.ndarray | None = None
    labels: np.ndarray | None = None
    stats: list[RegionStats] | None = None
    snapshots: list[Snapshot] = dataclass_field(default_factory=list)
    provenance: list[PipelineStep] = dataclass_field(default_factory=list)

    def snapshot_name(self, base: str) -> str:
        taken = {s.name for s in self.snapshots}
        if base not in taken:
            return base
        n = 2
        while f"{base}-{n}" in taken:
            n += 1
        return f"{base}-{n}"

    def add_snapshot(self, base: str, kind: str, data: np.ndarray) -> str:
        name = self.snapshot_name(base)
        self.snapshots.append(Snapshot(name=name, kind=kind, data=data))
        return name

    def get_snapshot(self, name: str) -> Snapshot | None:
        for snap in self.snapshots:
            if snap.name == name:
                return snap
        return None


def canonical_step(name: str) -> str:
    return _STEP_ALIASES.get(name, name)


def run_step(state: PipelineState, step: str, config: PipelineConfig) -> dict:
    """Execute one named step against the state; returns the step's
    scalar outputs (threshold, region count, ...) and records a snapshot
    plus a provenance entry.
    """
    step = canonical_step(step)
    if step == "median":
        state.image = median_filter(state.image, config.median_window)
        name = state.add_snapshot("median", "image", state.image)
        state.provenance.append(
            PipelineStep("median", {"window": config.median_window})
        )
        return {"stage": name}
    if step == "otsu":
        t = otsu_threshold(histogram(state.image))
        state.mask = binarize(state.image, t, invert=config.invert)
        state.labels = None
        state.stats = None
        name = state.add_snapshot("otsu", "mask", state.mask)
        state.provenance.append(
            PipelineStep("otsu", {"threshold": t, "invert": config.invert})
        )
        return {"stage": name, "threshold": t}
    if step in ("open", "close", "erode", "dilate"):
        if state.mask is None:
            raise PrerequisiteMissing(f"step {step!r} requires a mask stage")
        op = {"open": opening, "close": closing, "erode": erode, "dilate": dilate}[step]
        state.mask = op(state.mask, config.se)
        state.labels = None
        state.stats = None
        name = state.add_snapshot(step, "mask", state.mask)
        state.provenance.append(PipelineStep(step, {"se": config.se_name}))
        return {"stage": name}
    if step == "watershed":
        if state.mask is None:
            raise PrerequisiteMissing("watershed requires a mask stage")
        if state.mask.any():
            field = -distance_transform(state.mask)
            markers = find_markers(field, state.mask, h=config.h_min)
            state.labels = watershed(field, markers, state.mask)
        else:
            state.labels = np.zeros(state.mask.shape, dtype=np.int32)
        state.stats = region_stats(state.labels)
        name = state.add_snapshot("watershed", "labels", state.labels)
        state.provenance.append(PipelineStep("watershed", {"h_min": config.h_min}))
        return {"stage": name, "regions": len(state.stats)}
    if step == "components":
        if state.labels is None:
            if state.mask is None:
                raise PrerequisiteMissing("components requires a mask or label stage")
            state.labels, state.stats = connected_components(
                state.mask, config.connectivity
            )
        else:
            state.stats = region_stats(state.labels)
        name = state.add_snapshot("components", "labels", state.labels)
        state.provenance.append(
            PipelineStep("components", {"connectivity": config.connectivity})
        )
        return {
            "stage": name,
            "regions": len(state.stats),
            "areas": {str(s.label): s.area for s in state.stats},
        }
    raise InvalidParams(f"unknown pipeline step {step!r}")


def run_steps(
    image: np.ndarray,
    steps: tuple[str, ...] = DEFAULT_STEPS,
    config: PipelineConfig | None = None,
) -> PipelineState:
    config = config or PipelineConfig()
    state = PipelineState(image=image)
    state.add_snapshot("original", "image", image)
    for step in steps:
        run_step(state, step, config)
    return state


def measure_auto(
    state: PipelineState, cal: Calibration | None, min_area: int = 5
) -> DiameterMeasurement:
    """Automatic diameter of the dominant segmented component; an empty
    segmentation measures 0 (the no-lump path). Without a calibration the
    cm value is reported as 0 and only pixels are meaningful.
    """
    if state.mask is None:
        raise PrerequisiteMissing("automatic measurement requires a mask stage")
    if state.labels is None or state.stats is None:
        state.labels, state.stats = connected_components(state.mask)
    chosen = select_tumor_component(state.stats, min_area=min_area)
    if chosen is None:
        pixels, area = 0.0, 0
    else:
        pixels = feret_diameter(state.labels == chosen)
        area = next(s.area for s in state.stats if s.label == chosen)
    cm = pixels_to_cm(pixels, cal) if cal is not None else 0.0
    state.provenance.append(PipelineStep("measure", {"min_area": min_area}))
    return DiameterMeasurement(
        pixels=pixels, cm=cm, method="auto", component_area_px=area
    )
