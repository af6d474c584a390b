"""Diameter measurement: pick the tumor component, take its maximum
caliper (Feret) diameter or a hand-placed line length, and convert
pixels to centimeters through the operator-supplied calibration.

There is deliberately no default calibration; a silent wrong scale would
corrupt the staging downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyComponent, InvalidCalibration
from .regions import RegionStats


@dataclass(frozen=True)
class Calibration:
    """Physical scale of the image: centimeters per pixel."""

    cm_per_pixel: float

    def __post_init__(self):
        if not (math.isfinite(self.cm_per_pixel) and self.cm_per_pixel > 0):
            raise InvalidCalibration(
                f"cm_per_pixel must be positive and finite, got {self.cm_per_pixel}"
            )


@dataclass(frozen=True)
class PixelLine:
    """Two endpoints in (x, y) pixel coordinates; subpixel positions allowed."""

    p1: tuple[float, float]
    p2: tuple[float, float]


@dataclass(frozen=True)
class DiameterMeasurement:
    """A measured diameter in pixels and centimeters.

    `cm` always equals `pixels * cm_per_pixel` of the calibration used;
    display rounding happens only at the report/UI layer.
    """

    pixels: float
    cm: float
    method: str  # "auto" | "manual"
    component_area_px: int | None = None

    @property
    def meters(self) -> float:
        return self.cm / 100.0


def select_tumor_component(
    stats: list[RegionStats], min_area: int = 5
) -> int | None:
    """Label of the largest component with area >= min_area; ties go to
    the smallest label; None when nothing qualifies (no lump found).
    """
    if min_area < 1:
        raise ValueError(f"min_area must be >= 1, got {min_area}")
    best: RegionStats | None = None
    for s in stats:
        if s.area < min_area:
            continue
        if best is None or s.area > best.area:
            best = s
    return None if best is None else best.label


def feret_diameter(mask: np.ndarray) -> float:
    """Maximum distance between centers of any two foreground pixels.

    Computed over the convex hull of the pixel centers; a single pixel
    measures 0.
    """
    mask = np.asarray(mask, dtype=bool)
    ys, xs = np.nonzero(mask)
    if len(ys) == 0:
        raise EmptyComponent("component has no pixels")
    if len(ys) == 1:
        return 0.0
    pts = _convex_hull(list(zip(xs.tolist(), ys.tolist())))
    best = 0
    for i in range(len(pts)):
        x1, y1 = pts[i]
        for j in range(i + 1, len(pts)):
            x2, y2 = pts[j]
            d = (x1 - x2) ** 2 + (y1 - y2) ** 2
            if d > best:
                best = d
    return math.sqrt(best)


def _convex_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Andrew's monotone chain; returns hull vertices (collinear dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[int, int]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[int, int]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def manual_distance(line: PixelLine) -> float:
    """Euclidean length of a hand-placed line."""
    return math.hypot(line.p2[0] - line.p1[0], line.p2[1] - line.p1[1])


def pixels_to_cm(pixels: float, cal: Calibration) -> float:
    """Convert a pixel distance to centimeters via the calibration factor."""
    if not (math.isfinite(pixels) and pixels >= 0):
        raise ValueError(f"pixel distance must be >= 0, got {pixels}")
    return pixels * cal.cm_per_pixel
