"""Connected components, per-region statistics and the exact Euclidean
distance transform used as the watershed flooding surface.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

_STRUCT_4 = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
_STRUCT_8 = np.ones((3, 3), dtype=bool)


@dataclass(frozen=True)
class RegionStats:
    """Geometry summary of one labeled region.

    bbox is (top, left, bottom, right) with inclusive pixel indices;
    centroid is (cy, cx) in pixel-center coordinates.
    """

    label: int
    area: int
    bbox: tuple[int, int, int, int]
    centroid: tuple[float, float]


def _validate_mask(mask: np.ndarray) -> np.ndarray:
    arr = np.asarray(mask)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D mask, got shape {arr.shape}")
    return arr.astype(bool, copy=False)


def connected_components(
    mask: np.ndarray, connectivity: int = 8
) -> tuple[np.ndarray, list[RegionStats]]:
    """Label foreground regions 1..K in raster order of first encounter.

    Returns the int32 label map (0 = background) and per-label stats.
    """
    mask = _validate_mask(mask)
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    structure = _STRUCT_4 if connectivity == 4 else _STRUCT_8
    raw, count = ndimage.label(mask, structure=structure)
    labels = _relabel_raster_order(raw, count)
    return labels, region_stats(labels)


def _relabel_raster_order(raw: np.ndarray, count: int) -> np.ndarray:
    """Renumber labels by first occurrence in raster scan; deterministic
    regardless of how the underlying labeling orders its output.
    """
    labels = raw.astype(np.int32)
    if count == 0:
        return labels
    flat = labels.ravel()
    fg = flat > 0
    values, first = np.unique(flat[fg], return_index=True)
    order = values[np.argsort(first)]
    remap = np.zeros(count + 1, dtype=np.int32)
    remap[order] = np.arange(1, count + 1, dtype=np.int32)
    return remap[labels]


def region_stats(labels: np.ndarray) -> list[RegionStats]:
    """Area, bounding box and centroid for every positive label in `labels`."""
    labels = np.asarray(labels)
    if labels.ndim != 2:
        raise ValueError(f"expected a 2-D label map, got shape {labels.shape}")
    k = int(labels.max()) if labels.size else 0
    if k == 0:
        return []
    ys, xs = np.nonzero(labels > 0)
    labs = labels[ys, xs]
    areas = np.bincount(labs, minlength=k + 1)
    sum_y = np.bincount(labs, weights=ys, minlength=k + 1)
    sum_x = np.bincount(labs, weights=xs, minlength=k + 1)
    top = np.full(k + 1, np.iinfo(np.int64).max, dtype=np.int64)
    left = np.full(k + 1, np.iinfo(np.int64).max, dtype=np.int64)
    bottom = np.full(k + 1, -1, dtype=np.int64)
    right = np.full(k + 1, -1, dtype=np.int64)
    np.minimum.at(top, labs, ys)
    np.minimum.at(left, labs, xs)
    np.maximum.at(bottom, labs, ys)
    np.maximum.at(right, labs, xs)
    stats = []
    for lab in range(1, k + 1):
        area = int(areas[lab])
        if area == 0:
            raise ValueError(f"label {lab} is unused; labels must be dense 1..K")
        stats.append(
            RegionStats(
                label=lab,
                area=area,
                bbox=(int(top[lab]), int(left[lab]), int(bottom[lab]), int(right[lab])),
                centroid=(float(sum_y[lab] / area), float(sum_x[lab] / area)),
            )
        )
    return stats


def distance_transform(mask: np.ndarray) -> np.ndarray:
    """Exact Euclidean distance from each foreground pixel to the nearest
    background pixel (pixel centers); background maps to 0. An
    all-foreground mask measures against a virtual background frame one
    pixel outside the border.
    """
    mask = _validate_mask(mask)
    h, w = mask.shape
    if not mask.any():
        return np.zeros((h, w), dtype=np.float64)
    if mask.all():
        ys = np.arange(h)[:, None]
        xs = np.arange(w)[None, :]
        return np.minimum(np.minimum(ys + 1, h - ys), np.minimum(xs + 1, w - xs)).astype(
            np.float64
        )
    return ndimage.distance_transform_edt(mask)
