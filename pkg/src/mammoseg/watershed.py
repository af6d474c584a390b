"""Marker selection and marker-driven watershed flooding.

The flood ascends the scalar field from the marker pixels using a
priority queue keyed on (field value, insertion order), so equal-height
contested pixels go to whichever basin queued them first. Markers come
from the regional minima of the field after h-minima suppression
(reconstruction by erosion of field + h), which merges minima separated
by ridges shallower than h.
"""

from __future__ import annotations

import heapq

import numpy as np

from .errors import EmptyDomain, NoMarkers
from .regions import connected_components

_NEIGHBORS_8 = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))
# raster-order predecessors / successors for the sequential reconstruction passes
_BEFORE_8 = ((-1, -1), (-1, 0), (-1, 1), (0, -1))
_AFTER_8 = ((0, 1), (1, -1), (1, 0), (1, 1))


def _validate_field(field: np.ndarray) -> np.ndarray:
    arr = np.asarray(field, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D scalar field, got shape {arr.shape}")
    return arr


def _neighbor_view(arr: np.ndarray, dy: int, dx: int, fill: float) -> np.ndarray:
    """out[y, x] = arr[y + dy, x + dx], `fill` outside the image."""
    h, w = arr.shape
    out = np.full_like(arr, fill)
    ys0, ys1 = max(dy, 0), min(h + dy, h)
    xs0, xs1 = max(dx, 0), min(w + dx, w)
    if ys0 < ys1 and xs0 < xs1:
        out[ys0 - dy : ys1 - dy, xs0 - dx : xs1 - dx] = arr[ys0:ys1, xs0:xs1]
    return out


def _reconstruct_by_erosion(marker: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Geodesic reconstruction by erosion of `marker` above `mask`
    (marker >= mask pointwise, +inf outside the working domain).
    Alternating raster/anti-raster passes until stable; flat Python lists
    because the scan order is inherently sequential.
    """
    h, w = marker.shape
    rec = marker.ravel().tolist()
    low = mask.ravel().tolist()
    # padded-border indexing avoids bounds checks: work on a (h+2, w+2) grid
    wp = w + 2
    inf = float("inf")
    grid = [inf] * ((h + 2) * wp)
    floor = [inf] * ((h + 2) * wp)
    for y in range(h):
        row = (y + 1) * wp + 1
        grid[row : row + w] = rec[y * w : (y + 1) * w]
        floor[row : row + w] = low[y * w : (y + 1) * w]
    before = (-wp - 1, -wp, -wp + 1, -1)
    after = (wp + 1, wp, wp - 1, 1)
    while True:
        changed = False
        for y in range(1, h + 1):
            base = y * wp
            for x in range(1, w + 1):
                i = base + x
                v = grid[i]
                if v == inf:
                    continue
                for d in before:
                    nv = grid[i + d]
                    if nv < v:
                        v = nv
                f = floor[i]
                if v < f:
                    v = f
                if v != grid[i]:
                    grid[i] = v
                    changed = True
        for y in range(h, 0, -1):
            base = y * wp
            for x in range(w, 0, -1):
                i = base + x
                v = grid[i]
                if v == inf:
                    continue
                for d in after:
                    nv = grid[i + d]
                    if nv < v:
                        v = nv
                f = floor[i]
                if v < f:
                    v = f
                if v != grid[i]:
                    grid[i] = v
                    changed = True
        if not changed:
            break
    out = np.empty((h, w), dtype=np.float64)
    for y in range(h):
        row = (y + 1) * wp + 1
        out[y, :] = grid[row : row + w]
    return out


def suppress_shallow_minima(
    field: np.ndarray, domain: np.ndarray, h: float
) -> np.ndarray:
    """h-minima suppression of `field` restricted to `domain`; pixels
    outside the domain come back as +inf.
    """
    field = _validate_field(field)
    work_mask = np.where(domain, field, np.inf)
    if h == 0.0:
        return work_mask
    marker = np.where(domain, field + h, np.inf)
    return _reconstruct_by_erosion(marker, work_mask)


def regional_minima(field: np.ndarray, domain: np.ndarray) -> np.ndarray:
    """Boolean mask of the connected regional minima of `field` within
    `domain`: plateaus with no strictly lower in-domain 8-neighbor.
    """
    field = _validate_field(field)
    domain = np.asarray(domain, dtype=bool)
    work = np.where(domain, field, np.inf)
    non_min = np.zeros_like(domain)
    for dy, dx in _NEIGHBORS_8:
        non_min |= _neighbor_view(work, dy, dx, np.inf) < work
    non_min &= domain
    # spread "not a minimum" across equal-valued plateaus
    while True:
        grow = np.zeros_like(non_min)
        for dy, dx in _NEIGHBORS_8:
            grow |= (_neighbor_view(work, dy, dx, np.inf) == work) & _neighbor_view(
                non_min.astype(np.float64), dy, dx, 0.0
            ).astype(bool)
        grow &= domain & ~non_min
        if not grow.any():
            break
        non_min |= grow
    return domain & ~non_min


def find_markers(
    field: np.ndarray, domain: np.ndarray, h: float = 1.0
) -> np.ndarray:
    """Label the regional minima of `field` in `domain` after h-minima
    suppression; labels are dense 1..K in raster order.
    """
    field = _validate_field(field)
    domain = np.asarray(domain, dtype=bool)
    if field.shape != domain.shape:
        raise ValueError("field and domain shapes differ")
    if h < 0:
        raise ValueError(f"h must be >= 0, got {h}")
    if not domain.any():
        raise EmptyDomain("no pixels in marker search domain")
    if not np.isfinite(field[domain]).all():
        raise ValueError("field must be finite on the domain")
    suppressed = suppress_shallow_minima(field, domain, float(h))
    minima = regional_minima(suppressed, domain)
    labels, _ = connected_components(minima, connectivity=8)
    return labels


def watershed(
    field: np.ndarray, markers: np.ndarray, domain: np.ndarray | None = None
) -> np.ndarray:
    """Flood `field` from `markers` (dense labels 1..K) across `domain`.

    Every reached pixel takes the label of the basin that reached it
    first; ties at equal field value go to the earliest-queued basin.
    Pixels outside the domain, or unreachable from any marker, stay 0.
    """
    field = _validate_field(field)
    markers = np.asarray(markers)
    if markers.shape != field.shape:
        raise ValueError("marker map shape differs from field")
    if domain is None:
        domain = np.ones(field.shape, dtype=bool)
    else:
        domain = np.asarray(domain, dtype=bool)
        if domain.shape != field.shape:
            raise ValueError("domain shape differs from field")
    if np.any(markers < 0):
        raise ValueError("marker labels must be non-negative")
    positive = np.unique(markers[markers > 0])
    k = len(positive)
    if k == 0:
        raise NoMarkers("marker map has no positive labels")
    if positive[0] != 1 or positive[-1] != k:
        raise ValueError("marker labels must be dense 1..K")
    if np.any((markers > 0) & ~domain):
        raise ValueError("marker pixels must lie inside the flood domain")
    if not np.isfinite(field[domain]).all():
        raise ValueError("field must be finite on the domain")

    h, w = field.shape
    out = np.where(domain, markers, 0).astype(np.int32)
    heap: list[tuple[float, int, int, int]] = []
    counter = 0
    ys, xs = np.nonzero(out)
    for y, x in zip(ys.tolist(), xs.tolist()):
        heap.append((float(field[y, x]), counter, y, x))
        counter += 1
    heapq.heapify(heap)
    while heap:
        _, _, y, x = heapq.heappop(heap)
        label = out[y, x]
        for dy, dx in _NEIGHBORS_8:
            ny, nx = y + dy, x + dx
            if 0 <= ny < h and 0 <= nx < w and domain[ny, nx] and out[ny, nx] == 0:
                out[ny, nx] = label
                heapq.heappush(heap, (float(field[ny, nx]), counter, ny, nx))
                counter += 1
    return out
