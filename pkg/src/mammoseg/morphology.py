"""Binary morphology on boolean masks.

Border convention: samples outside the image count as background, and
dilation never wraps or grows past the image edge. The algebraic
erosion/dilation duality therefore holds on a background-padded canvas
(pad by the element's reach, apply, crop) rather than literally at the
border; the tests exercise exactly that form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np


@dataclass(frozen=True)
class StructuringElement:
    """Neighborhood probe: a set of (dy, dx) offsets containing the origin."""

    offsets: frozenset[tuple[int, int]]

    def __post_init__(self):
        if not self.offsets:
            raise ValueError("structuring element must be nonempty")
        if (0, 0) not in self.offsets:
            raise ValueError("structuring element must contain the origin")
        for off in self.offsets:
            if len(off) != 2 or not all(isinstance(v, int) for v in off):
                raise ValueError(f"offsets must be integer (dy, dx) pairs, got {off!r}")

    @classmethod
    def from_offsets(cls, offsets: Iterable[tuple[int, int]]) -> "StructuringElement":
        return cls(frozenset((int(dy), int(dx)) for dy, dx in offsets))

    @classmethod
    def square(cls, size: int = 3) -> "StructuringElement":
        if size < 1 or size % 2 == 0:
            raise ValueError(f"square element size must be odd and >= 1, got {size}")
        r = size // 2
        return cls.from_offsets(
            (dy, dx) for dy in range(-r, r + 1) for dx in range(-r, r + 1)
        )

    @classmethod
    def cross(cls, size: int = 3) -> "StructuringElement":
        if size < 1 or size % 2 == 0:
            raise ValueError(f"cross element size must be odd and >= 1, got {size}")
        r = size // 2
        offsets = {(0, 0)}
        offsets.update((d, 0) for d in range(-r, r + 1))
        offsets.update((0, d) for d in range(-r, r + 1))
        return cls.from_offsets(offsets)

    def reflect(self) -> "StructuringElement":
        return StructuringElement(frozenset((-dy, -dx) for dy, dx in self.offsets))

    @property
    def radius(self) -> int:
        """Largest absolute offset coordinate (the element's reach)."""
        return max(max(abs(dy), abs(dx)) for dy, dx in self.offsets)


DEFAULT_SE = StructuringElement.square(3)


def _validate_mask(mask: np.ndarray) -> np.ndarray:
    arr = np.asarray(mask)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D mask, got shape {arr.shape}")
    return arr.astype(bool, copy=False)


def _shifted(mask: np.ndarray, dy: int, dx: int) -> np.ndarray:
    """out[y, x] = mask[y + dy, x + dx], background outside the image."""
    h, w = mask.shape
    out = np.zeros_like(mask)
    ys0, ys1 = max(dy, 0), min(h + dy, h)
    xs0, xs1 = max(dx, 0), min(w + dx, w)
    if ys0 >= ys1 or xs0 >= xs1:
        return out
    out[ys0 - dy : ys1 - dy, xs0 - dx : xs1 - dx] = mask[ys0:ys1, xs0:xs1]
    return out


def erode(mask: np.ndarray, se: StructuringElement = DEFAULT_SE) -> np.ndarray:
    """Keep a pixel only if every element offset lands on foreground."""
    mask = _validate_mask(mask)
    out = np.ones_like(mask)
    for dy, dx in sorted(se.offsets):
        out &= _shifted(mask, dy, dx)
    return out


def dilate(mask: np.ndarray, se: StructuringElement = DEFAULT_SE) -> np.ndarray:
    """Set a pixel if any reflected-element offset lands on foreground."""
    mask = _validate_mask(mask)
    out = np.zeros_like(mask)
    for dy, dx in sorted(se.offsets):
        out |= _shifted(mask, -dy, -dx)
    return out


def opening(mask: np.ndarray, se: StructuringElement = DEFAULT_SE) -> np.ndarray:
    """Erode then dilate: removes speckle smaller than the element."""
    return dilate(erode(mask, se), se)


def closing(mask: np.ndarray, se: StructuringElement = DEFAULT_SE) -> np.ndarray:
    """Dilate then erode: fills pits smaller than the element."""
    return erode(dilate(mask, se), se)
