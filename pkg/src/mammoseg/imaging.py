"""Intensity-domain operations: histogram, median denoising, global threshold.

The median filter replicates edge pixels so border windows never invent
dark samples that would bias the threshold choice downstream.
"""

from __future__ import annotations

import numpy as np

from .errors import EmptyHistogram, EvenWindow
from .pgm import validate_image


def histogram(img: np.ndarray) -> np.ndarray:
    """Count pixels per intensity; returns 256 int64 bins."""
    img = validate_image(img)
    return np.bincount(img.ravel(), minlength=256).astype(np.int64)


def median_filter(img: np.ndarray, window: int = 3) -> np.ndarray:
    """Replace each pixel by the exact median of its window x window
    neighborhood, sampling out-of-bounds positions by edge replication.
    """
    img = validate_image(img)
    if window < 1 or window % 2 == 0:
        raise EvenWindow(f"window must be odd and >= 1, got {window}")
    if window == 1:
        return img.copy()
    r = window // 2
    padded = np.pad(img, r, mode="edge")
    view = np.lib.stride_tricks.sliding_window_view(padded, (window, window))
    h, w = img.shape
    # odd sample count: the median is always one of the window's pixels
    med = np.median(view.reshape(h, w, window * window), axis=2)
    return med.astype(np.uint8)


def otsu_threshold(hist: np.ndarray) -> int:
    """Pick the threshold t in [0, 255] maximizing the between-class
    variance w0*w1*(mu0 - mu1)^2, class 0 being intensities <= t.

    Ties (and thresholds leaving one class empty) resolve to the smallest
    t. Comparisons use exact integer arithmetic so the winner never
    depends on float rounding.
    """
    hist = np.asarray(hist)
    if hist.shape != (256,):
        raise ValueError(f"expected 256 bins, got shape {hist.shape}")
    if np.any(hist < 0):
        raise ValueError("negative histogram count")
    bins = [int(c) for c in hist]
    total = sum(bins)
    if total == 0:
        raise EmptyHistogram("all bins are zero")
    total_weighted = sum(v * c for v, c in enumerate(bins))

    # between-class variance is proportional to (s0*n1 - s1*n0)^2 / (n0*n1);
    # track the best as an exact fraction via cross-multiplication
    best_t, best_num, best_den = 0, 0, 1
    n0 = 0
    s0 = 0
    for t in range(256):
        n0 += bins[t]
        s0 += t * bins[t]
        n1 = total - n0
        if n0 == 0 or n1 == 0:
            continue
        s1 = total_weighted - s0
        num = (s0 * n1 - s1 * n0) ** 2
        den = n0 * n1
        if num * best_den > best_num * den:
            best_t, best_num, best_den = t, num, den
    return best_t


def binarize(img: np.ndarray, t: int, invert: bool = False) -> np.ndarray:
    """Foreground where intensity > t (tumor assumed brighter); `invert`
    flips the polarity for dark-lesion inputs.
    """
    img = validate_image(img)
    if not 0 <= t <= 255:
        raise ValueError(f"threshold must lie in [0, 255], got {t}")
    fg = img > t
    return ~fg if invert else fg
