"""Independent brute-force reference implementations.

Each oracle recomputes a result from first principles, deliberately
avoiding the algorithms and code paths used by the library, so tests
compare two unrelated routes to the same answer.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

import numpy as np


def median_bruteforce(img: np.ndarray, window: int) -> np.ndarray:
    """Per-pixel sorted-window median with clamped (edge-replicated)
    coordinates."""
    h, w = img.shape
    r = window // 2
    out = np.zeros_like(img)
    for y in range(h):
        for x in range(w):
            samples = []
            for dy in range(-r, r + 1):
                for dx in range(-r, r + 1):
                    yy = min(max(y + dy, 0), h - 1)
                    xx = min(max(x + dx, 0), w - 1)
                    samples.append(int(img[yy, xx]))
            samples.sort()
            out[y, x] = samples[len(samples) // 2]
    return out


def otsu_bruteforce(hist) -> int:
    """Exhaustive scan of all 256 thresholds with exact Fraction
    arithmetic on the textbook formula; smallest maximizing t wins."""
    bins = [int(c) for c in hist]
    total = sum(bins)
    counts = [0] * 257
    weighted = [0] * 257
    for v in range(256):
        counts[v + 1] = counts[v] + bins[v]
        weighted[v + 1] = weighted[v] + v * bins[v]
    best_t = 0
    best = Fraction(0)
    for t in range(256):
        n0 = counts[t + 1]
        n1 = total - n0
        if n0 == 0 or n1 == 0:
            continue  # an empty class scores 0, never beating the start
        s0 = weighted[t + 1]
        s1 = weighted[256] - s0
        w0 = Fraction(n0, total)
        w1 = Fraction(n1, total)
        mu0 = Fraction(s0, n0)
        mu1 = Fraction(s1, n1)
        sigma = w0 * w1 * (mu0 - mu1) ** 2
        if sigma > best:
            best = sigma
            best_t = t
    return best_t


def components_bfs(mask: np.ndarray, connectivity: int = 8):
    """Connected labeling by breadth-first search in raster seed order."""
    h, w = mask.shape
    if connectivity == 8:
        neigh = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]
    else:
        neigh = [(-1, 0), (0, -1), (0, 1), (1, 0)]
    labels = np.zeros((h, w), dtype=np.int32)
    next_label = 0
    for sy in range(h):
        for sx in range(w):
            if mask[sy, sx] and labels[sy, sx] == 0:
                next_label += 1
                queue = deque([(sy, sx)])
                labels[sy, sx] = next_label
                while queue:
                    y, x = queue.popleft()
                    for dy, dx in neigh:
                        ny, nx = y + dy, x + dx
                        if (
                            0 <= ny < h and 0 <= nx < w
                            and mask[ny, nx] and labels[ny, nx] == 0
                        ):
                            labels[ny, nx] = next_label
                            queue.append((ny, nx))
    return labels, next_label


def edt_bruteforce(mask: np.ndarray) -> np.ndarray:
    """All-pairs nearest-background scan; integer squared distances,
    square root applied once at the end."""
    h, w = mask.shape
    out = np.zeros((h, w), dtype=np.float64)
    bg = np.argwhere(~mask)
    for y in range(h):
        for x in range(w):
            if mask[y, x]:
                d2 = ((bg[:, 0] - y) ** 2 + (bg[:, 1] - x) ** 2).min()
                out[y, x] = np.sqrt(float(d2))
    return out


def seeded_region_growing(markers: np.ndarray, domain: np.ndarray) -> np.ndarray:
    """Lockstep multi-source BFS: all regions grow one 8-connected ring
    per round; a pixel reached by several regions in the same round goes
    to the smallest label."""
    h, w = domain.shape
    out = np.where(domain, markers, 0).astype(np.int32)
    frontier = [(y, x) for y, x in np.argwhere(out > 0)]
    neigh = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]
    while frontier:
        claims: dict[tuple[int, int], int] = {}
        for y, x in frontier:
            lab = int(out[y, x])
            for dy, dx in neigh:
                ny, nx = y + dy, x + dx
                if 0 <= ny < h and 0 <= nx < w and domain[ny, nx] and out[ny, nx] == 0:
                    prev = claims.get((ny, nx))
                    if prev is None or lab < prev:
                        claims[(ny, nx)] = lab
        frontier = []
        for (y, x), lab in claims.items():
            out[y, x] = lab
            frontier.append((y, x))
    return out


def feret_bruteforce(mask: np.ndarray) -> float:
    """All-pairs scan over the component's boundary pixels."""
    ys, xs = np.nonzero(mask)
    pts = []
    h, w = mask.shape
    for y, x in zip(ys.tolist(), xs.tolist()):
        on_border = y in (0, h - 1) or x in (0, w - 1)
        if not on_border:
            interior = (
                mask[y - 1, x] and mask[y + 1, x] and mask[y, x - 1] and mask[y, x + 1]
            )
            if interior:
                continue
        pts.append((y, x))
    best = 0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d2 = (pts[i][0] - pts[j][0]) ** 2 + (pts[i][1] - pts[j][1]) ** 2
            best = max(best, d2)
    return float(np.sqrt(best))


def regional_minima_bruteforce(field: np.ndarray, domain: np.ndarray) -> np.ndarray:
    """Plateau-by-plateau check: flood each connected equal-value plateau
    and reject it if any in-domain neighbor sits strictly lower."""
    h, w = field.shape
    seen = np.zeros((h, w), dtype=bool)
    minima = np.zeros((h, w), dtype=bool)
    neigh = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]
    for sy in range(h):
        for sx in range(w):
            if not domain[sy, sx] or seen[sy, sx]:
                continue
            value = field[sy, sx]
            plateau = [(sy, sx)]
            seen[sy, sx] = True
            is_min = True
            i = 0
            while i < len(plateau):
                y, x = plateau[i]
                i += 1
                for dy, dx in neigh:
                    ny, nx = y + dy, x + dx
                    if not (0 <= ny < h and 0 <= nx < w and domain[ny, nx]):
                        continue
                    if field[ny, nx] == value:
                        if not seen[ny, nx]:
                            seen[ny, nx] = True
                            plateau.append((ny, nx))
                    elif field[ny, nx] < value:
                        is_min = False
            if is_min:
                for y, x in plateau:
                    minima[y, x] = True
    return minima
