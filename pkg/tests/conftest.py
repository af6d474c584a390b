import numpy as np
import pytest


def disk_mask(shape: tuple[int, int], cy: int, cx: int, r: int) -> np.ndarray:
    ys, xs = np.ogrid[: shape[0], : shape[1]]
    return (ys - cy) ** 2 + (xs - cx) ** 2 <= r * r


def two_disk_mask() -> np.ndarray:
    """Two overlapping disks of radius 6 with centers 10 px apart."""
    return disk_mask((32, 32), 16, 11, 6) | disk_mask((32, 32), 16, 21, 6)


def noisy_phantom(seed: int = 42) -> np.ndarray:
    """128x128 slide: background 20, bright disk of radius 30 at the
    center (intensity 200), 2% salt-and-pepper corruption."""
    rng = np.random.default_rng(seed)
    img = np.full((128, 128), 20, dtype=np.uint8)
    img[disk_mask((128, 128), 64, 64, 30)] = 200
    noise = rng.random((128, 128))
    img[noise < 0.01] = 0
    img[noise > 0.99] = 255
    return img


def random_se_offsets(rng: np.random.Generator, max_extra: int = 6, reach: int = 2):
    """Random structuring-element offsets always containing the origin."""
    offsets = {(0, 0)}
    for _ in range(int(rng.integers(0, max_extra + 1))):
        offsets.add(
            (int(rng.integers(-reach, reach + 1)), int(rng.integers(-reach, reach + 1)))
        )
    return offsets


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
