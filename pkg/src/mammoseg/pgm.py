"""Binary PGM (P5) codec for 8-bit grayscale images.

Images are plain 2-D uint8 numpy arrays throughout the package. The
reader is tolerant (comments and arbitrary whitespace in the header),
the writer is canonical ("P5\\n<w> <h>\\n255\\n" + raster) so that equal
images always serialize to identical bytes.
"""

from __future__ import annotations

import numpy as np

from .errors import BadHeader, BadMagic, TruncatedRaster


def _skip_space_and_comments(data: bytes, pos: int) -> int:
    while pos < len(data):
        c = data[pos : pos + 1]
        if c in (b" ", b"\t", b"\n", b"\r", b"\x0b", b"\x0c"):
            pos += 1
        elif c == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    return pos


def _read_token(data: bytes, pos: int) -> tuple[bytes, int]:
    pos = _skip_space_and_comments(data, pos)
    start = pos
    while pos < len(data) and data[pos : pos + 1] not in (
        b" ", b"\t", b"\n", b"\r", b"\x0b", b"\x0c",
    ):
        pos += 1
    return data[start:pos], pos


def _parse_int(token: bytes, what: str) -> int:
    if not token.isdigit():
        raise BadHeader(f"non-numeric {what}: {token!r}")
    return int(token)


def read_pgm(data: bytes) -> np.ndarray:
    """Decode binary PGM bytes into an (H, W) uint8 array.

    Raises BadMagic, BadHeader or TruncatedRaster on malformed input.
    """
    magic, pos = _read_token(data, 0)
    if magic != b"P5":
        raise BadMagic(f"expected P5, got {magic!r}")
    w_tok, pos = _read_token(data, pos)
    h_tok, pos = _read_token(data, pos)
    m_tok, pos = _read_token(data, pos)
    width = _parse_int(w_tok, "width")
    height = _parse_int(h_tok, "height")
    maxval = _parse_int(m_tok, "maxval")
    if width == 0 or height == 0:
        raise BadHeader("zero image dimensions")
    if maxval > 255:
        raise BadHeader(f"maxval {maxval} exceeds 255")
    if maxval == 0:
        raise BadHeader("maxval must be >= 1")
    # exactly one whitespace byte separates the header from the raster
    if pos >= len(data) or data[pos : pos + 1] not in (
        b" ", b"\t", b"\n", b"\r", b"\x0b", b"\x0c",
    ):
        raise TruncatedRaster("missing raster")
    pos += 1
    n = width * height
    raster = data[pos : pos + n]
    if len(raster) < n:
        raise TruncatedRaster(f"expected {n} raster bytes, got {len(raster)}")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()


def write_pgm(img: np.ndarray) -> bytes:
    """Encode an (H, W) uint8 array as canonical binary PGM bytes."""
    img = validate_image(img)
    h, w = img.shape
    header = f"P5\n{w} {h}\n255\n".encode("ascii")
    return header + img.tobytes()


def validate_image(img: np.ndarray) -> np.ndarray:
    """Check that `img` is a valid 8-bit grayscale raster; return it as uint8."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D grayscale array, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError("image dimensions must be positive")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError(f"expected integer intensities, got dtype {arr.dtype}")
        if arr.min() < 0 or arr.max() > 255:
            raise ValueError("intensities must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    return arr


def mask_to_pgm(mask: np.ndarray) -> bytes:
    """Serialize a boolean mask as a 0/255 PGM."""
    mask = np.asarray(mask, dtype=bool)
    return write_pgm(np.where(mask, np.uint8(255), np.uint8(0)))


def pgm_to_mask(data: bytes) -> np.ndarray:
    """Read a PGM and interpret any nonzero intensity as foreground."""
    return read_pgm(data) > 0
