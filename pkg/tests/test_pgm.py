import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mammoseg.errors import BadHeader, BadMagic, TruncatedRaster
from mammoseg.pgm import mask_to_pgm, pgm_to_mask, read_pgm, write_pgm


def test_read_basic_2x2():
    img = read_pgm(b"P5\n2 2\n255\n" + bytes([10, 20, 30, 40]))
    assert img.shape == (2, 2)
    assert img.tolist() == [[10, 20], [30, 40]]


def test_read_rejects_wrong_magic():
    with pytest.raises(BadMagic):
        read_pgm(b"P6\n2 2\n255\n" + bytes(12))


def test_read_rejects_truncated_raster():
    with pytest.raises(TruncatedRaster):
        read_pgm(b"P5\n2 2\n255\n" + bytes([1, 2, 3]))


def test_read_handles_comments_and_whitespace():
    data = b"P5 # binary graymap\n# another comment\n 2\t1 # dims\n255\n" + bytes([0, 255])
    img = read_pgm(data)
    assert img.tolist() == [[0, 255]]


@pytest.mark.parametrize(
    "header",
    [b"P5\n0 2\n255\n", b"P5\n2 0\n255\n", b"P5\nx 2\n255\n", b"P5\n2 2\n999\n",
     b"P5\n2 2\n0\n"],
)
def test_read_rejects_bad_headers(header):
    with pytest.raises(BadHeader):
        read_pgm(header + bytes(4))


def test_read_empty_input():
    with pytest.raises(BadMagic):
        read_pgm(b"")


def test_write_canonical_1x1():
    assert write_pgm(np.array([[7]], dtype=np.uint8)) == b"P5\n1 1\n255\n\x07"


def test_write_canonical_2x1():
    out = write_pgm(np.array([[0, 255]], dtype=np.uint8))
    assert out == b"P5\n2 1\n255\n" + bytes([0, 255])


def test_round_trip_fixed(rng):
    img = rng.integers(0, 256, size=(16, 16), dtype=np.uint8)
    assert np.array_equal(read_pgm(write_pgm(img)), img)


def test_write_deterministic(rng):
    img = rng.integers(0, 256, size=(9, 5), dtype=np.uint8)
    assert write_pgm(img) == write_pgm(img.copy())


@settings(max_examples=60, deadline=None)
@given(
    w=st.integers(1, 24),
    h=st.integers(1, 24),
    seed=st.integers(0, 2**31),
)
def test_round_trip_property(w, h, seed):
    img = np.random.default_rng(seed).integers(0, 256, size=(h, w), dtype=np.uint8)
    out = read_pgm(write_pgm(img))
    assert np.array_equal(out, img)


def test_mask_pgm_round_trip(rng):
    mask = rng.random((11, 7)) < 0.5
    assert np.array_equal(pgm_to_mask(mask_to_pgm(mask)), mask)


def test_write_rejects_bad_shapes():
    with pytest.raises(ValueError):
        write_pgm(np.zeros((2, 2, 3), dtype=np.uint8))
    with pytest.raises(ValueError):
        write_pgm(np.array([[300]], dtype=np.int32))
