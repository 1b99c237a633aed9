import numpy as np
import pytest

from arithcorr.cache import MAGIC, SegmentCache, decode, encode
from arithcorr.sieve import Kind, Window, build_table


@pytest.mark.parametrize("kind", list(Kind))
def test_roundtrip(kind):
    values = build_table(kind, Window(90, 130)).values
    k, lo, hi, back = decode(encode(kind.value, 90, 130, values))
    assert (k, lo, hi) == (kind.value, 90, 130)
    assert back.dtype == values.dtype and np.array_equal(back, values)


def test_record_layout():
    blob = encode("MU", 1, 3, np.array([1, -1, -1], dtype=np.int8))
    assert blob[:4] == MAGIC
    assert len(blob) == 4 + 2 + 1 + 8 + 8 + 1 + 1 + 3 + 8


def test_corruption_detected():
    blob = bytearray(encode("MU", 1, 3, np.array([1, -1, -1], dtype=np.int8)))
    blob[-9] ^= 0xFF
    with pytest.raises(ValueError):
        decode(bytes(blob))


def test_cached_tables_match(tmp_path):
    w = Window(10**6, 10**6 + 5000)
    plain = build_table(Kind.MANGOLDT, w, segment_size=1024)
    first = build_table(Kind.MANGOLDT, w, segment_size=1024, cache_dir=tmp_path)
    assert len(list(tmp_path.glob("*.acor"))) == 5
    second = build_table(Kind.MANGOLDT, w, segment_size=1024, cache_dir=tmp_path)
    assert np.array_equal(plain.values, first.values)
    assert np.array_equal(plain.values, second.values)


def test_corrupt_file_is_a_miss(tmp_path):
    w = Window(1, 100)
    build_table(Kind.MU, w, cache_dir=tmp_path)
    (path,) = tmp_path.glob("*.acor")
    path.write_bytes(b"ACOR garbage")
    assert SegmentCache(tmp_path).load("MU", 1, 100) is None
    assert np.array_equal(build_table(Kind.MU, w, cache_dir=tmp_path).values, build_table(Kind.MU, w).values)
