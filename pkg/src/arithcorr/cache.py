"""On-disk segment cache for function tables.

Record layout, little endian::

    magic   4s   b"ACOR"
    version u16
    kind    u8   tag from KIND_TAGS
    lo      i64
    hi      i64
    dtype   u8   tag from DTYPE_TAGS
    ncols   u8
    payload      raw values, C order
    check   u64  blake2b-64 over everything before it

The cache only saves work.  A missing, truncated or corrupt record is
treated as a miss and the segment is recomputed.
"""

from __future__ import annotations

import hashlib
import os
import struct
from pathlib import Path

import numpy as np

MAGIC = b"ACOR"
VERSION = 1
_HEADER = struct.Struct("<4sHBqqBB")
_CHECK = struct.Struct("<Q")

KIND_TAGS = {"MU": 1, "LAMBDA": 2, "BIG_OMEGA": 3, "MANGOLDT": 4, "IS_PRIME": 5}
DTYPE_TAGS = {np.dtype(np.int8): 1, np.dtype(np.int64): 2, np.dtype(np.bool_): 3}
_TAG_DTYPES = {v: k for k, v in DTYPE_TAGS.items()}


def _checksum(data: bytes) -> int:
    return _CHECK.unpack(hashlib.blake2b(data, digest_size=8).digest())[0]


def encode(kind: str, lo: int, hi: int, values: np.ndarray) -> bytes:
    values = np.ascontiguousarray(values)
    ncols = 1 if values.ndim == 1 else values.shape[1]
    body = _HEADER.pack(MAGIC, VERSION, KIND_TAGS[kind], lo, hi, DTYPE_TAGS[values.dtype], ncols)
    body += values.tobytes()
    return body + _CHECK.pack(_checksum(body))


def decode(blob: bytes) -> tuple[str, int, int, np.ndarray]:
    """Parse one record; raises ValueError on any inconsistency."""
    if len(blob) < _HEADER.size + _CHECK.size:
        raise ValueError("record truncated")
    body, tail = blob[:-_CHECK.size], blob[-_CHECK.size:]
    if _CHECK.unpack(tail)[0] != _checksum(body):
        raise ValueError("checksum mismatch")
    magic, version, ktag, lo, hi, dtag, ncols = _HEADER.unpack_from(body)
    if magic != MAGIC or version != VERSION:
        raise ValueError("bad magic or version")
    kind = {v: k for k, v in KIND_TAGS.items()}[ktag]
    dtype = _TAG_DTYPES[dtag]
    values = np.frombuffer(body[_HEADER.size:], dtype=dtype).copy()
    width = hi - lo + 1
    if values.size != width * ncols:
        raise ValueError("payload size mismatch")
    if ncols > 1:
        values = values.reshape(width, ncols)
    return kind, lo, hi, values


class SegmentCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def _path(self, kind: str, lo: int, hi: int) -> Path:
        return self.directory / f"{kind.lower()}_{lo}_{hi}.acor"

    def load(self, kind: str, lo: int, hi: int) -> np.ndarray | None:
        path = self._path(kind, lo, hi)
        try:
            k, a, b, values = decode(path.read_bytes())
        except (OSError, ValueError, KeyError, struct.error):
            return None
        if (k, a, b) != (kind, lo, hi):
            return None
        return values

    def store(self, kind: str, lo: int, hi: int, values: np.ndarray) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(kind, lo, hi)
        tmp = path.with_suffix(".tmp")
        tmp.write_bytes(encode(kind, lo, hi, values))
        os.replace(tmp, path)
