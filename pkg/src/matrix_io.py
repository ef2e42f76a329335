"""
Binary matrix files:

    magic "COFA" | version u16 | rows u32 | cols u32 | rows*cols float64

all little-endian, values row-major.
"""

import logging
import os
import struct

import numpy as np

from src.errors import (
    BadMagicError,
    DimensionMismatchError,
    TruncatedFileError,
    VersionUnsupportedError,
)

logger = logging.getLogger(__name__)

MAGIC = b"COFA"
FORMAT_VERSION = 1
HEADER = struct.Struct("<4sHII")
VALUE_DTYPE = np.dtype("<f8")


def encode_matrix(matrix: np.ndarray) -> bytes:
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim == 1:
        matrix = matrix[None, :]
    if matrix.ndim != 2:
        raise DimensionMismatchError(f"expected a matrix, got shape {matrix.shape}")
    rows, cols = matrix.shape
    return HEADER.pack(MAGIC, FORMAT_VERSION, rows, cols) + matrix.astype(
        VALUE_DTYPE
    ).tobytes(order="C")


def decode_matrix(payload: bytes, source: str = "<bytes>") -> np.ndarray:
    if len(payload) < HEADER.size:
        raise TruncatedFileError(
            f"{source}: {len(payload)} bytes, header needs {HEADER.size}"
        )
    magic, version, rows, cols = HEADER.unpack_from(payload)
    if magic != MAGIC:
        raise BadMagicError(f"{source}: bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise VersionUnsupportedError(f"{source}: unsupported format version {version}")
    expected = HEADER.size + VALUE_DTYPE.itemsize * rows * cols
    if len(payload) < expected:
        raise TruncatedFileError(
            f"{source}: {len(payload)} bytes, {rows}x{cols} matrix needs {expected}"
        )
    if len(payload) > expected:
        raise TruncatedFileError(
            f"{source}: {len(payload) - expected} trailing byte(s) after the payload"
        )
    values = np.frombuffer(payload, dtype=VALUE_DTYPE, count=rows * cols, offset=HEADER.size)
    return values.astype(np.float64).reshape(rows, cols)


def read_matrix(path: str) -> np.ndarray:
    with open(path, "rb") as f:
        payload = f.read()
    matrix = decode_matrix(payload, source=path)
    logger.debug(f"Read {matrix.shape[0]}x{matrix.shape[1]} matrix from {path}")
    return matrix


def write_matrix(path: str, matrix: np.ndarray) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    payload = encode_matrix(matrix)
    with open(path, "wb") as f:
        f.write(payload)
    logger.debug(f"Wrote {len(payload)} bytes to {path}")
