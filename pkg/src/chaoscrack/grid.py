"""Square 8-bit grayscale images stored as flat row-major byte arrays."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import SizeMismatchError


class PixelGrid:
    """An N x N grayscale image, ``N >= 2``, kept as ``N**2`` row-major bytes."""

    __slots__ = ("side", "data")

    def __init__(self, side: int, data: Iterable[int] | np.ndarray | bytes):
        if side < 2:
            raise SizeMismatchError(f"image side must be >= 2, got {side}")
        if isinstance(data, (bytes, bytearray)):
            arr = np.frombuffer(bytes(data), dtype=np.uint8).copy()
        else:
            raw = np.asarray(data)
            if raw.size and (raw.min() < 0 or raw.max() > 255):
                raise ValueError("pixel values must lie in [0, 255]")
            arr = raw.astype(np.uint8).ravel()
        if arr.size != side * side:
            raise SizeMismatchError(
                f"expected {side * side} pixels for side {side}, got {arr.size}"
            )
        arr.flags.writeable = False
        self.side = side
        self.data = arr

    @classmethod
    def zeros(cls, side: int) -> PixelGrid:
        return cls(side, np.zeros(side * side, dtype=np.uint8))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> PixelGrid:
        side = len(rows)
        if any(len(r) != side for r in rows):
            raise SizeMismatchError("rows do not form a square matrix")
        return cls(side, [v for r in rows for v in r])

    @classmethod
    def random(cls, side: int, rng: np.random.Generator) -> PixelGrid:
        return cls(side, rng.integers(0, 256, side * side, dtype=np.uint8))

    @property
    def size(self) -> int:
        return self.side * self.side

    def matrix(self) -> np.ndarray:
        return self.data.reshape(self.side, self.side)

    def rows(self) -> list[list[int]]:
        return self.matrix().tolist()

    def tobytes(self) -> bytes:
        return self.data.tobytes()

    def __xor__(self, other: PixelGrid) -> PixelGrid:
        if other.side != self.side:
            raise SizeMismatchError(f"cannot XOR {self.side}x{self.side} with {other.side}x{other.side}")
        return PixelGrid(self.side, np.bitwise_xor(self.data, other.data))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PixelGrid):
            return NotImplemented
        return self.side == other.side and np.array_equal(self.data, other.data)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"PixelGrid(side={self.side})"


def as_byte_array(values) -> np.ndarray:
    """Coerce bytes, sequences or arrays of 0..255 to a flat uint8 array."""
    if isinstance(values, (bytes, bytearray, memoryview)):
        return np.frombuffer(bytes(values), dtype=np.uint8)
    return np.asarray(values, dtype=np.uint8).ravel()
