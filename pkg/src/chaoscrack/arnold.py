"""Arnold cat map permutations on N x N pixel grids.

Coordinates are ``(x, y) = (row, column)``, zero-based, and the linear index
of a pixel is ``x * N + y``.  A :class:`PermutationMap` is stored in
source-of-destination form: ``source[d]`` is the plain-image index whose
pixel lands at shuffled index ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidMatrixError, SizeMismatchError
from .grid import PixelGrid


@dataclass(frozen=True)
class CatMatrix:
    m1: int
    m2: int
    m3: int
    m4: int
    modulus: int | None = None

    @property
    def det(self) -> int:
        d = self.m1 * self.m4 - self.m2 * self.m3
        return d % self.modulus if self.modulus else d

    def entries(self) -> tuple[int, int, int, int]:
        return self.m1, self.m2, self.m3, self.m4


IDENTITY = CatMatrix(1, 0, 0, 1)


def cat_matrix(p: int, q: int) -> CatMatrix:
    if p < 1 or q < 1:
        raise ValueError(f"cat map parameters must be positive, got p={p}, q={q}")
    return CatMatrix(1, p, q, p * q + 1)


def mat_mul(a: CatMatrix, b: CatMatrix, N: int) -> CatMatrix:
    return CatMatrix(
        (a.m1 * b.m1 + a.m2 * b.m3) % N,
        (a.m1 * b.m2 + a.m2 * b.m4) % N,
        (a.m3 * b.m1 + a.m4 * b.m3) % N,
        (a.m3 * b.m2 + a.m4 * b.m4) % N,
        N,
    )


def iterate_matrix(A: CatMatrix, n: int, N: int) -> CatMatrix:
    """Compute ``A**n mod N`` by square-and-multiply."""
    if n < 0:
        raise ValueError("iteration count must be >= 0")
    if N < 2:
        raise ValueError("modulus must be >= 2")
    result = CatMatrix(1, 0, 0, 1 % N, N)
    base = CatMatrix(A.m1 % N, A.m2 % N, A.m3 % N, A.m4 % N, N)
    while n:
        if n & 1:
            result = mat_mul(result, base, N)
        base = mat_mul(base, base, N)
        n >>= 1
    return result


class PermutationMap:
    """Bijection on ``{0, ..., N**2 - 1}`` in source-of-destination form."""

    __slots__ = ("side", "source")

    def __init__(self, side: int, source):
        src = np.asarray(source, dtype=np.int64).ravel()
        if src.size != side * side:
            raise SizeMismatchError(f"permutation of side {side} needs {side * side} entries, got {src.size}")
        if not is_bijection(src):
            raise ValueError("source table is not a permutation")
        src.flags.writeable = False
        self.side = side
        self.source = src

    @classmethod
    def identity(cls, side: int) -> PermutationMap:
        return cls(side, np.arange(side * side))

    @property
    def size(self) -> int:
        return self.side * self.side

    def inverse(self) -> PermutationMap:
        inv = np.empty_like(self.source)
        inv[self.source] = np.arange(self.size)
        return PermutationMap(self.side, inv)

    def then(self, other: PermutationMap) -> PermutationMap:
        """The permutation that shuffles by ``self`` and then by ``other``."""
        return PermutationMap(self.side, self.source[other.source])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermutationMap):
            return NotImplemented
        return self.side == other.side and np.array_equal(self.source, other.source)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"PermutationMap(side={self.side})"


def is_bijection(source: np.ndarray) -> bool:
    n = source.size
    if n == 0 or source.min() < 0 or source.max() >= n:
        return False
    return bool(np.all(np.bincount(source, minlength=n) == 1))


def build_permutation(M: CatMatrix, N: int) -> PermutationMap:
    """Tabulate the pixel map ``(x, y) -> M (x, y) mod N`` over the whole grid."""
    if M.modulus is not None and M.modulus != N:
        raise SizeMismatchError(f"matrix is reduced mod {M.modulus}, grid side is {N}")
    x, y = np.divmod(np.arange(N * N, dtype=np.int64), N)
    xp = (M.m1 * x + M.m2 * y) % N
    yp = (M.m3 * x + M.m4 * y) % N
    dest = xp * N + yp
    if not is_bijection(dest):
        raise InvalidMatrixError(
            f"matrix {M.entries()} maps two pixels to one position mod {N} "
            f"(determinant {(M.m1 * M.m4 - M.m2 * M.m3) % N} != 1)"
        )
    source = np.empty(N * N, dtype=np.int64)
    source[dest] = x * N + y
    return PermutationMap(N, source)


def key_permutation(p: int, q: int, n: int, N: int) -> PermutationMap:
    return build_permutation(iterate_matrix(cat_matrix(p, q), n, N), N)


def _check(img: PixelGrid, perm: PermutationMap) -> None:
    if img.side != perm.side:
        raise SizeMismatchError(f"image side {img.side} does not match permutation side {perm.side}")


def shuffle(img: PixelGrid, perm: PermutationMap) -> PixelGrid:
    _check(img, perm)
    return PixelGrid(img.side, img.data[perm.source])


def unshuffle(img: PixelGrid, perm: PermutationMap) -> PixelGrid:
    _check(img, perm)
    out = np.empty_like(img.data)
    out[perm.source] = img.data
    return PixelGrid(img.side, out)
