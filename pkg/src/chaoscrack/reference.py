"""The 4x4 worked example of the attack, as literal matrices.

``PROBE`` uses the 1-based values 1..16; the attack's own probe is the same
image minus one.  ``PROBE_SHUFFLED`` read as 1-based source indices is the
cipher's permutation.
"""

from .arnold import PermutationMap
from .grid import PixelGrid

PLAIN = [
    [23, 45, 64, 32],
    [179, 180, 26, 58],
    [67, 136, 139, 20],
    [17, 99, 220, 100],
]
KEY = [
    [186, 24, 39, 72],
    [23, 87, 47, 13],
    [221, 49, 50, 2],
    [44, 32, 65, 110],
]
CIPHER = [
    [174, 123, 7, 252],
    [6, 23, 156, 134],
    [240, 11, 186, 102],
    [54, 99, 157, 121],
]
SHUFFLED = [
    [20, 99, 32, 180],
    [17, 64, 179, 139],
    [45, 58, 136, 100],
    [26, 67, 220, 23],
]
PROBE = [
    [1, 2, 3, 4],
    [5, 6, 7, 8],
    [9, 10, 11, 12],
    [13, 14, 15, 16],
]
PROBE_CIPHER = [
    [182, 22, 35, 78],
    [26, 84, 42, 6],
    [223, 57, 56, 18],
    [43, 41, 78, 111],
]
PROBE_SHUFFLED = [
    [12, 14, 4, 6],
    [13, 3, 5, 11],
    [2, 8, 10, 16],
    [7, 9, 15, 1],
]


def grid(rows) -> PixelGrid:
    return PixelGrid.from_rows(rows)


def permutation() -> PermutationMap:
    return PermutationMap(4, [v - 1 for row in PROBE_SHUFFLED for v in row])


def keystream() -> bytes:
    return bytes(v for row in KEY for v in row)
