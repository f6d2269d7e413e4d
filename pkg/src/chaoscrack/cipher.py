"""The shuffle-then-XOR chaotic image cipher.

Encryption permutes the pixels with the key's cat map and XORs the shuffled
image, scanned row by row, with the Chen keystream.  The keystream depends
only on the key, so every image encrypted under one key reuses it.
"""

from __future__ import annotations

import numpy as np

from .arnold import PermutationMap, key_permutation, shuffle, unshuffle
from .errors import SizeMismatchError
from .grid import PixelGrid, as_byte_array
from .keys import SecretKey
from .keystream import DEFAULT_DT, DEFAULT_TRANSIENT, derive_keystream


def _as_keystream(ks, size: int) -> np.ndarray:
    arr = as_byte_array(ks)
    if arr.size != size:
        raise SizeMismatchError(f"keystream has {arr.size} bytes, image has {size} pixels")
    return arr


def encrypt_with_parts(img: PixelGrid, perm: PermutationMap, ks) -> PixelGrid:
    s = shuffle(img, perm)
    return PixelGrid(img.side, np.bitwise_xor(s.data, _as_keystream(ks, img.size)))


def decrypt_with_parts(cipher: PixelGrid, perm: PermutationMap, ks) -> PixelGrid:
    s = PixelGrid(cipher.side, np.bitwise_xor(cipher.data, _as_keystream(ks, cipher.size)))
    return unshuffle(s, perm)


def key_parts(
    key: SecretKey, side: int, dt: float = DEFAULT_DT, transient: int = DEFAULT_TRANSIENT
) -> tuple[PermutationMap, np.ndarray]:
    """Expand ``key`` into the permutation and keystream used for a side x side image."""
    perm = key_permutation(key.p, key.q, key.n, side)
    return perm, derive_keystream(key, side * side, dt, transient)


def encrypt(img: PixelGrid, key: SecretKey, dt: float = DEFAULT_DT, transient: int = DEFAULT_TRANSIENT) -> PixelGrid:
    return encrypt_with_parts(img, *key_parts(key, img.side, dt, transient))


def decrypt(cipher: PixelGrid, key: SecretKey, dt: float = DEFAULT_DT, transient: int = DEFAULT_TRANSIENT) -> PixelGrid:
    return decrypt_with_parts(cipher, *key_parts(key, cipher.side, dt, transient))
