"""Chosen-plaintext break of the shuffle-then-XOR cipher.

Only an oracle and the intercepted ciphertext are used; nothing here touches
key material.

1. Encrypt the all-zero image.  Shuffling zeros gives zeros, so the answer
   is the keystream itself.
2. Encrypt index probes whose pixel values spell out each pixel's own linear
   index in base 256.  XOR with the keystream removes the mixing layer and
   leaves the shuffled probes, which read off the permutation directly.
3. Undo both layers on the intercepted image.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arnold import PermutationMap, is_bijection, unshuffle
from .errors import OracleInconsistencyError, SizeMismatchError
from .grid import PixelGrid, as_byte_array
from .oracle import Oracle, RecordingOracle


def probe_count(side: int) -> int:
    """Number of base-256 digits needed to name every one of side**2 pixels."""
    r, capacity = 1, 256
    while capacity < side * side:
        r += 1
        capacity *= 256
    return r


@dataclass(frozen=True)
class ProbeSet:
    side: int
    probes: tuple[PixelGrid, ...]

    @property
    def count(self) -> int:
        return len(self.probes)


@dataclass
class AttackTranscript:
    recovered_keystream: np.ndarray
    recovered_permutation: PermutationMap
    oracle_queries: int
    recovered_plaintext: PixelGrid
    exchanges: list[tuple[PixelGrid, PixelGrid]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def build_probes(side: int) -> ProbeSet:
    if side < 2:
        raise ValueError("image side must be >= 2")
    idx = np.arange(side * side, dtype=np.int64)
    probes = tuple(
        PixelGrid(side, (idx >> (8 * j)) & 0xFF) for j in range(probe_count(side))
    )
    return ProbeSet(side, probes)


def recover_keystream(oracle: Oracle, side: int) -> np.ndarray:
    c1 = oracle.encrypt(PixelGrid.zeros(side))
    if c1.side != side:
        raise SizeMismatchError(f"oracle answered side {c1.side} for side {side}")
    return c1.data.copy()


def recover_permutation(oracle: Oracle, ks: np.ndarray, side: int) -> PermutationMap:
    ks = as_byte_array(ks)
    if ks.size != side * side:
        raise SizeMismatchError(f"keystream has {ks.size} bytes, need {side * side}")
    source = np.zeros(side * side, dtype=np.int64)
    for j, probe in enumerate(build_probes(side).probes):
        shuffled = np.bitwise_xor(oracle.encrypt(probe).data, ks)
        source |= shuffled.astype(np.int64) << (8 * j)
    if not is_bijection(source):
        raise OracleInconsistencyError(
            "probe responses do not decode to a permutation; the oracle's keystream "
            "or permutation changed between queries"
        )
    return PermutationMap(side, source)


def recover_plaintext(cipher: PixelGrid, ks: np.ndarray, perm: PermutationMap) -> PixelGrid:
    ks = as_byte_array(ks)
    if ks.size != cipher.size:
        raise SizeMismatchError(f"keystream has {ks.size} bytes, cipher has {cipher.size} pixels")
    return unshuffle(PixelGrid(cipher.side, np.bitwise_xor(cipher.data, ks)), perm)


def full_attack(oracle: Oracle, intercepted: PixelGrid) -> AttackTranscript:
    side = intercepted.side
    rec = RecordingOracle(oracle)
    ks = recover_keystream(rec, side)
    perm = recover_permutation(rec, ks, side)
    plain = recover_plaintext(intercepted, ks, perm)
    queries = rec.query_count

    notes = []
    r = probe_count(side)
    if r > 1:
        notes.append(
            f"{side}x{side} image has {side * side} pixels, more than one byte (256) can index; "
            f"used {r} index probes, so {queries} oracle queries instead of 2"
        )
    return AttackTranscript(ks, perm, queries, plain, rec.exchanges, notes)
