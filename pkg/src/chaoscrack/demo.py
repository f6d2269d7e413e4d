"""Replay the 4x4 worked example against an oracle built from its literal matrices."""

from __future__ import annotations

from dataclasses import dataclass

from . import reference as ref
from .attack import full_attack, recover_keystream
from .cipher import encrypt_with_parts
from .grid import PixelGrid
from .oracle import PartsOracle


@dataclass
class Check:
    name: str
    expected: PixelGrid
    actual: PixelGrid

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class DemoResult:
    checks: list[Check]
    oracle_queries: int
    images: dict[str, PixelGrid]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks) and self.oracle_queries == 2


def run_algorithm1() -> DemoResult:
    perm, ks = ref.permutation(), ref.keystream()
    plain = ref.grid(ref.PLAIN)

    cipher = encrypt_with_parts(plain, perm, ks)

    oracle = PartsOracle(perm, ks)
    c1 = PixelGrid(4, recover_keystream(oracle, 4))
    shuffled = cipher ^ c1
    c2 = oracle.encrypt(ref.grid(ref.PROBE))
    s2 = c2 ^ c1

    transcript = full_attack(PartsOracle(perm, ks), cipher)

    checks = [
        Check("P -> C", ref.grid(ref.CIPHER), cipher),
        Check("C1 = key", ref.grid(ref.KEY), c1),
        Check("S = C xor key", ref.grid(ref.SHUFFLED), shuffled),
        Check("C2", ref.grid(ref.PROBE_CIPHER), c2),
        Check("S2 = C2 xor key", ref.grid(ref.PROBE_SHUFFLED), s2),
        Check("M = recovered P", plain, transcript.recovered_plaintext),
    ]
    images = {
        "plain": plain,
        "shuffled": ref.grid(ref.SHUFFLED),
        "cipher": cipher,
        "zero_probe": PixelGrid.zeros(4),
        "zero_probe_shuffled": PixelGrid.zeros(4),
        "keystream": c1,
        "recovered_shuffled": shuffled,
        "index_probe": ref.grid(ref.PROBE),
        "index_probe_shuffled": s2,
        "index_probe_cipher": c2,
        "recovered": transcript.recovered_plaintext,
    }
    return DemoResult(checks, transcript.oracle_queries, images)
