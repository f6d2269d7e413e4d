"""Chaotic image cipher (cat-map shuffle + Chen keystream XOR) and its chosen-plaintext break."""

from .arnold import (
    CatMatrix,
    PermutationMap,
    build_permutation,
    cat_matrix,
    iterate_matrix,
    key_permutation,
    shuffle,
    unshuffle,
)
from .attack import (
    AttackTranscript,
    ProbeSet,
    build_probes,
    full_attack,
    probe_count,
    recover_keystream,
    recover_permutation,
    recover_plaintext,
)
from .cipher import decrypt, decrypt_with_parts, encrypt, encrypt_with_parts
from .grid import PixelGrid
from .keys import SecretKey, load_key, parse_key
from .keystream import ChenParams, ChenState, chen_derivative, derive_keystream, integrate_chen
from .oracle import KeyedOracle, OracleServer, PartsOracle, RemoteOracle
from .pgm import read_pgm, write_pgm

__version__ = "0.1.0"
