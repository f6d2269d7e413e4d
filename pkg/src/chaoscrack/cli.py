"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 I/O or file-format error,
4 oracle/protocol error, 5 verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import logging
import sys
from pathlib import Path

import numpy as np

from .arnold import PermutationMap
from .attack import AttackTranscript, full_attack
from .cipher import decrypt, encrypt
from .errors import ChaosCrackError, InvalidKeyError, KeyFileError, OracleError
from .grid import PixelGrid
from .keys import SecretKey, load_key, save_key
from .keystream import derive_keystream
from .oracle import KeyedOracle, RemoteOracle, parse_address, serve
from .pgm import read_pgm, write_pgm

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_PROTOCOL = 4
EXIT_VERIFY = 5

log = logging.getLogger("chaoscrack")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(*fields) -> None:
    print("\t".join(str(f) for f in fields))


def _format_matrix(img: PixelGrid) -> str:
    return "\n".join(" ".join(f"{v:3d}" for v in row) for row in img.rows())


def cmd_encrypt(args) -> int:
    key = load_key(args.key)
    write_pgm(encrypt(read_pgm(args.infile), key), args.out)
    return EXIT_OK


def cmd_decrypt(args) -> int:
    key = load_key(args.key)
    write_pgm(decrypt(read_pgm(args.infile), key), args.out)
    return EXIT_OK


def cmd_keystream(args) -> int:
    if args.len < 1:
        raise InvalidKeyError("--len must be >= 1")
    key = load_key(args.key)
    Path(args.out).write_bytes(derive_keystream(key, args.len).tobytes())
    return EXIT_OK


def cmd_keygen(args) -> int:
    save_key(SecretKey.random(np.random.default_rng(args.seed)), args.out)
    return EXIT_OK


def cmd_oracle_serve(args) -> int:
    key = load_key(args.key)
    serve(key, parse_address(args.listen))
    return EXIT_OK


def write_permutation(perm: PermutationMap, path) -> None:
    Path(path).write_text("".join(f"{i}\n" for i in perm.source.tolist()), encoding="ascii")


def read_permutation(path) -> PermutationMap:
    values = [int(line) for line in Path(path).read_text(encoding="ascii").split()]
    side = int(round(len(values) ** 0.5))
    return PermutationMap(side, values)


def _attack_images(cipher: PixelGrid, t: AttackTranscript) -> dict[str, PixelGrid]:
    side = cipher.side
    ks = PixelGrid(side, t.recovered_keystream)
    probe, probe_cipher = t.exchanges[1]
    return {
        "cipher": cipher,
        "zero_probe": PixelGrid.zeros(side),
        "zero_probe_shuffled": PixelGrid.zeros(side),
        "keystream": ks,
        "recovered_shuffled": cipher ^ ks,
        "index_probe": probe,
        "index_probe_shuffled": probe_cipher ^ ks,
        "index_probe_cipher": probe_cipher,
        "recovered": t.recovered_plaintext,
    }


def cmd_attack(args) -> int:
    cipher = read_pgm(args.cipher)
    if args.oracle:
        oracle = RemoteOracle(*parse_address(args.oracle))
    else:
        oracle = KeyedOracle(load_key(args.key))
    with oracle:
        t = full_attack(oracle, cipher)

    write_pgm(t.recovered_plaintext, args.out)
    if args.dump_keystream:
        Path(args.dump_keystream).write_bytes(t.recovered_keystream.tobytes())
    if args.dump_perm:
        write_permutation(t.recovered_permutation, args.dump_perm)
    if args.figure:
        from .figures import render_pipeline

        render_pipeline(_attack_images(cipher, t), args.figure, title=f"{cipher.side}x{cipher.side} attack")

    _emit("side", cipher.side)
    _emit("oracle_queries", t.oracle_queries)
    _emit("index_probes", t.oracle_queries - 1)
    _emit("keystream_sha256", hashlib.sha256(t.recovered_keystream.tobytes()).hexdigest())
    _emit("plaintext_sha256", hashlib.sha256(t.recovered_plaintext.tobytes()).hexdigest())
    for note in t.notes:
        _emit("note", note)
    return EXIT_OK


def cmd_demo_algorithm1(args) -> int:
    from .demo import run_algorithm1

    result = run_algorithm1()
    for name in ("plain", "keystream", "cipher", "recovered_shuffled", "index_probe", "index_probe_cipher",
                 "index_probe_shuffled", "recovered"):
        print(f"# {name}")
        print(_format_matrix(result.images[name]))
    for check in result.checks:
        _emit("check", check.name, "PASS" if check.ok else "FAIL")
    _emit("check", "oracle_queries == 2", "PASS" if result.oracle_queries == 2 else "FAIL")
    if args.figure:
        from .figures import render_pipeline

        render_pipeline(result.images, args.figure, title="4x4 worked example")
    return EXIT_OK if result.ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chaoscrack", description="Chaotic image cipher and its chosen-plaintext break.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, helptext in (
        ("encrypt", cmd_encrypt, "encrypt a PGM image"),
        ("decrypt", cmd_decrypt, "decrypt a PGM image"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--key", required=True, help="key file")
        p.add_argument("--in", dest="infile", required=True, help="input PGM")
        p.add_argument("--out", required=True, help="output PGM")
        p.set_defaults(func=fn)

    p = sub.add_parser("keystream", help="write raw keystream bytes")
    p.add_argument("--key", required=True)
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_keystream)

    p = sub.add_parser("keygen", help="write a random key file")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("oracle-serve", help="serve encryption queries over TCP")
    p.add_argument("--key", required=True)
    p.add_argument("--listen", required=True, help="HOST:PORT")
    p.set_defaults(func=cmd_oracle_serve)

    p = sub.add_parser("attack", help="recover a plaintext through an encryption oracle")
    p.add_argument("--cipher", required=True, help="intercepted PGM")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--oracle", help="HOST:PORT of a running oracle-serve")
    src.add_argument("--key", help="key file for an in-process oracle")
    p.add_argument("--out", required=True, help="recovered PGM")
    p.add_argument("--dump-keystream", help="write recovered keystream as raw bytes")
    p.add_argument("--dump-perm", help="write recovered permutation, one source index per line")
    p.add_argument("--figure", help="render the pipeline panels to this image file")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("demo-algorithm1", help="replay and verify the 4x4 worked example")
    p.add_argument("--figure", help="render the pipeline panels to this image file")
    p.set_defaults(func=cmd_demo_algorithm1)
    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose or args.command == "oracle-serve" else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    try:
        return args.func(args)
    except OracleError as e:
        return _fail(e, EXIT_PROTOCOL)
    except (KeyFileError, InvalidKeyError) as e:
        return _fail(e, EXIT_USAGE)
    except (OSError, ChaosCrackError) as e:
        return _fail(e, EXIT_IO)
    except ValueError as e:
        return _fail(e, EXIT_USAGE)


def _fail(err: Exception, code: int) -> int:
    print(f"chaoscrack: error: {err}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
