"""Encryption oracles: the exposed encryption machine the attacker queries.

An oracle answers chosen-plaintext encryption queries under a key it never
reveals.  :class:`KeyedOracle` runs the cipher in-process, :class:`RemoteOracle`
talks to an :class:`OracleServer` over TCP.

Wire format, all integers big-endian::

    request   b"CQ" | u32 N | N*N plaintext bytes (row-major)
    response  b"CR" | u32 N | N*N ciphertext bytes
    error     b"CE" | u16 code

A connection carries any number of request/response pairs in sequence.  After
an error frame the server closes the connection.
"""

from __future__ import annotations

import logging
import socket
import socketserver
import struct
import threading

import numpy as np

from .arnold import PermutationMap
from .cipher import encrypt_with_parts, key_parts
from .errors import (
    ChaosCrackError,
    OracleConnectionError,
    OracleProtocolError,
    SizeMismatchError,
)
from .grid import PixelGrid, as_byte_array
from .keys import SecretKey
from .keystream import DEFAULT_DT, DEFAULT_TRANSIENT

log = logging.getLogger(__name__)

REQUEST_MAGIC = b"CQ"
RESPONSE_MAGIC = b"CR"
ERROR_MAGIC = b"CE"
MAX_SIDE = 4096
ERROR_DRAIN_SECONDS = 0.5

ERR_BAD_MAGIC = 1
ERR_BAD_SIZE = 2
ERR_TRUNCATED = 3
ERR_ENCRYPT_FAILED = 4

ERROR_NAMES = {
    ERR_BAD_MAGIC: "bad magic",
    ERR_BAD_SIZE: "image side out of range",
    ERR_TRUNCATED: "truncated frame",
    ERR_ENCRYPT_FAILED: "encryption failed",
}

_U32 = struct.Struct(">I")
_U16 = struct.Struct(">H")


def encode_request(img: PixelGrid) -> bytes:
    return REQUEST_MAGIC + _U32.pack(img.side) + img.tobytes()


def encode_response(img: PixelGrid) -> bytes:
    return RESPONSE_MAGIC + _U32.pack(img.side) + img.tobytes()


def encode_error(code: int) -> bytes:
    return ERROR_MAGIC + _U16.pack(code)


def _recv_exact(sock: socket.socket, n: int) -> bytes:
    chunks = []
    remaining = n
    while remaining:
        chunk = sock.recv(min(remaining, 1 << 16))
        if not chunk:
            break
        chunks.append(chunk)
        remaining -= len(chunk)
    return b"".join(chunks)


class Oracle:
    """Base class: counts successful queries and delegates to ``_encrypt``."""

    def __init__(self):
        self.query_count = 0

    def encrypt(self, img: PixelGrid) -> PixelGrid:
        out = self._encrypt(img)
        if out.side != img.side:
            raise SizeMismatchError(f"oracle answered {out.side}x{out.side} for a {img.side}x{img.side} query")
        self.query_count += 1
        return out

    def _encrypt(self, img: PixelGrid) -> PixelGrid:
        raise NotImplementedError

    def close(self) -> None:
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


class KeyedOracle(Oracle):
    """Runs the real cipher under a hidden key."""

    def __init__(self, key: SecretKey, dt: float = DEFAULT_DT, transient: int = DEFAULT_TRANSIENT):
        super().__init__()
        self.__key = key
        self.__dt = dt
        self.__transient = transient
        # per-side (permutation, keystream); the key is fixed so these never change
        self.__parts: dict[int, tuple[PermutationMap, np.ndarray]] = {}

    def _encrypt(self, img: PixelGrid) -> PixelGrid:
        parts = self.__parts.get(img.side)
        if parts is None:
            parts = self.__parts[img.side] = key_parts(self.__key, img.side, self.__dt, self.__transient)
        return encrypt_with_parts(img, *parts)

    def __repr__(self) -> str:
        return f"KeyedOracle(queries={self.query_count})"


class PartsOracle(Oracle):
    """Encrypts with an injected permutation and keystream of one fixed side."""

    def __init__(self, perm: PermutationMap, keystream):
        super().__init__()
        self._perm = perm
        self._ks = as_byte_array(keystream)
        if self._ks.size != perm.size:
            raise SizeMismatchError("keystream length must equal the permutation size")

    def _encrypt(self, img: PixelGrid) -> PixelGrid:
        return encrypt_with_parts(img, self._perm, self._ks)

    def __repr__(self) -> str:
        return f"PartsOracle(side={self._perm.side}, queries={self.query_count})"


class RecordingOracle(Oracle):
    """Forwards to another oracle and keeps every (query, answer) pair."""

    def __init__(self, inner: Oracle):
        super().__init__()
        self.inner = inner
        self.exchanges: list[tuple[PixelGrid, PixelGrid]] = []

    def _encrypt(self, img: PixelGrid) -> PixelGrid:
        out = self.inner.encrypt(img)
        self.exchanges.append((img, out))
        return out


def parse_address(addr: str) -> tuple[str, int]:
    host, sep, port = addr.rpartition(":")
    if not sep or not port.isdigit():
        raise ValueError(f"address must look like HOST:PORT, got {addr!r}")
    return host or "127.0.0.1", int(port)


class RemoteOracle(Oracle):
    """Client side of the TCP oracle; keeps one connection open across queries."""

    def __init__(self, host: str, port: int, timeout: float | None = 30.0):
        super().__init__()
        self.address = (host, port)
        self.timeout = timeout
        self._sock: socket.socket | None = None

    @classmethod
    def from_string(cls, addr: str, timeout: float | None = 30.0) -> RemoteOracle:
        return cls(*parse_address(addr), timeout=timeout)

    def _connect(self) -> socket.socket:
        if self._sock is None:
            try:
                self._sock = socket.create_connection(self.address, timeout=self.timeout)
            except OSError as e:
                raise OracleConnectionError(f"cannot reach oracle at {self.address[0]}:{self.address[1]}: {e}") from e
        return self._sock

    def _encrypt(self, img: PixelGrid) -> PixelGrid:
        if img.side > MAX_SIDE:
            raise SizeMismatchError(f"image side {img.side} exceeds the wire limit {MAX_SIDE}")
        sock = self._connect()
        try:
            sock.sendall(encode_request(img))
            return self._read_response(sock, img.side)
        except OSError as e:
            self.close()
            raise OracleConnectionError(f"oracle connection failed: {e}") from e
        except OracleProtocolError:
            self.close()
            raise

    @staticmethod
    def _read_response(sock: socket.socket, side: int) -> PixelGrid:
        magic = _recv_exact(sock, 2)
        if magic == ERROR_MAGIC:
            raw = _recv_exact(sock, 2)
            if len(raw) != 2:
                raise OracleProtocolError("truncated error frame")
            (code,) = _U16.unpack(raw)
            raise OracleProtocolError(f"oracle error {code}: {ERROR_NAMES.get(code, 'unknown')}", code)
        if magic != RESPONSE_MAGIC:
            raise OracleProtocolError(f"unexpected response magic {magic!r}")
        raw = _recv_exact(sock, 4)
        if len(raw) != 4:
            raise OracleProtocolError("truncated response header")
        (n,) = _U32.unpack(raw)
        if n != side:
            raise OracleProtocolError(f"response side {n} does not match request side {side}")
        body = _recv_exact(sock, n * n)
        if len(body) != n * n:
            raise OracleProtocolError(f"truncated response body ({len(body)} of {n * n} bytes)")
        return PixelGrid(n, body)

    def close(self) -> None:
        if self._sock is not None:
            try:
                self._sock.close()
            finally:
                self._sock = None

    def __repr__(self) -> str:
        return f"RemoteOracle({self.address[0]}:{self.address[1]}, queries={self.query_count})"


class _Handler(socketserver.BaseRequestHandler):
    server: OracleServer

    def handle(self):
        sock = self.request
        while True:
            magic = _recv_exact(sock, 2)
            if not magic:
                return
            if magic != REQUEST_MAGIC:
                self._fail(ERR_BAD_MAGIC)
                return
            raw = _recv_exact(sock, 4)
            if len(raw) != 4:
                self._fail(ERR_TRUNCATED)
                return
            (n,) = _U32.unpack(raw)
            if not 2 <= n <= MAX_SIDE:
                self._fail(ERR_BAD_SIZE)
                return
            body = _recv_exact(sock, n * n)
            if len(body) != n * n:
                self._fail(ERR_TRUNCATED)
                return
            try:
                out = self.server.backing.encrypt(PixelGrid(n, body))
            except ChaosCrackError:
                self._fail(ERR_ENCRYPT_FAILED)
                return
            self.server.query_count += 1
            log.info("served query %d (side %d)", self.server.query_count, n)
            sock.sendall(encode_response(out))

    def _fail(self, code: int) -> None:
        log.warning("rejecting frame from %s: %s", self.client_address[0], ERROR_NAMES[code])
        sock = self.request
        try:
            sock.sendall(encode_error(code))
            sock.shutdown(socket.SHUT_WR)
            # Drain what the client already sent; closing with unread input
            # makes the kernel send RST, which can destroy the error frame.
            sock.settimeout(ERROR_DRAIN_SECONDS)
            while sock.recv(1 << 16):
                pass
        except OSError:
            pass


class OracleServer(socketserver.TCPServer):
    """Sequential TCP encryption server wrapping an in-process oracle."""

    allow_reuse_address = True

    def __init__(self, backing: Oracle, address: tuple[str, int] = ("127.0.0.1", 0)):
        self.backing = backing
        self.query_count = 0
        super().__init__(address, _Handler)

    @property
    def address(self) -> tuple[str, int]:
        host, port = self.server_address[:2]
        return host, port

    def start_background(self, poll_interval: float = 0.05) -> threading.Thread:
        t = threading.Thread(
            target=self.serve_forever, args=(poll_interval,), name="oracle-server", daemon=True
        )
        t.start()
        return t


def serve(key: SecretKey, address: tuple[str, int]) -> None:
    """Serve encryption queries under ``key`` until interrupted."""
    with OracleServer(KeyedOracle(key), address) as server:
        host, port = server.address
        log.info("oracle listening on %s:%d", host, port)
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
        log.info("oracle shutting down after %d queries", server.query_count)
