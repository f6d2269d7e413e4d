import logging
import socket
import struct

import pytest

from chaoscrack import reference as ref
from chaoscrack.cipher import encrypt
from chaoscrack.errors import OracleConnectionError, OracleProtocolError
from chaoscrack.grid import PixelGrid
from chaoscrack.keys import SecretKey
from chaoscrack.oracle import (
    ERR_BAD_MAGIC,
    ERR_BAD_SIZE,
    ERR_TRUNCATED,
    KeyedOracle,
    OracleServer,
    PartsOracle,
    RemoteOracle,
    encode_request,
    parse_address,
)


@pytest.fixture
def key(rng):
    return SecretKey.random(rng)


@pytest.fixture
def server(key):
    srv = OracleServer(KeyedOracle(key))
    srv.start_background()
    yield srv
    srv.shutdown()
    srv.server_close()


def raw_exchange(address, payload: bytes) -> bytes:
    with socket.create_connection(address, timeout=5) as s:
        s.sendall(payload)
        try:
            s.shutdown(socket.SHUT_WR)
        except OSError:
            pass
        chunks = []
        while chunk := s.recv(4096):
            chunks.append(chunk)
    return b"".join(chunks)


def test_zero_query_returns_key(ref_perm, ref_ks):
    oracle = PartsOracle(ref_perm, ref_ks)
    assert oracle.encrypt(PixelGrid.zeros(4)) == ref.grid(ref.KEY)
    assert oracle.query_count == 1


def test_keyed_matches_cipher(key, rng):
    oracle = KeyedOracle(key)
    img = PixelGrid.random(8, rng)
    a, b = oracle.encrypt(img), oracle.encrypt(img)
    assert a == b == encrypt(img, key)
    assert oracle.query_count == 2


def test_key_not_in_repr(key):
    assert key.to_text() not in repr(KeyedOracle(key))
    assert str(key.x0) not in repr(KeyedOracle(key))


def test_parse_address():
    assert parse_address("127.0.0.1:9000") == ("127.0.0.1", 9000)
    assert parse_address(":9000") == ("127.0.0.1", 9000)
    with pytest.raises(ValueError):
        parse_address("localhost")


def test_frame_layout():
    img = PixelGrid.from_rows([[1, 2], [3, 4]])
    assert encode_request(img) == b"CQ\x00\x00\x00\x02\x01\x02\x03\x04"


def test_well_formed_request(server, key):
    img = ref.grid(ref.PLAIN)
    raw = raw_exchange(server.address, encode_request(img))
    assert raw[:2] == b"CR"
    assert struct.unpack(">I", raw[2:6]) == (4,)
    assert raw[6:] == encrypt(img, key).tobytes()


@pytest.mark.parametrize(
    "payload,code",
    [
        (b"XX\x00\x00\x00\x02" + bytes(4), ERR_BAD_MAGIC),
        (b"CQ\x00\x00\x10\x01", ERR_BAD_SIZE),
        (b"CQ\x00\x00\x00\x01\x00", ERR_BAD_SIZE),
        (b"CQ\x00\x00\x00\x04" + bytes(10), ERR_TRUNCATED),
        (b"CQ\x00\x00", ERR_TRUNCATED),
    ],
)
def test_malformed_frames_get_error_frame(server, payload, code):
    assert raw_exchange(server.address, payload) == b"CE" + struct.pack(">H", code)
    # the server is still alive afterwards
    with RemoteOracle(*server.address) as remote:
        assert remote.encrypt(PixelGrid.zeros(2)).side == 2


def test_sequential_requests_counted(server, rng, caplog):
    with caplog.at_level(logging.INFO, logger="chaoscrack.oracle"):
        with RemoteOracle(*server.address) as remote:
            for _ in range(3):
                remote.encrypt(PixelGrid.random(4, rng))
            assert remote.query_count == 3
    assert server.query_count == 3
    assert "served query 3" in caplog.text


def test_remote_equals_local(server, key, rng):
    local = KeyedOracle(key)
    with RemoteOracle(*server.address) as remote:
        for _ in range(50):
            img = PixelGrid.random(int(rng.integers(2, 33)), rng)
            assert remote.encrypt(img) == local.encrypt(img)


def test_key_never_on_wire_or_in_logs(server, key, rng, caplog):
    secret = key.to_text().encode()
    field_values = [repr(getattr(key, f)).encode() for f in ("x0", "y0", "z0")]
    seen = b""
    with caplog.at_level(logging.DEBUG):
        seen += raw_exchange(server.address, encode_request(PixelGrid.random(16, rng)))
        seen += raw_exchange(server.address, b"bogus!")
    logs = caplog.text.encode()
    assert secret not in seen and secret not in logs
    for v in field_values:
        assert v not in logs


def test_remote_error_frame_raises(server):
    remote = RemoteOracle(*server.address)
    remote._connect().sendall(b"CQ\x00\x00\x00\x01\x00")
    with pytest.raises(OracleProtocolError) as exc:
        remote._read_response(remote._sock, 1)
    assert exc.value.code == ERR_BAD_SIZE
    remote.close()


def test_unreachable_oracle():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        port = s.getsockname()[1]
    with pytest.raises(OracleConnectionError):
        RemoteOracle("127.0.0.1", port, timeout=2).encrypt(PixelGrid.zeros(2))


def test_malformed_response_detected():
    lsock = socket.create_server(("127.0.0.1", 0))
    import threading

    def bad_server():
        conn, _ = lsock.accept()
        conn.recv(100)
        conn.sendall(b"CR\x00\x00\x00\x03" + bytes(9))
        conn.close()

    t = threading.Thread(target=bad_server)
    t.start()
    with pytest.raises(OracleProtocolError):
        RemoteOracle(*lsock.getsockname()).encrypt(PixelGrid.zeros(2))
    t.join()
    lsock.close()
