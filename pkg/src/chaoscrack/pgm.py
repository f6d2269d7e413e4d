"""Binary PGM (P5) reading and writing for square 8-bit images."""

from __future__ import annotations

from os import PathLike
from pathlib import Path

from .errors import ChaosCrackError
from .grid import PixelGrid


class PgmError(ChaosCrackError, ValueError):
    pass


class BadMagicError(PgmError):
    pass


class BadHeaderError(PgmError):
    pass


class BadMaxvalError(PgmError):
    pass


class NonSquareError(PgmError):
    pass


class TruncatedRasterError(PgmError):
    pass


class TrailingDataError(PgmError):
    pass


_WS = b" \t\n\r\v\f"


def _header_token(buf: bytes, pos: int) -> tuple[bytes, int]:
    while pos < len(buf):
        ch = buf[pos : pos + 1]
        if ch in _WS:
            pos += 1
        elif ch == b"#":
            eol = buf.find(b"\n", pos)
            pos = len(buf) if eol < 0 else eol + 1
        else:
            break
    start = pos
    while pos < len(buf) and buf[pos : pos + 1] not in _WS and buf[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise BadHeaderError("PGM header ends early")
    return buf[start:pos], pos


def parse_pgm(buf: bytes) -> PixelGrid:
    if buf[:2] != b"P5":
        raise BadMagicError(f"not a binary PGM file (magic {buf[:2]!r})")
    pos = 2
    if pos >= len(buf) or buf[pos : pos + 1] not in _WS:
        raise BadHeaderError("missing whitespace after magic")
    fields = []
    for name in ("width", "height", "maxval"):
        tok, pos = _header_token(buf, pos)
        if not tok.isdigit():
            raise BadHeaderError(f"{name} is not a decimal integer: {tok!r}")
        fields.append(int(tok))
    width, height, maxval = fields
    if maxval != 255:
        raise BadMaxvalError(f"maxval must be 255, got {maxval}")
    if width != height:
        raise NonSquareError(f"image must be square, got {width}x{height}")
    if width < 2:
        raise BadHeaderError(f"image side must be >= 2, got {width}")
    if pos >= len(buf) or buf[pos : pos + 1] not in _WS:
        raise TruncatedRasterError("missing whitespace before raster")
    raster = buf[pos + 1 :]
    expected = width * height
    if len(raster) < expected:
        raise TruncatedRasterError(f"raster has {len(raster)} bytes, header promises {expected}")
    if len(raster) > expected:
        raise TrailingDataError(f"{len(raster) - expected} bytes after the raster")
    return PixelGrid(width, raster)


def format_pgm(img: PixelGrid) -> bytes:
    return f"P5\n{img.side} {img.side}\n255\n".encode("ascii") + img.tobytes()


def read_pgm(path: str | PathLike) -> PixelGrid:
    return parse_pgm(Path(path).read_bytes())


def write_pgm(img: PixelGrid, path: str | PathLike) -> None:
    Path(path).write_bytes(format_pgm(img))
