"""Secret key of the cipher and its ``name=value`` text file format.

Example key file::

    # cat map
    p=3
    q=5
    n=7
    # Chen initial state and parameter
    x0=0.3
    y0=-0.4
    z0=1.2
    c=28
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from os import PathLike
from pathlib import Path

import numpy as np

from .errors import InvalidKeyError, KeyFileError

C_MIN, C_MAX = 20.0, 28.4

_INT_FIELDS = ("p", "q", "n")
_REAL_FIELDS = ("x0", "y0", "z0", "c")
FIELDS = _INT_FIELDS + _REAL_FIELDS


@dataclass(frozen=True, repr=False)
class SecretKey:
    p: int
    q: int
    n: int
    x0: float
    y0: float
    z0: float
    c: float

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise InvalidKeyError("cat map parameters p and q must be positive")
        if self.n < 1:
            raise InvalidKeyError("cat map iteration count n must be >= 1")
        if not C_MIN <= self.c <= C_MAX:
            raise InvalidKeyError(f"Chen parameter c must lie in [{C_MIN}, {C_MAX}]")
        if not all(math.isfinite(v) for v in (self.x0, self.y0, self.z0)):
            raise InvalidKeyError("Chen initial values must be finite")

    def __repr__(self) -> str:
        # keep key material out of tracebacks and logs
        return "SecretKey(<hidden>)"

    @classmethod
    def random(cls, rng: np.random.Generator, max_cat: int = 50, max_n: int = 20) -> SecretKey:
        x0, y0, z0 = rng.uniform(-10.0, 10.0, 3)
        return cls(
            p=int(rng.integers(1, max_cat + 1)),
            q=int(rng.integers(1, max_cat + 1)),
            n=int(rng.integers(1, max_n + 1)),
            x0=float(x0),
            y0=float(y0),
            z0=float(z0),
            c=float(rng.uniform(C_MIN, C_MAX)),
        )

    def to_text(self) -> str:
        return "".join(f"{name}={getattr(self, name)!r}\n" for name in FIELDS)


def parse_key(text: str) -> SecretKey:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, value = line.partition("=")
        name, value = name.strip(), value.strip()
        if not sep:
            raise KeyFileError(f"line {lineno}: expected name=value")
        if name not in FIELDS:
            raise KeyFileError(f"line {lineno}: unknown field {name!r}")
        if name in values:
            raise KeyFileError(f"line {lineno}: duplicate field {name!r}")
        values[name] = value
    missing = [f for f in FIELDS if f not in values]
    if missing:
        raise KeyFileError(f"missing fields: {', '.join(missing)}")

    kwargs: dict[str, int | float] = {}
    for name in _INT_FIELDS:
        try:
            kwargs[name] = int(values[name])
        except ValueError:
            raise KeyFileError(f"field {name} must be an integer") from None
    for name in _REAL_FIELDS:
        try:
            kwargs[name] = float(values[name])
        except ValueError:
            raise KeyFileError(f"field {name} must be a decimal number") from None
    return SecretKey(**kwargs)  # type: ignore[arg-type]


def load_key(path: str | PathLike) -> SecretKey:
    return parse_key(Path(path).read_text(encoding="utf-8"))


def save_key(key: SecretKey, path: str | PathLike) -> None:
    Path(path).write_text(key.to_text(), encoding="utf-8")
