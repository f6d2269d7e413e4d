"""Chen-system keystream generator.

The Chen system is integrated with fixed-step classical RK4 and every
post-transient state contributes three bytes, one per coordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import IntegrationDivergedError
from .keys import C_MAX, C_MIN, SecretKey

DEFAULT_DT = 0.001
DEFAULT_TRANSIENT = 3000
QUANT_SCALE = 1e14


@dataclass(frozen=True)
class ChenParams:
    c: float
    a: float = 35.0
    b: float = 3.0

    def __post_init__(self):
        if self.a != 35.0 or self.b != 3.0:
            raise ValueError("Chen parameters a and b are fixed at 35 and 3")
        if not C_MIN <= self.c <= C_MAX:
            raise ValueError(f"c must lie in [{C_MIN}, {C_MAX}] for chaotic behaviour")


class ChenState(NamedTuple):
    x: float
    y: float
    z: float


def chen_derivative(s: ChenState, p: ChenParams) -> ChenState:
    x, y, z = s
    return ChenState(
        p.a * (y - x),
        (p.c - p.a) * x - x * z + p.c * y,
        x * y - p.b * z,
    )


def _rk4_run(s0, a, b, c, steps, dt, keep_from, out):
    # Scalar loop with the derivative inlined; roughly 5x faster than calling
    # chen_derivative per stage.
    x, y, z = s0
    h2 = dt / 2.0
    h6 = dt / 6.0
    ca = c - a
    for i in range(steps):
        k1x = a * (y - x)
        k1y = ca * x - x * z + c * y
        k1z = x * y - b * z

        x2, y2, z2 = x + h2 * k1x, y + h2 * k1y, z + h2 * k1z
        k2x = a * (y2 - x2)
        k2y = ca * x2 - x2 * z2 + c * y2
        k2z = x2 * y2 - b * z2

        x3, y3, z3 = x + h2 * k2x, y + h2 * k2y, z + h2 * k2z
        k3x = a * (y3 - x3)
        k3y = ca * x3 - x3 * z3 + c * y3
        k3z = x3 * y3 - b * z3

        x4, y4, z4 = x + dt * k3x, y + dt * k3y, z + dt * k3z
        k4x = a * (y4 - x4)
        k4y = ca * x4 - x4 * z4 + c * y4
        k4z = x4 * y4 - b * z4

        x += h6 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        y += h6 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        z += h6 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)

        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
            raise IntegrationDivergedError(i + 1)
        if i >= keep_from:
            out.append((x, y, z))


def integrate_chen(
    s0: ChenState | tuple[float, float, float],
    p: ChenParams,
    steps: int,
    dt: float = DEFAULT_DT,
    transient: int = DEFAULT_TRANSIENT,
) -> np.ndarray:
    """Integrate the Chen system and return ``steps`` states as a (steps, 3) array.

    The first ``transient`` RK4 steps are run but not returned, so row 0 is
    the state after ``transient + 1`` steps.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if transient < 0:
        raise ValueError("transient must be >= 0")
    out: list[tuple[float, float, float]] = []
    _rk4_run(tuple(map(float, s0)), p.a, p.b, p.c, transient + steps, dt, transient, out)
    return np.array(out, dtype=np.float64)


def quantize(states: np.ndarray) -> np.ndarray:
    """Map each coordinate v to ``floor(|v| * 1e14) mod 256``, row by row."""
    flat = np.abs(np.asarray(states, dtype=np.float64)).ravel()
    # float64 products stay below 2**63 for |v| < ~9e4, far above the attractor size
    return (np.floor(flat * QUANT_SCALE).astype(np.int64) % 256).astype(np.uint8)


def derive_keystream(
    key: SecretKey,
    length: int,
    dt: float = DEFAULT_DT,
    transient: int = DEFAULT_TRANSIENT,
) -> np.ndarray:
    """Return ``length`` keystream bytes derived from the Chen part of ``key``."""
    if length < 1:
        raise ValueError("keystream length must be >= 1")
    n_states = -(-length // 3)
    states = integrate_chen((key.x0, key.y0, key.z0), ChenParams(key.c), n_states, dt, transient)
    return quantize(states)[:length]
