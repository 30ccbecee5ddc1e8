"""Fixed-step classical fourth-order Runge-Kutta integration."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np


def time_grid(t_max: float, dt: float) -> tuple[np.ndarray, np.ndarray]:
    """Sample times ``0, dt, 2 dt, ...`` ending exactly at ``t_max``, and the step sizes.

    Every step is exactly ``dt`` except the last, which is shortened when
    ``t_max`` is not a multiple of ``dt``.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    if not t_max >= 0:
        raise ValueError(f"t_max must be non-negative, got {t_max!r}")
    n = math.ceil(t_max / dt - 1e-9)
    times = np.arange(n + 1, dtype=float) * dt
    steps = np.full(n, float(dt))
    if n:
        times[-1] = t_max
        steps[-1] = t_max - (n - 1) * dt
    return times, steps


def rk4_step(f: Callable[[np.ndarray], np.ndarray], y: np.ndarray, h: float) -> np.ndarray:
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4(f: Callable[[np.ndarray], np.ndarray], y0, steps: np.ndarray) -> np.ndarray:
    """Integrate the autonomous system ``y' = f(y)`` through ``steps``.

    Returns the ``len(steps) + 1`` states including ``y0``.
    """
    y = np.asarray(y0, dtype=float)
    out = np.empty((len(steps) + 1,) + y.shape)
    out[0] = y
    for n, h in enumerate(steps, start=1):
        y = rk4_step(f, y, h)
        out[n] = y
    return out


def rk4_propagator(a: np.ndarray, h: float) -> np.ndarray:
    """One RK4 step for ``y' = a y`` as a matrix: the degree-4 Taylor polynomial of ``exp(h a)``."""
    ha = h * a
    eye = np.eye(a.shape[0])
    return eye + ha @ (eye + ha @ (eye / 2 + ha @ (eye / 6 + ha / 24)))


def rk4_linear(a: np.ndarray, y0, steps: np.ndarray) -> np.ndarray:
    """RK4 for the linear system ``y' = a y``.

    Identical to :func:`rk4` with ``f = a @ y`` up to rounding, but each step is a
    single matrix-vector product.
    """
    a = np.asarray(a, dtype=float)
    y = np.asarray(y0, dtype=float)
    out = np.empty((len(steps) + 1,) + y.shape)
    out[0] = y
    cache: dict[float, np.ndarray] = {}
    for n, h in enumerate(steps, start=1):
        p = cache.get(h)
        if p is None:
            p = cache[h] = rk4_propagator(a, h)
        y = p @ y
        out[n] = y
    return out
