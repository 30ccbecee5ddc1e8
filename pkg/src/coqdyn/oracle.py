"""Independent cross-check through real matrix representations.

Coquaternions are isomorphic to real 2x2 matrices; with the images

    1 -> [[1, 0], [0, 1]]     i -> [[0, 1], [-1, 0]]
    j -> [[1, 0], [0, -1]]    k -> [[0, -1], [-1, 0]]

a 2x2 coquaternionic matrix becomes a 4x4 real matrix and a state vector a 4x2
real matrix.  Evolution is then ``exp(-A t)`` applied to that block, computed by
scaling and squaring, which shares nothing with the Runge-Kutta path.
"""

from __future__ import annotations

import math

import numpy as np

from .coquaternion import Coquaternion
from .dynamics import StateVector
from .errors import NullGenerator
from .matrix2 import CoqMatrix2, Hamiltonian, generator

_BASIS_IMAGES = np.array([
    [[1.0, 0.0], [0.0, 1.0]],
    [[0.0, 1.0], [-1.0, 0.0]],
    [[1.0, 0.0], [0.0, -1.0]],
    [[0.0, -1.0], [-1.0, 0.0]],
])

EXPM_SCALE_TARGET = 0.5
EXPM_TERMS = 20


def real_rep(q: Coquaternion) -> np.ndarray:
    return np.tensordot(np.array(list(q), dtype=float), _BASIS_IMAGES, axes=1)


def from_real_rep(m: np.ndarray) -> Coquaternion:
    """Inverse of :func:`real_rep`."""
    (a, b), (c, d) = np.asarray(m, dtype=float)
    return Coquaternion((a + d) / 2, (b - c) / 2, (a - d) / 2, -(b + c) / 2)


def real_rep4(m: CoqMatrix2) -> np.ndarray:
    return np.block([[real_rep(m.a11), real_rep(m.a12)],
                     [real_rep(m.a21), real_rep(m.a22)]])


def state_rep(psi: StateVector) -> np.ndarray:
    """The 4x2 real block of a state: each amplitude replaced by its 2x2 image."""
    return np.vstack([real_rep(psi.psi1), real_rep(psi.psi2)])


def state_from_rep(block: np.ndarray) -> StateVector:
    return StateVector(from_real_rep(block[:2]), from_real_rep(block[2:]))


def gram_form(block: np.ndarray) -> np.ndarray:
    """Image of ``<psi|psi>``: ``adj(P1) P1 + adj(P2) P2``, a multiple of the identity."""
    def adj(m):
        return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
    return adj(block[:2]) @ block[:2] + adj(block[2:]) @ block[2:]


def expm(a: np.ndarray, terms: int = EXPM_TERMS) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a truncated Taylor series.

    The matrix is scaled by ``2^-s`` until its max-abs entry is at most 0.5; for
    the small matrices used here a 20-term series is then far below 1e-12.
    """
    a = np.asarray(a, dtype=float)
    norm = np.max(np.abs(a)) if a.size else 0.0
    s = 0
    if norm > EXPM_SCALE_TARGET:
        s = max(0, math.ceil(math.log2(norm / EXPM_SCALE_TARGET)))
    x = a / (2.0 ** s)
    eye = np.eye(a.shape[0])
    result = eye.copy()
    term = eye.copy()
    for n in range(1, terms + 1):
        term = term @ x / n
        result = result + term
    for _ in range(s):
        result = result @ result
    return result


def propagator(h: Hamiltonian, t: float) -> np.ndarray:
    """``exp(-A t)`` for ``A = real_rep4(i_H H)``."""
    if h.generator_unit is None:
        raise NullGenerator("no generator in the null regime")
    return expm(-real_rep4(generator(h)) * t)


def evolve_exact(h: Hamiltonian, psi0: StateVector, t: float) -> StateVector:
    if t == 0:
        return psi0
    return state_from_rep(propagator(h, t) @ state_rep(psi0))


def evolve_exact_series(h: Hamiltonian, psi0: StateVector, times) -> np.ndarray:
    """Exact states at each of ``times`` as an ``(n, 8)`` array (one exponential per time)."""
    block0 = state_rep(psi0)
    a = real_rep4(generator(h))
    out = np.empty((len(times), 8))
    for n, t in enumerate(times):
        psi = psi0 if t == 0 else state_from_rep(expm(-a * t) @ block0)
        out[n] = psi.as_array()
    return out


def spectrum_oracle(h: Hamiltonian) -> np.ndarray:
    """Eigenvalues of the 4x4 real image of the Hamiltonian matrix."""
    return np.linalg.eigvals(real_rep4(h.matrix))
