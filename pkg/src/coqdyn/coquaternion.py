"""Coquaternion (split-quaternion) arithmetic.

A coquaternion is ``q = q0 + i q1 + j q2 + k q3`` with

    i^2 = -1,  j^2 = k^2 = ijk = +1,
    ij = -ji = k,  jk = -kj = -i,  ki = -ik = j.

The squared modulus ``conj(q) q = q0^2 + q1^2 - q2^2 - q3^2`` is indefinite, so
non-zero elements with vanishing modulus (null elements) have no inverse and the
polar decomposition splits into four branches.

Components are stored as given: integer inputs stay integers, which lets the
multiplication table be checked in exact arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from numbers import Real
from typing import Iterable, Optional

import numpy as np

from .errors import DegeneratePolar, NullCoquaternion, ZeroCoquaternion

NULL_RTOL = 1e-12


@dataclass(frozen=True, slots=True)
class Coquaternion:
    q0: float = 0.0
    q1: float = 0.0
    q2: float = 0.0
    q3: float = 0.0

    @classmethod
    def from_array(cls, a: Iterable[float]) -> "Coquaternion":
        q0, q1, q2, q3 = (float(x) for x in a)
        return cls(q0, q1, q2, q3)

    def as_array(self) -> np.ndarray:
        return np.array([self.q0, self.q1, self.q2, self.q3], dtype=float)

    def __iter__(self):
        return iter((self.q0, self.q1, self.q2, self.q3))

    @property
    def real(self) -> float:
        return self.q0

    @property
    def imag(self) -> "Coquaternion":
        """Pure imaginary part ``i q1 + j q2 + k q3``."""
        return Coquaternion(0 * self.q0, self.q1, self.q2, self.q3)

    def __add__(self, other):
        if isinstance(other, Coquaternion):
            return Coquaternion(self.q0 + other.q0, self.q1 + other.q1,
                                self.q2 + other.q2, self.q3 + other.q3)
        if isinstance(other, Real):
            return Coquaternion(self.q0 + other, self.q1, self.q2, self.q3)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "Coquaternion":
        return Coquaternion(-self.q0, -self.q1, -self.q2, -self.q3)

    def __sub__(self, other):
        if isinstance(other, (Coquaternion, Real)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Real):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Coquaternion):
            return mul(self, other)
        if isinstance(other, Real):
            return Coquaternion(self.q0 * other, self.q1 * other,
                                self.q2 * other, self.q3 * other)
        return NotImplemented

    def __rmul__(self, other):
        # only reached for real scalars, which commute with everything
        if isinstance(other, Real):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Real):
            return Coquaternion(self.q0 / other, self.q1 / other,
                                self.q2 / other, self.q3 / other)
        return NotImplemented

    def conj(self) -> "Coquaternion":
        return conj(self)

    def mod2(self) -> float:
        return mod2(self)

    def imag_norm2(self) -> float:
        return imag_norm2(self)

    def inverse(self) -> "Coquaternion":
        return inverse(self)

    def euclid2(self) -> float:
        """Euclidean (positive-definite) squared length of the component vector."""
        return self.q0 ** 2 + self.q1 ** 2 + self.q2 ** 2 + self.q3 ** 2

    def isclose(self, other: "Coquaternion", atol: float = 1e-12) -> bool:
        return all(abs(a - b) <= atol for a, b in zip(self, other))

    def __repr__(self) -> str:
        return f"Coquaternion({self.q0!r}, {self.q1!r}, {self.q2!r}, {self.q3!r})"


ONE = Coquaternion(1, 0, 0, 0)
I = Coquaternion(0, 1, 0, 0)
J = Coquaternion(0, 0, 1, 0)
K = Coquaternion(0, 0, 0, 1)
ZERO = Coquaternion(0, 0, 0, 0)
BASIS = (ONE, I, J, K)


def mul(p: Coquaternion, q: Coquaternion) -> Coquaternion:
    a0, a1, a2, a3 = p.q0, p.q1, p.q2, p.q3
    b0, b1, b2, b3 = q.q0, q.q1, q.q2, q.q3
    return Coquaternion(
        a0 * b0 - a1 * b1 + a2 * b2 + a3 * b3,
        a0 * b1 + a1 * b0 - a2 * b3 + a3 * b2,
        a0 * b2 + a2 * b0 - a1 * b3 + a3 * b1,
        a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
    )


def conj(q: Coquaternion) -> Coquaternion:
    return Coquaternion(q.q0, -q.q1, -q.q2, -q.q3)


def mod2(q: Coquaternion) -> float:
    """Indefinite squared modulus ``conj(q) q``; may be negative or zero."""
    return q.q0 * q.q0 + q.q1 * q.q1 - q.q2 * q.q2 - q.q3 * q.q3


def imag_norm2(q: Coquaternion) -> float:
    """``q1^2 - q2^2 - q3^2``: positive for time-like, negative for space-like imaginary parts."""
    return q.q1 * q.q1 - q.q2 * q.q2 - q.q3 * q.q3


def null_tolerance(q: Coquaternion) -> float:
    return NULL_RTOL * (1.0 + q.euclid2())


def is_null(q: Coquaternion) -> bool:
    return abs(mod2(q)) <= null_tolerance(q)


def inverse(q: Coquaternion) -> Coquaternion:
    m = mod2(q)
    if abs(m) <= null_tolerance(q):
        raise NullCoquaternion(f"{q!r} is null (mod2={m!r}) and has no inverse")
    return conj(q) / m


class Branch(enum.Enum):
    CIRCULAR = "circular"
    HYPERBOLIC_COSH = "hyperbolic-cosh"
    NULL = "null"
    HYPERBOLIC_SINH = "hyperbolic-sinh"


@dataclass(frozen=True)
class PolarForm:
    """One of the four polar representations of a coquaternion.

    ``sign`` carries the sign of the scalar part on the hyperbolic-cosh and null
    branches, e.g. ``q = -|q| (cosh t + axis sinh t)`` when ``q0 < 0``.
    ``angle`` is ``None`` on the null branch.
    """

    branch: Branch
    modulus: float
    axis: Coquaternion
    angle: Optional[float]
    sign: float = 1.0


def polar_decompose(q: Coquaternion) -> PolarForm:
    """Split ``q`` into modulus, imaginary unit and angle.

    The branch follows the signs of ``mod2(q)`` and ``imag_norm2(q)``:

    * circular: imaginary part time-like, ``q = |q| (cos t + axis sin t)``
    * hyperbolic-cosh: ``mod2 > 0`` with space-like imaginary part,
      ``q = sign |q| (cosh t + axis sinh t)``
    * null: ``mod2 > 0`` with null imaginary part, ``q = q0 (1 + axis)``
    * hyperbolic-sinh: ``mod2 < 0``, ``q = |q| (sinh t + axis cosh t)``

    Raises :class:`ZeroCoquaternion` for ``q == 0`` and :class:`DegeneratePolar`
    for null elements (``mod2 == 0``), none of which has a polar form.
    """
    if q.euclid2() == 0:
        raise ZeroCoquaternion("the zero coquaternion has no polar form")
    eps = null_tolerance(q)
    m = mod2(q)
    n = imag_norm2(q)
    q0 = float(q.q0)
    im = q.imag

    if abs(m) <= eps:
        raise DegeneratePolar(f"{q!r} is null (mod2={m!r}); no polar form exists")

    if m < 0:
        s = math.sqrt(-n)
        return PolarForm(Branch.HYPERBOLIC_SINH, math.sqrt(-m), im / s,
                         math.atanh(q0 / s))

    if abs(n) <= eps:
        return PolarForm(Branch.NULL, abs(q0), im / q0, None, 1.0 if q0 > 0 else -1.0)

    if n > 0:
        s = math.sqrt(n)
        modulus = math.sqrt(m)
        return PolarForm(Branch.CIRCULAR, modulus, im / s, math.atan2(s, q0))

    s = math.sqrt(-n)
    sign = 1.0 if q0 > 0 else -1.0
    # signed angle keeps sign*|q|*(cosh t + axis sinh t) equal to q for q0 < 0
    return PolarForm(Branch.HYPERBOLIC_COSH, math.sqrt(m), im / s,
                     sign * math.atanh(s / abs(q0)), sign)


def reconstruct(pf: PolarForm) -> Coquaternion:
    """Inverse of :func:`polar_decompose`."""
    r, axis, t = pf.modulus, pf.axis, pf.angle
    if pf.branch is Branch.CIRCULAR:
        return r * (ONE * math.cos(t) + axis * math.sin(t))
    if pf.branch is Branch.HYPERBOLIC_COSH:
        return pf.sign * r * (ONE * math.cosh(t) + axis * math.sinh(t))
    if pf.branch is Branch.HYPERBOLIC_SINH:
        return r * (ONE * math.sinh(t) + axis * math.cosh(t))
    # null branch: modulus is |q0|, the sign lives in axis = imag/q0
    q0 = r if pf.sign > 0 else -r
    return Coquaternion(q0, 0, 0, 0) + axis * q0

