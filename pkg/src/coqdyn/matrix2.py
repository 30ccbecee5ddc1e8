"""2x2 coquaternionic matrices, the five Pauli matrices and Hermitian Hamiltonians."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .classify import (
    Regime,
    RegimeKind,
    SpectrumKind,
    as_params,
    classify,
    imag_discriminant,
    spectral_gap2,
)
from .coquaternion import I, J, K, ONE, ZERO, Coquaternion, conj
from .errors import NullGenerator


@dataclass(frozen=True)
class CoqMatrix2:
    a11: Coquaternion
    a12: Coquaternion
    a21: Coquaternion
    a22: Coquaternion

    @classmethod
    def identity(cls) -> "CoqMatrix2":
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def zero(cls) -> "CoqMatrix2":
        return cls(ZERO, ZERO, ZERO, ZERO)

    def entries(self) -> tuple[Coquaternion, Coquaternion, Coquaternion, Coquaternion]:
        return (self.a11, self.a12, self.a21, self.a22)

    def rows(self):
        return ((self.a11, self.a12), (self.a21, self.a22))

    def dagger(self) -> "CoqMatrix2":
        """Coquaternionic conjugate of the transpose."""
        return CoqMatrix2(conj(self.a11), conj(self.a21), conj(self.a12), conj(self.a22))

    def __add__(self, other: "CoqMatrix2") -> "CoqMatrix2":
        return CoqMatrix2(*(a + b for a, b in zip(self.entries(), other.entries())))

    def __sub__(self, other: "CoqMatrix2") -> "CoqMatrix2":
        return CoqMatrix2(*(a - b for a, b in zip(self.entries(), other.entries())))

    def __neg__(self) -> "CoqMatrix2":
        return CoqMatrix2(*(-a for a in self.entries()))

    def __mul__(self, scalar: float) -> "CoqMatrix2":
        return CoqMatrix2(*(a * scalar for a in self.entries()))

    __rmul__ = __mul__

    def __matmul__(self, other: "CoqMatrix2") -> "CoqMatrix2":
        if not isinstance(other, CoqMatrix2):
            return NotImplemented
        a, b = self, other
        return CoqMatrix2(
            a.a11 * b.a11 + a.a12 * b.a21,
            a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21,
            a.a21 * b.a12 + a.a22 * b.a22,
        )

    def left_scale(self, q: Coquaternion) -> "CoqMatrix2":
        """Entry-wise left multiplication ``q * M``."""
        return CoqMatrix2(*(q * a for a in self.entries()))

    def apply(self, v1: Coquaternion, v2: Coquaternion) -> tuple[Coquaternion, Coquaternion]:
        """Matrix times column vector, entries multiplied in the order ``M_ab * v_b``."""
        return (self.a11 * v1 + self.a12 * v2, self.a21 * v1 + self.a22 * v2)

    def isclose(self, other: "CoqMatrix2", atol: float = 1e-12) -> bool:
        return all(a.isclose(b, atol) for a, b in zip(self.entries(), other.entries()))

    def is_hermitian(self, atol: float = 0.0) -> bool:
        return self.isclose(self.dagger(), atol)


_PAULI = {
    1: CoqMatrix2(ZERO, ONE, ONE, ZERO),
    2: CoqMatrix2(ZERO, -I, I, ZERO),
    3: CoqMatrix2(ONE, ZERO, ZERO, -ONE),
    4: CoqMatrix2(ZERO, -J, J, ZERO),
    5: CoqMatrix2(ZERO, -K, K, ZERO),
}


def pauli(l: int) -> CoqMatrix2:
    """The coquaternionic Pauli matrix ``sigma_l`` for ``l`` in 1..5."""
    try:
        return _PAULI[l]
    except KeyError:
        raise IndexError(f"Pauli index must be in 1..5, got {l!r}") from None


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues ``E+- = center +- sqrt(gap2)``.

    For a conjugate pair ``spread`` holds ``|Im E+|``; for a real pair it is
    ``(E+ - E-) / 2``.
    """

    kind: SpectrumKind
    center: float
    spread: float
    gap2: float

    @property
    def e_plus(self) -> complex:
        if self.kind is SpectrumKind.COMPLEX_PAIR:
            return complex(self.center, self.spread)
        return complex(self.center + self.spread, 0.0)

    @property
    def e_minus(self) -> complex:
        if self.kind is SpectrumKind.COMPLEX_PAIR:
            return complex(self.center, -self.spread)
        return complex(self.center - self.spread, 0.0)

    def __str__(self) -> str:
        if self.kind is SpectrumKind.COMPLEX_PAIR:
            return f"E = {self.center!r} +/- {self.spread!r}i"
        return f"E+ = {self.center + self.spread!r}, E- = {self.center - self.spread!r}"


def hamiltonian_matrix(u: Sequence[float]) -> CoqMatrix2:
    u0, u1, u2, u3, u4, u5 = u
    w = Coquaternion(0.0, u2, u4, u5)
    return CoqMatrix2(
        Coquaternion(u0 + u3, 0.0, 0.0, 0.0),
        Coquaternion(u1, 0.0, 0.0, 0.0) - w,
        Coquaternion(u1, 0.0, 0.0, 0.0) + w,
        Coquaternion(u0 - u3, 0.0, 0.0, 0.0),
    )


def spectrum_of(u: Sequence[float]) -> Spectrum:
    u = as_params(u)
    g = spectral_gap2(u)
    kind = classify(u).spectrum_kind
    spread = 0.0 if kind is SpectrumKind.DEGENERATE else math.sqrt(abs(g))
    return Spectrum(kind, u[0], spread, g)


@dataclass(frozen=True)
class Hamiltonian:
    u: tuple[float, float, float, float, float, float]
    matrix: CoqMatrix2
    nu: float
    regime: Regime
    generator_unit: Optional[Coquaternion]
    spectrum: Spectrum

    @property
    def sign(self) -> int:
        """+1 when time-like, -1 when space-like; 0 on the null boundary."""
        return {RegimeKind.TIME_LIKE: 1, RegimeKind.SPACE_LIKE: -1}.get(self.regime.kind, 0)

    @property
    def is_null(self) -> bool:
        return self.regime.kind is RegimeKind.NULL


def build_hamiltonian(u: Sequence[float], allow_null: bool = False) -> Hamiltonian:
    """Assemble ``u0 * 1 + sum_l u_l sigma_l`` with its derived data.

    On the null boundary ``u2^2 = u4^2 + u5^2`` the generator unit is undefined;
    that raises :class:`NullGenerator` unless ``allow_null`` is set, in which case
    ``nu`` is 0 and ``generator_unit`` is ``None``.
    """
    u = as_params(u)
    regime = classify(u)
    if regime.kind is RegimeKind.NULL:
        if not allow_null:
            raise NullGenerator(
                f"null regime: u2^2 - u4^2 - u5^2 = {imag_discriminant(u)!r} vanishes; "
                "the generator unit (i u2 + j u4 + k u5)/nu is undefined")
        nu, unit = 0.0, None
    else:
        nu = math.sqrt(abs(imag_discriminant(u)))
        unit = Coquaternion(0.0, u[2], u[4], u[5]) / nu
    return Hamiltonian(u, hamiltonian_matrix(u), nu, regime, unit, spectrum_of(u))


def eigenvalues(h: Hamiltonian) -> Spectrum:
    return h.spectrum


def generator(h: Hamiltonian) -> CoqMatrix2:
    """Skew-Hermitian generator ``A = i_H * H`` so that ``d psi/dt = -A psi``."""
    if h.generator_unit is None:
        raise NullGenerator("no generator in the null regime")
    return h.matrix.left_scale(h.generator_unit)
