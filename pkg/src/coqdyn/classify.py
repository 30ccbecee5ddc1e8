"""Parameter regimes of the coquaternionic two-level Hamiltonian and orbit diagnostics.

The Hamiltonian ``u0 + sum_l u_l sigma_l`` falls into one of three dynamical
cases, decided by two signed quadratics of the parameters:

* ``u2^2 - u4^2 - u5^2`` fixes whether the imaginary unit of the generator is
  time-like (``i^2 = -1``), null, or space-like (``i^2 = +1``);
* ``gap2 = u1^2 + u2^2 + u3^2 - u4^2 - u5^2`` fixes whether ``E+-`` are real.

Case A is time-like (spectrum automatically real), case B is space-like with a
real spectrum (open orbits), case C is space-like with complex-conjugate
eigenvalues (closed hyperbolic Rabi orbits).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

PARAM_RTOL = 1e-12


class RegimeKind(enum.Enum):
    TIME_LIKE = "TimeLike"
    NULL = "Null"
    SPACE_LIKE = "SpaceLike"


class SpectrumKind(enum.Enum):
    REAL_PAIR = "RealPair"
    COMPLEX_PAIR = "ComplexConjugatePair"
    DEGENERATE = "Degenerate"


class Case(enum.Enum):
    A = "A"
    B = "B"
    C = "C"


class OrbitKind(enum.Enum):
    CLOSED_PERIODIC = "ClosedPeriodic"
    OPEN_HYPERBOLIC = "OpenHyperbolic"
    PARABOLIC_SHEAR = "ParabolicShear"


def as_params(u: Sequence[float]) -> tuple[float, ...]:
    u = tuple(float(x) for x in u)
    if len(u) != 6:
        raise ValueError(f"expected six Hamiltonian parameters u0..u5, got {len(u)}")
    if not all(math.isfinite(x) for x in u):
        raise ValueError(f"Hamiltonian parameters must be finite, got {u}")
    return u


def param_tolerance(u: Sequence[float]) -> float:
    return PARAM_RTOL * (1.0 + sum(x * x for x in u))


def imag_discriminant(u: Sequence[float]) -> float:
    """``u2^2 - u4^2 - u5^2``; its sign selects the regime and ``nu = sqrt(|.|)``."""
    return u[2] * u[2] - u[4] * u[4] - u[5] * u[5]


def spectral_gap2(u: Sequence[float]) -> float:
    """Eigenvalue discriminant ``u1^2 + u2^2 + u3^2 - u4^2 - u5^2``."""
    return u[1] * u[1] + u[2] * u[2] + u[3] * u[3] - u[4] * u[4] - u[5] * u[5]


def nu_of(u: Sequence[float]) -> float:
    return math.sqrt(abs(imag_discriminant(u)))


@dataclass(frozen=True)
class Regime:
    kind: RegimeKind
    spectrum_kind: SpectrumKind
    case_label: Optional[Case]

    def __str__(self) -> str:
        label = f", case {self.case_label.value}" if self.case_label else ""
        return f"{self.kind.value}{label} ({self.spectrum_kind.value})"


def regime_kind(u: Sequence[float]) -> RegimeKind:
    d = imag_discriminant(u)
    if abs(d) <= param_tolerance(u):
        return RegimeKind.NULL
    return RegimeKind.TIME_LIKE if d > 0 else RegimeKind.SPACE_LIKE


def spectrum_kind(u: Sequence[float]) -> SpectrumKind:
    g = spectral_gap2(u)
    if abs(g) <= param_tolerance(u):
        return SpectrumKind.DEGENERATE
    return SpectrumKind.REAL_PAIR if g > 0 else SpectrumKind.COMPLEX_PAIR


def classify(u: Sequence[float]) -> Regime:
    u = as_params(u)
    kind = regime_kind(u)
    spec = spectrum_kind(u)
    label = None
    if kind is RegimeKind.TIME_LIKE:
        label = Case.A
    elif kind is RegimeKind.SPACE_LIKE:
        if spec is SpectrumKind.REAL_PAIR:
            label = Case.B
        elif spec is SpectrumKind.COMPLEX_PAIR:
            label = Case.C
    return Regime(kind, spec, label)


@dataclass(frozen=True)
class OrbitDiagnostics:
    """Shape and speed of the reduced-spin orbits.

    ``rate`` is an angular frequency for closed orbits and an exponential growth
    rate for open ones; it is ``None`` at the null boundary and at exceptional
    points.  ``axis_angle`` is the angle between the rotation axis and the
    hyperboloid axis ``(0, 1, 0)``.
    """

    kind: OrbitKind
    rate: Optional[float]
    axis: tuple[float, float, float]
    axis_angle: float

    @property
    def period(self) -> Optional[float]:
        if self.kind is OrbitKind.CLOSED_PERIODIC and self.rate:
            return 2 * math.pi / self.rate
        return None


def orbit_diagnostics(h) -> OrbitDiagnostics:
    """Diagnostics for a Hamiltonian (or a raw parameter 6-tuple)."""
    u = as_params(getattr(h, "u", h))
    regime = classify(u)
    nu = nu_of(u)
    u1, u3 = u[1], u[3]
    if regime.kind is RegimeKind.SPACE_LIKE:
        axis = (u1, -nu, u3)
    else:
        axis = (u1, nu, u3)
    length = math.sqrt(u1 * u1 + nu * nu + u3 * u3)
    angle = math.acos(min(1.0, nu / length)) if length > 0 else 0.0

    if regime.kind is RegimeKind.NULL or regime.spectrum_kind is SpectrumKind.DEGENERATE:
        return OrbitDiagnostics(OrbitKind.PARABOLIC_SHEAR, None, axis, angle)
    # u1^2 + nu^2 + u3^2 (case A), u1^2 + u3^2 - nu^2 (B) and nu^2 - u1^2 - u3^2 (C)
    # all equal |gap2|; using gap2 avoids re-squaring nu near cancellation
    rate = 2 * math.sqrt(abs(spectral_gap2(u)))
    kind = OrbitKind.OPEN_HYPERBOLIC if regime.case_label is Case.B else OrbitKind.CLOSED_PERIODIC
    return OrbitDiagnostics(kind, rate, axis, angle)
