"""Unitary evolution of a coquaternionic two-level system and its Bloch variables.

State-level dynamics integrate ``d psi/dt = -i_H H psi`` written in components.
Bloch-level dynamics integrate the five-component generalised Bloch equations,
the three reduced spin variables ``(sx, sy, sz)`` or the three auxiliary
variables.  Each trajectory carries every conserved quadratic that applies to
its regime so drift can be monitored.

Nothing is renormalised during evolution; the drift of the conserved
quantities is the accuracy signal.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .classify import RegimeKind, as_params, classify, nu_of, orbit_diagnostics
from .coquaternion import Coquaternion, conj
from .errors import (
    InvalidBlochPoint,
    NonRealExpectation,
    NullGenerator,
    NullState,
    RegimeMismatch,
    StepTooLarge,
)
from .integrate import rk4_linear, time_grid
from .matrix2 import Hamiltonian, build_hamiltonian, pauli

NULL_RTOL = 1e-12
RESIDUE_RTOL = 1e-12
BLOCH_POINT_TOL = 1e-9
MAX_STEP_RATE = 0.1
INVARIANTS = ("norm", "state", "reduced", "cylinder", "aux")


@dataclass(frozen=True)
class StateVector:
    psi1: Coquaternion
    psi2: Coquaternion

    @classmethod
    def from_array(cls, a: Sequence[float]) -> "StateVector":
        a = [float(x) for x in a]
        if len(a) != 8:
            raise ValueError(f"a state vector has 8 real components, got {len(a)}")
        return cls(Coquaternion(*a[:4]), Coquaternion(*a[4:]))

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.psi1.as_array(), self.psi2.as_array()])

    def __iter__(self):
        return iter((self.psi1, self.psi2))

    def __add__(self, other: "StateVector") -> "StateVector":
        return StateVector(self.psi1 + other.psi1, self.psi2 + other.psi2)

    def __mul__(self, scalar: float) -> "StateVector":
        return StateVector(self.psi1 * scalar, self.psi2 * scalar)

    __rmul__ = __mul__

    def inner(self, other: "StateVector") -> Coquaternion:
        """``<self|other> = conj(psi1) phi1 + conj(psi2) phi2``."""
        return conj(self.psi1) * other.psi1 + conj(self.psi2) * other.psi2

    def norm(self) -> float:
        """Indefinite norm ``<psi|psi>``; real by construction."""
        return self.psi1.mod2() + self.psi2.mod2()

    def euclid2(self) -> float:
        return self.psi1.euclid2() + self.psi2.euclid2()


@dataclass(frozen=True)
class BlochState:
    sigma: np.ndarray
    reduced: Optional[np.ndarray] = None
    aux: Optional[np.ndarray] = None

    @classmethod
    def from_sigma(cls, sigma: Sequence[float], u: Optional[Sequence[float]] = None) -> "BlochState":
        sigma = np.asarray(sigma, dtype=float)
        if u is None:
            return cls(sigma)
        u = as_params(u)
        return cls(sigma, reduced_variables(u, sigma), auxiliary_variables(u, sigma))


# -- state-level equations -------------------------------------------------------

def schrodinger_rhs(h: Hamiltonian, psi: StateVector) -> StateVector:
    """Time derivative of the state in component form.

    ``psi1' = -(u0+u3) i psi1 - u1 i psi2 - s nu psi2``
    ``psi2' = -(u0-u3) i psi2 - u1 i psi1 + s nu psi1``

    with ``i`` the generator unit and ``s = +1`` (time-like) or ``-1`` (space-like).
    """
    if h.generator_unit is None:
        raise NullGenerator("state evolution is undefined in the null regime")
    u0, u1, _, u3, _, _ = h.u
    unit = h.generator_unit
    snu = h.sign * h.nu
    p1, p2 = psi.psi1, psi.psi2
    i1, i2 = unit * p1, unit * p2
    d1 = i1 * (-(u0 + u3)) - i2 * u1 - p2 * snu
    d2 = i2 * (-(u0 - u3)) - i1 * u1 + p1 * snu
    return StateVector(d1, d2)


def schrodinger_matrix(h: Hamiltonian) -> np.ndarray:
    """The 8x8 real matrix of the (linear) map ``psi -> schrodinger_rhs(h, psi)``."""
    eye = np.eye(8)
    cols = [schrodinger_rhs(h, StateVector.from_array(e)).as_array() for e in eye]
    return np.column_stack(cols)


def expectation(psi: StateVector, m) -> Coquaternion:
    """Unnormalised ``<psi| m |psi>`` for a 2x2 coquaternionic matrix ``m``."""
    v1, v2 = m.apply(psi.psi1, psi.psi2)
    return conj(psi.psi1) * v1 + conj(psi.psi2) * v2


def bloch_from_state(psi: StateVector, u: Optional[Sequence[float]] = None) -> BlochState:
    """Five-component Bloch vector ``sigma_l = <psi|sigma_l|psi> / <psi|psi>``.

    With ``u`` given, the reduced and auxiliary triples are filled in too.
    """
    scale = 1.0 + psi.euclid2()
    n = psi.norm()
    if abs(n) <= NULL_RTOL * scale:
        raise NullState(f"<psi|psi> = {n!r}; the Bloch vector of a null state is undefined")
    sigma = np.empty(5)
    for l in range(1, 6):
        e = expectation(psi, pauli(l))
        residue = max(abs(e.q1), abs(e.q2), abs(e.q3))
        if residue > RESIDUE_RTOL * scale:
            raise NonRealExpectation(f"<psi|sigma_{l}|psi> has imaginary residue {residue!r}")
        sigma[l - 1] = e.q0 / n
    return BlochState.from_sigma(sigma, u)


@lru_cache(maxsize=1)
def _quadratic_forms() -> tuple[np.ndarray, np.ndarray]:
    """Symmetric 8x8 forms with ``<psi|sigma_l|psi> = x^T Q_l x`` and ``<psi|psi> = x^T N x``.

    Built from the coquaternion product by polarisation, so the vectorised
    observables below share no code path with an explicit formula.
    """
    basis = [StateVector.from_array(e) for e in np.eye(8)]
    forms = np.empty((5, 8, 8))
    for l in range(1, 6):
        m = pauli(l)
        for a, ea in enumerate(basis):
            for b, eb in enumerate(basis):
                v1, v2 = m.apply(eb.psi1, eb.psi2)
                forms[l - 1, a, b] = (conj(ea.psi1) * v1 + conj(ea.psi2) * v2).q0
    forms = 0.5 * (forms + forms.transpose(0, 2, 1))
    norm = np.diag([1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0])
    return forms, norm


def state_norms(psi: np.ndarray) -> np.ndarray:
    """``<psi|psi>`` for an array of 8-component states (shape ``(..., 8)``)."""
    _, norm = _quadratic_forms()
    return np.einsum("...a,ab,...b->...", psi, norm, psi)


def bloch_series(psi: np.ndarray, norm: Optional[float] = None) -> np.ndarray:
    """Bloch vectors for an array of 8-component states; shape ``(..., 5)``.

    Each state is divided by its own ``<psi|psi>`` unless ``norm`` is given.
    """
    forms, _ = _quadratic_forms()
    num = np.einsum("...a,lab,...b->...l", psi, forms, psi)
    if norm is None:
        return num / state_norms(psi)[..., None]
    return num / norm


# -- Bloch-level equations ---------------------------------------------------------

def reduced_variables(u: Sequence[float], sigma: np.ndarray) -> np.ndarray:
    """``(sx, sy, sz) = (s1, (u2 s2 + u4 s4 + u5 s5)/nu, s3)``; NaN for ``sy`` when null."""
    sigma = np.asarray(sigma, dtype=float)
    nu = nu_of(u)
    w = u[2] * sigma[..., 1] + u[4] * sigma[..., 3] + u[5] * sigma[..., 4]
    if classify(u).kind is RegimeKind.NULL:
        sy = np.full_like(w, np.nan)
    else:
        sy = w / nu
    return np.stack([sigma[..., 0], sy, sigma[..., 2]], axis=-1)


def auxiliary_variables(u: Sequence[float], sigma: np.ndarray) -> np.ndarray:
    """``(u4 s5 - u5 s4, u5 s2 + u2 s5, u2 s4 + u4 s2)``."""
    sigma = np.asarray(sigma, dtype=float)
    s2, s4, s5 = sigma[..., 1], sigma[..., 3], sigma[..., 4]
    u2, u4, u5 = u[2], u[4], u[5]
    return np.stack([u4 * s5 - u5 * s4, u5 * s2 + u2 * s5, u2 * s4 + u4 * s2], axis=-1)


def _require(u: Sequence[float], *kinds: RegimeKind) -> RegimeKind:
    kind = classify(u).kind
    if kind not in kinds:
        names = " or ".join(k.value for k in kinds)
        raise RegimeMismatch(f"parameters are in the {kind.value} regime; these equations need {names}")
    return kind


def bloch_matrix(u: Sequence[float]) -> np.ndarray:
    """Matrix ``M`` of the generalised Bloch equations ``d sigma/dt = M sigma``.

    In the space-like regime the ``nu`` terms of the first and third rows flip sign.
    """
    u = as_params(u)
    kind = _require(u, RegimeKind.TIME_LIKE, RegimeKind.SPACE_LIKE)
    s = 1.0 if kind is RegimeKind.TIME_LIKE else -1.0
    u0, u1, u2, u3, u4, u5 = u
    nu = nu_of(u)
    half = np.array([
        [0.0, -u3 * u2 / nu, s * nu, -u3 * u4 / nu, -u3 * u5 / nu],
        [u2 * u3 / nu, 0.0, -u1 * u2 / nu, u0 * u5 / nu, -u0 * u4 / nu],
        [-s * nu, u1 * u2 / nu, 0.0, u1 * u4 / nu, u1 * u5 / nu],
        [-u3 * u4 / nu, u0 * u5 / nu, u1 * u4 / nu, 0.0, u0 * u2 / nu],
        [-u3 * u5 / nu, -u0 * u4 / nu, u1 * u5 / nu, -u0 * u2 / nu, 0.0],
    ])
    return 2.0 * half


def bloch_rhs_timelike(u: Sequence[float], sigma) -> np.ndarray:
    _require(as_params(u), RegimeKind.TIME_LIKE)
    return bloch_matrix(u) @ np.asarray(sigma, dtype=float)


def bloch_rhs_spacelike(u: Sequence[float], sigma) -> np.ndarray:
    _require(as_params(u), RegimeKind.SPACE_LIKE)
    return bloch_matrix(u) @ np.asarray(sigma, dtype=float)


def reduced_matrix(u: Sequence[float], kind: Optional[RegimeKind] = None) -> np.ndarray:
    """Matrix of the reduced spin equations for the regime of ``u``.

    Time-like: ``d s/dt = 2 B x s`` with ``B = (u1, nu, u3)``.  Space-like and
    null share one form, ``nu`` being zero on the null boundary.
    """
    u = as_params(u)
    actual = classify(u).kind
    if kind is not None and kind is not actual:
        raise RegimeMismatch(f"parameters are {actual.value}, not {kind.value}")
    _, u1, _, u3, _, _ = u
    nu = nu_of(u) if actual is not RegimeKind.NULL else 0.0
    if actual is RegimeKind.TIME_LIKE:
        half = [[0.0, -u3, nu], [u3, 0.0, -u1], [-nu, u1, 0.0]]
    else:
        half = [[0.0, -u3, -nu], [-u3, 0.0, u1], [nu, u1, 0.0]]
    return 2.0 * np.array(half)


def reduced_rhs(u: Sequence[float], regime=None, reduced=None) -> np.ndarray:
    """Reduced spin equations in the time-like or space-like regime.

    ``regime`` may be a :class:`~coqdyn.classify.Regime`, a
    :class:`~coqdyn.classify.RegimeKind` or ``None`` (inferred from ``u``).
    """
    kind = getattr(regime, "kind", regime)
    u = as_params(u)
    _require(u, RegimeKind.TIME_LIKE, RegimeKind.SPACE_LIKE)
    return reduced_matrix(u, kind) @ np.asarray(reduced, dtype=float)


def bloch_rhs_null(u: Sequence[float], reduced) -> np.ndarray:
    """Reduced equations on the null boundary ``u2^2 = u4^2 + u5^2``."""
    u = as_params(u)
    _require(u, RegimeKind.NULL)
    return reduced_matrix(u) @ np.asarray(reduced, dtype=float)


def auxiliary_matrix(u: Sequence[float]) -> np.ndarray:
    u = as_params(u)
    _require(u, RegimeKind.TIME_LIKE, RegimeKind.SPACE_LIKE)
    u0, _, u2, _, u4, u5 = u
    c = -2.0 * u0 / nu_of(u)
    return c * np.array([[0.0, u5, u4], [u5, 0.0, u2], [u4, -u2, 0.0]])


def auxiliary_rhs(u: Sequence[float], aux) -> np.ndarray:
    return auxiliary_matrix(u) @ np.asarray(aux, dtype=float)


# -- conserved quantities ---------------------------------------------------------

def state_space_invariant(sigma) -> np.ndarray:
    """``s1^2 + s2^2 + s3^2 - s4^2 - s5^2``; equals 1 on the hyperbolic state space."""
    s = np.asarray(sigma, dtype=float)
    return s[..., 0] ** 2 + s[..., 1] ** 2 + s[..., 2] ** 2 - s[..., 3] ** 2 - s[..., 4] ** 2


def reduced_invariant(reduced, kind: RegimeKind) -> np.ndarray:
    """Sphere radius squared (time-like) or ``sx^2 - sy^2 + sz^2`` (space-like, null)."""
    r = np.asarray(reduced, dtype=float)
    sy2 = r[..., 1] ** 2
    if kind is RegimeKind.TIME_LIKE:
        return r[..., 0] ** 2 + sy2 + r[..., 2] ** 2
    return r[..., 0] ** 2 - sy2 + r[..., 2] ** 2


def cylinder_invariant(aux, kind: RegimeKind) -> np.ndarray:
    """Hidden-sector quadric in auxiliary variables.

    Time-like: ``-(u2 s4 + u4 s2)^2 + (u4 s5 - u5 s4)^2 - (u5 s2 + u2 s5)^2``;
    space-like: the same with every sign reversed.  Undefined (NaN) when null.
    """
    y = np.asarray(aux, dtype=float)
    val = -y[..., 2] ** 2 + y[..., 0] ** 2 - y[..., 1] ** 2
    if kind is RegimeKind.TIME_LIKE:
        return val
    if kind is RegimeKind.SPACE_LIKE:
        return -val
    return np.full_like(val, np.nan)


def auxiliary_invariant(aux) -> np.ndarray:
    y = np.asarray(aux, dtype=float)
    return -y[..., 0] ** 2 + y[..., 1] ** 2 + y[..., 2] ** 2


def invariant_report(u: Sequence[float], bloch: BlochState) -> dict[str, float]:
    """Every conserved quadratic that applies in the regime of ``u`` (NaN otherwise)."""
    u = as_params(u)
    kind = classify(u).kind
    reduced = bloch.reduced if bloch.reduced is not None else reduced_variables(u, bloch.sigma)
    aux = bloch.aux if bloch.aux is not None else auxiliary_variables(u, bloch.sigma)
    return {
        "state": float(state_space_invariant(bloch.sigma)),
        "reduced": float(reduced_invariant(reduced, kind)),
        "cylinder": float(cylinder_invariant(aux, kind)),
        "aux": float(auxiliary_invariant(aux)),
    }


# -- trajectories -----------------------------------------------------------------

@dataclass
class Trajectory:
    """Sampled solution; absent levels (e.g. ``psi`` for Bloch-only runs) are ``None``.

    ``invariants`` maps each conserved quantity to its per-sample value and
    ``scales`` to its sensitivity to a relative perturbation of the integrated
    variables.  Relative drift divides by ``max(1, scale)``, so it equals the
    absolute drift while the solution stays of order one and measures the
    integrator's relative error once the solution grows.
    """

    u: tuple[float, ...]
    times: np.ndarray
    psi: Optional[np.ndarray]
    sigma: Optional[np.ndarray]
    reduced: np.ndarray
    aux: Optional[np.ndarray]
    invariants: dict[str, np.ndarray] = field(default_factory=dict)
    scales: dict[str, np.ndarray] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.times)

    def state(self, k: int) -> StateVector:
        if self.psi is None:
            raise ValueError("trajectory has no state-level data")
        return StateVector.from_array(self.psi[k])

    def bloch(self, k: int) -> BlochState:
        if self.sigma is None:
            raise ValueError("trajectory has no Bloch-level data")
        aux = None if self.aux is None else self.aux[k]
        return BlochState(self.sigma[k], self.reduced[k], aux)

    @property
    def invariant_drift(self) -> dict[str, np.ndarray]:
        return {name: v - v[0] for name, v in self.invariants.items()}

    def relative_drift(self) -> dict[str, np.ndarray]:
        """Drift divided by ``max(1, scale)``; the absolute drift for O(1) states."""
        return {name: np.abs(v - v[0]) / np.maximum(1.0, self.scales[name])
                for name, v in self.invariants.items()}

    def max_drift(self) -> dict[str, float]:
        """Largest relative drift of each invariant; NaN where it does not apply."""
        return {name: _nanmax(d) for name, d in self.relative_drift().items()}

    def max_abs_drift(self) -> dict[str, float]:
        return {name: _nanmax(np.abs(d)) for name, d in self.invariant_drift.items()}

    @property
    def reduced_norm(self) -> np.ndarray:
        return np.linalg.norm(self.reduced, axis=-1)


def _nanmax(a: np.ndarray) -> float:
    if np.all(np.isnan(a)):
        return math.nan
    if not np.all(np.isfinite(a)):
        return math.inf
    return float(np.max(a))


def _bloch_sectors(u, kind, sigma, mag):
    """Reduced/auxiliary triples, invariants and their rounding scales.

    ``mag`` is the per-sample size of the integrated variable in units of
    ``sigma``: an error of relative size ``e`` in it moves each ``sigma_l`` by
    about ``e * mag``.  Each scale is then ``sum_i |dI/dx_i| * mag`` over the
    variables ``x`` the invariant is built from.
    """
    reduced = reduced_variables(u, sigma)
    aux = auxiliary_variables(u, sigma)
    invariants = {
        "state": state_space_invariant(sigma),
        "reduced": reduced_invariant(reduced, kind),
        "cylinder": cylinder_invariant(aux, kind),
        "aux": auxiliary_invariant(aux),
    }
    _, _, u2, _, u4, u5 = (abs(x) for x in u)
    nu = nu_of(u)
    w_red = np.array([1.0, (u2 + u4 + u5) / nu if nu > 0 else np.nan, 1.0])
    w_aux = np.array([u4 + u5, u5 + u2, u2 + u4])
    aux_scale = 2 * np.abs(aux) @ w_aux * mag
    scales = {
        "state": 2 * np.sum(np.abs(sigma), axis=-1) * mag,
        "reduced": 2 * np.abs(reduced) @ w_red * mag,
        "cylinder": aux_scale,
        "aux": aux_scale,
    }
    return reduced, aux, invariants, scales


def _check_step(u, dt):
    rate = orbit_diagnostics(u).rate
    if rate is not None and dt * rate > MAX_STEP_RATE:
        warnings.warn(StepTooLarge(
            f"dt * rate = {dt * rate:.3g} exceeds {MAX_STEP_RATE}; the orbit is under-resolved"),
            stacklevel=3)


def evolve_state(h: Hamiltonian, psi0: StateVector, t_max: float, dt: float = 1e-3) -> Trajectory:
    """Integrate the state equation with fixed-step RK4 and derive all Bloch data."""
    if h.generator_unit is None:
        raise NullGenerator("state evolution is undefined in the null regime")
    if isinstance(psi0, StateVector):
        x0 = psi0.as_array()
    else:
        x0 = np.asarray(psi0, dtype=float)
    n0 = float(state_norms(x0))
    if abs(n0) <= NULL_RTOL * (1.0 + float(x0 @ x0)):
        raise NullState(f"<psi0|psi0> = {n0!r}; Bloch observables are undefined")
    _check_step(h.u, dt)
    times, steps = time_grid(t_max, dt)
    psi = rk4_linear(schrodinger_matrix(h), x0, steps)
    # the exact flow keeps <psi|psi> = n0; recomputing it from a large psi is ill-conditioned
    sigma = bloch_series(psi, norm=n0)
    euclid = np.sum(psi ** 2, axis=-1)
    reduced, aux, invariants, scales = _bloch_sectors(h.u, h.regime.kind, sigma, euclid / abs(n0))
    invariants["norm"] = state_norms(psi)
    scales["norm"] = euclid
    invariants = {k: invariants[k] for k in INVARIANTS}
    return Trajectory(h.u, times, psi, sigma, reduced, aux, invariants, scales)


def check_bloch_point(sigma0) -> np.ndarray:
    sigma0 = np.asarray(sigma0, dtype=float)
    if sigma0.shape != (5,):
        raise InvalidBlochPoint(f"a Bloch vector has five components, got shape {sigma0.shape}")
    q = float(state_space_invariant(sigma0))
    if not abs(q - 1.0) <= BLOCH_POINT_TOL:
        raise InvalidBlochPoint(
            f"s1^2+s2^2+s3^2-s4^2-s5^2 = {q!r}; initial Bloch points must lie on the value 1")
    return sigma0


def evolve_bloch(u: Sequence[float], sigma0, t_max: float, dt: float = 1e-3) -> Trajectory:
    """Integrate the five-component Bloch equations directly."""
    u = as_params(u)
    kind = classify(u).kind
    if kind is RegimeKind.NULL:
        raise NullGenerator("the five-component Bloch equations need a non-null regime")
    sigma0 = check_bloch_point(sigma0)
    _check_step(u, dt)
    times, steps = time_grid(t_max, dt)
    sigma = rk4_linear(bloch_matrix(u), sigma0, steps)
    mag = np.linalg.norm(sigma, axis=-1)
    reduced, aux, invariants, scales = _bloch_sectors(u, kind, sigma, mag)
    invariants["norm"] = np.full(len(times), np.nan)
    scales["norm"] = np.ones(len(times))
    invariants = {k: invariants[k] for k in INVARIANTS}
    return Trajectory(u, times, None, sigma, reduced, aux, invariants, scales)


def evolve_reduced(u: Sequence[float], reduced0, t_max: float, dt: float = 1e-3) -> Trajectory:
    """Integrate the three reduced spin variables; the only level defined when null."""
    u = as_params(u)
    kind = classify(u).kind
    _check_step(u, dt)
    times, steps = time_grid(t_max, dt)
    reduced = rk4_linear(reduced_matrix(u), np.asarray(reduced0, dtype=float), steps)
    inv = reduced_invariant(reduced, kind)
    scale = 2 * np.sum(np.abs(reduced), axis=-1) * np.linalg.norm(reduced, axis=-1)
    return Trajectory(u, times, None, None, reduced, None, {"reduced": inv}, {"reduced": scale})


def evolve_auxiliary(u: Sequence[float], aux0, t_max: float, dt: float = 1e-3) -> np.ndarray:
    times, steps = time_grid(t_max, dt)
    return rk4_linear(auxiliary_matrix(u), np.asarray(aux0, dtype=float), steps)


def measure_period(times: np.ndarray, points: np.ndarray, delta: float = 1e-4) -> Optional[float]:
    """First return time of ``points`` to ``points[0]``, or ``None`` if it never returns.

    The trajectory must first leave a ``10 * delta`` ball; each later local minimum
    of the squared distance is refined by a parabola through three samples and
    accepted if the refined distance is below ``delta`` and the velocity there
    points the same way as at the start.
    """
    points = np.asarray(points, dtype=float)
    d2 = np.sum((points - points[0]) ** 2, axis=-1)
    away = np.nonzero(d2 > (10 * delta) ** 2)[0]
    if len(away) == 0:
        return None
    vel = np.gradient(points, times, axis=0)
    for k in range(max(away[0], 1), len(d2) - 1):
        ym, y0, yp = d2[k - 1], d2[k], d2[k + 1]
        if not (y0 <= ym and y0 <= yp):
            continue
        curv = ym - 2 * y0 + yp
        if curv <= 0:
            continue
        h = times[k + 1] - times[k]
        offset = 0.5 * h * (ym - yp) / curv
        dmin2 = y0 - (ym - yp) ** 2 / (8 * curv)
        if dmin2 <= delta ** 2 and float(vel[k] @ vel[0]) > 0:
            return float(times[k] + offset)
    return None
