"""Coquaternionic quantum dynamics of a two-level system."""

from .classify import Case, Regime, RegimeKind, SpectrumKind, classify, orbit_diagnostics
from .coquaternion import (
    Branch,
    Coquaternion,
    I,
    J,
    K,
    ONE,
    PolarForm,
    conj,
    imag_norm2,
    inverse,
    mod2,
    mul,
    polar_decompose,
    reconstruct,
)
from .dynamics import (
    BlochState,
    StateVector,
    Trajectory,
    bloch_from_state,
    evolve_bloch,
    evolve_reduced,
    evolve_state,
    invariant_report,
)
from .errors import (
    DegeneratePolar,
    InvalidBlochPoint,
    NullCoquaternion,
    NullGenerator,
    NullState,
    RegimeMismatch,
    StepTooLarge,
    ZeroCoquaternion,
)
from .matrix2 import CoqMatrix2, Hamiltonian, build_hamiltonian, eigenvalues, generator, pauli
from .oracle import evolve_exact, real_rep, real_rep4

__version__ = "0.1.0"
