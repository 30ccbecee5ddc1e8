"""Exception and warning types raised across the package."""


class CoqdynError(Exception):
    """Base class for all package errors."""


class NullCoquaternion(CoqdynError, ZeroDivisionError):
    """Raised when inverting a coquaternion with vanishing squared modulus."""


class ZeroCoquaternion(CoqdynError, ValueError):
    """Raised when a polar form is requested for the zero coquaternion."""


class DegeneratePolar(CoqdynError, ValueError):
    """Raised for non-zero elements that admit none of the four polar forms."""


class NullGenerator(CoqdynError, ValueError):
    """The Hamiltonian's imaginary part is null, so the generator unit is undefined."""


class NullState(CoqdynError, ValueError):
    """The state has vanishing norm; its Bloch vector is undefined."""


class RegimeMismatch(CoqdynError, ValueError):
    """An equation of motion was called outside the parameter regime it holds in."""


class InvalidBlochPoint(CoqdynError, ValueError):
    """An initial Bloch vector does not lie on the hyperbolic state space."""


class NonRealExpectation(CoqdynError, ArithmeticError):
    """An expectation value of a Hermitian matrix came out with an imaginary residue."""


class StepTooLarge(UserWarning):
    """Issued when dt times the orbit rate exceeds the resolution limit."""
