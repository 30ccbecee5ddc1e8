import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from coqdyn.coquaternion import (
    BASIS, I, J, K, ONE, ZERO, Branch, Coquaternion, PolarForm, conj, imag_norm2, inverse,
    is_null, mod2, mul, polar_decompose, reconstruct,
)
from coqdyn.errors import DegeneratePolar, NullCoquaternion, ZeroCoquaternion

from strategies import coquaternions

# Rows: left factor 1, i, j, k; columns: right factor.  Entries are (sign, basis index),
# written out from i^2=-1, j^2=k^2=+1, ij=-ji=k, jk=-kj=-i, ki=-ik=j.
TABLE = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (-1, 3), (1, 0), (-1, 1)],
    [(1, 3), (1, 2), (1, 1), (1, 0)],
]


@pytest.mark.parametrize("a", range(4))
@pytest.mark.parametrize("b", range(4))
def test_multiplication_table(a, b):
    sign, c = TABLE[a][b]
    product = mul(BASIS[a], BASIS[b])
    assert product == sign * BASIS[c]
    assert all(isinstance(x, int) for x in product)


def test_defining_relations():
    assert I * I == -ONE
    assert J * J == ONE
    assert K * K == ONE
    assert I * J * K == ONE
    assert I * J == K and J * I == -K
    assert J * K == -I and K * J == I
    assert K * I == J and I * K == -J


def test_examples():
    assert I * J == K
    assert J * J == ONE
    assert (1 + I) * (1 - I) == Coquaternion(2, 0, 0, 0)
    assert J * K == -I


def test_exact_associativity_on_rationals(rng):
    for _ in range(200):
        p, q, r = (Coquaternion(*(Fraction(int(x), int(y)) for x, y in
                                  zip(rng.integers(-9, 10, 4), rng.integers(1, 7, 4))))
                   for _ in range(3))
        assert (p * q) * r == p * (q * r)
        assert mod2(p * q) == mod2(p) * mod2(q)


def test_conj_examples():
    assert conj(Coquaternion(1, 1, 1, 1)) == Coquaternion(1, -1, -1, -1)
    assert conj(Coquaternion(5)) == Coquaternion(5)
    q = 2 + 3 * J
    assert conj(q) * q == Coquaternion(-5, 0, 0, 0)


def test_mod2_examples():
    assert mod2(ONE) == 1
    assert mod2(J) == -1
    assert mod2(3 + 4 * K) == -7


def test_imag_norm2_examples():
    assert imag_norm2(I) == 1
    assert imag_norm2(J + K) == -2
    assert imag_norm2(Coquaternion(5, 2, 1, 1)) == 2


def test_inverse_examples():
    assert inverse(Coquaternion(2.0)) == Coquaternion(0.5)
    assert inverse(I) == -I
    with pytest.raises(NullCoquaternion):
        inverse(1 + J)
    with pytest.raises(ZeroDivisionError):
        (1 + J).inverse()


def test_scalar_arithmetic():
    q = Coquaternion(1, 2, 3, 4)
    assert q + 1 == Coquaternion(2, 2, 3, 4)
    assert 1 - q == Coquaternion(0, -2, -3, -4)
    assert 2 * q == q * 2 == Coquaternion(2, 4, 6, 8)
    assert q / 2 == Coquaternion(0.5, 1.0, 1.5, 2.0)
    assert q.imag == Coquaternion(0, 2, 3, 4)
    assert Coquaternion.from_array(q.as_array()) == q


@given(coquaternions)
def test_conj_involution(q):
    assert conj(conj(q)) == q


@given(coquaternions, coquaternions)
def test_conj_reverses_products(p, q):
    lhs, rhs = conj(p * q), conj(q) * conj(p)
    assert lhs.isclose(rhs, atol=1e-10 * (1 + p.euclid2() * q.euclid2()))


@given(coquaternions)
def test_conj_q_times_q_is_mod2(q):
    for prod in (conj(q) * q, q * conj(q)):
        assert prod.isclose(Coquaternion(mod2(q)), atol=1e-12 * (1 + q.euclid2()))


@given(coquaternions, coquaternions, coquaternions)
def test_associativity(p, q, r):
    scale = math.sqrt(p.euclid2() * q.euclid2() * r.euclid2())
    assert ((p * q) * r).isclose(p * (q * r), atol=1e-12 * (1 + scale))


@given(coquaternions, coquaternions)
def test_mod2_multiplicative(p, q):
    scale = p.euclid2() * q.euclid2()
    assert abs(mod2(p * q) - mod2(p) * mod2(q)) <= 1e-10 * (1 + scale)


@given(coquaternions)
def test_inverse_property(q):
    assume(abs(mod2(q)) > 1e-9 * (1 + q.euclid2()))
    # the product error scales with the condition number |q|^2 / |mod2(q)|
    tol = 1e-12 * (1 + q.euclid2() / abs(mod2(q)))
    assert (q * inverse(q)).isclose(ONE, atol=tol)
    assert (inverse(q) * q).isclose(ONE, atol=tol)


# -- polar forms -------------------------------------------------------------------

def test_polar_circular_example():
    pf = polar_decompose(2 * I)
    assert pf.branch is Branch.CIRCULAR
    assert pf.modulus == 2 and pf.axis == I
    assert pf.angle == pytest.approx(math.pi / 2, abs=1e-15)


def test_polar_cosh_example():
    pf = polar_decompose(2 + J)
    assert pf.branch is Branch.HYPERBOLIC_COSH
    assert pf.modulus == pytest.approx(math.sqrt(3), abs=1e-15)
    assert pf.axis == J
    assert pf.angle == pytest.approx(math.atanh(0.5), abs=1e-15)
    assert reconstruct(pf).isclose(2 + J, atol=1e-14)


def test_polar_null_example():
    pf = polar_decompose(1 + I + J)
    assert pf.branch is Branch.NULL
    assert pf.modulus == 1 and pf.axis == I + J and pf.angle is None
    assert reconstruct(pf) == 1 + I + J


def test_polar_sinh_example():
    pf = polar_decompose(2 * J)
    assert pf.branch is Branch.HYPERBOLIC_SINH
    assert pf.modulus == 2 and pf.axis == J and pf.angle == 0
    assert reconstruct(pf).isclose(2 * J, atol=1e-15)


def test_polar_sinh_angle_is_reciprocal_argument():
    # q = |q| (sinh t + axis cosh t) fixes tanh t = q0 / sqrt(-imag_norm2)
    q = Coquaternion(1, 0, 3, 0)
    pf = polar_decompose(q)
    assert pf.branch is Branch.HYPERBOLIC_SINH
    assert math.tanh(pf.angle) == pytest.approx(1 / 3, rel=1e-14)
    assert reconstruct(pf).isclose(q, atol=1e-14)


def test_polar_negative_scalar_branches():
    pf = polar_decompose(-2 + J)
    assert pf.sign == -1 and pf.angle < 0
    assert reconstruct(pf).isclose(-2 + J, atol=1e-14)
    pf = polar_decompose(-1 + I + J)
    assert pf.branch is Branch.NULL and pf.sign == -1
    assert reconstruct(pf).isclose(-1 + I + J, atol=1e-15)
    pf = polar_decompose(Coquaternion(-3, 1, 0, 0))
    assert pf.angle == pytest.approx(math.atan2(1, -3))


def test_polar_errors():
    with pytest.raises(ZeroCoquaternion):
        polar_decompose(ZERO)
    with pytest.raises(DegeneratePolar):
        polar_decompose(I + J)
    with pytest.raises(DegeneratePolar):
        polar_decompose(1 + J)


@given(coquaternions)
def test_polar_axis_squares(q):
    assume(not is_null(q))
    pf = polar_decompose(q)
    expected = {Branch.CIRCULAR: -1, Branch.HYPERBOLIC_COSH: 1,
                Branch.HYPERBOLIC_SINH: 1, Branch.NULL: 0}[pf.branch]
    # the axis is q.imag over a modulus that shrinks near the light cone
    tol = 1e-9 + 1e-13 * pf.axis.euclid2()
    assert (pf.axis * pf.axis).isclose(Coquaternion(expected), atol=tol)


@given(coquaternions)
def test_polar_round_trip(q):
    assume(q.euclid2() > 0 and not is_null(q))
    back = reconstruct(polar_decompose(q))
    # near the light cone the factors are ill-conditioned by |q|^2 / |mod2(q)|
    cond = q.euclid2() / abs(mod2(q))
    assert math.sqrt((back - q).euclid2()) <= (1e-10 + 1e-15 * cond) * math.sqrt(q.euclid2())


def test_polar_form_is_a_value():
    pf = PolarForm(Branch.CIRCULAR, 1.0, I, 0.5)
    assert pf == PolarForm(Branch.CIRCULAR, 1.0, I, 0.5)
    assert reconstruct(pf).isclose(ONE * math.cos(0.5) + I * math.sin(0.5))


@given(st.lists(st.floats(-1e3, 1e3), min_size=4, max_size=4))
def test_mod2_matches_quadratic_form(a):
    q = Coquaternion(*a)
    metric = np.diag([1.0, 1.0, -1.0, -1.0])
    assert mod2(q) == pytest.approx(q.as_array() @ metric @ q.as_array(), abs=1e-9)
