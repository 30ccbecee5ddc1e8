import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coqdyn.classify import RegimeKind, SpectrumKind
from coqdyn.coquaternion import I, J, K, ONE, ZERO, Coquaternion
from coqdyn.errors import NullGenerator
from coqdyn.matrix2 import CoqMatrix2, build_hamiltonian, eigenvalues, generator, pauli
from coqdyn.oracle import real_rep4, spectrum_oracle

from strategies import coquaternions, nonnull_params, params

matrices = st.builds(CoqMatrix2, coquaternions, coquaternions, coquaternions, coquaternions)


def test_pauli_examples():
    assert pauli(1) == CoqMatrix2(ZERO, ONE, ONE, ZERO)
    assert pauli(4) == CoqMatrix2(ZERO, -J, J, ZERO)


@pytest.mark.parametrize("l, sign", [(1, 1), (2, 1), (3, 1), (4, -1), (5, -1)])
def test_pauli_squares(l, sign):
    # (-j)(j) = -j^2 = -1, so the j- and k-valued matrices square to minus the identity
    square = pauli(l) @ pauli(l)
    assert square == CoqMatrix2.identity() * sign
    np.testing.assert_array_equal(real_rep4(pauli(l)) @ real_rep4(pauli(l)), sign * np.eye(4))


@pytest.mark.parametrize("l", range(1, 6))
def test_pauli_hermitian(l):
    assert pauli(l).dagger() == pauli(l)
    assert pauli(l).is_hermitian()


@pytest.mark.parametrize("l", [0, 6, -1])
def test_pauli_index_range(l):
    with pytest.raises(IndexError):
        pauli(l)


@given(matrices)
def test_dagger_involution(m):
    assert m.dagger().dagger() == m


@given(matrices, matrices)
def test_dagger_reverses_products(m, n):
    assert (m @ n).dagger().isclose(n.dagger() @ m.dagger(), atol=1e-9)


@given(matrices, matrices)
def test_real_rep4_is_multiplicative(m, n):
    np.testing.assert_allclose(real_rep4(m @ n), real_rep4(m) @ real_rep4(n), atol=1e-9)


@given(params)
def test_hamiltonian_hermitian(u):
    h = build_hamiltonian(u, allow_null=True)
    assert h.matrix.is_hermitian()


@given(params)
def test_hamiltonian_is_pauli_sum(u):
    h = build_hamiltonian(u, allow_null=True)
    total = CoqMatrix2.identity() * u[0]
    for l in range(1, 6):
        total = total + pauli(l) * u[l]
    assert h.matrix.isclose(total, atol=1e-14)


def test_build_examples():
    h = build_hamiltonian((0, 1, 0, 0, 0, 0), allow_null=True)
    assert h.matrix == pauli(1)
    assert h.spectrum.kind is SpectrumKind.REAL_PAIR
    assert (h.spectrum.e_plus, h.spectrum.e_minus) == (1, -1)

    h = build_hamiltonian((0, 0, 0, 0, 1, 0))
    assert h.regime.kind is RegimeKind.SPACE_LIKE
    assert h.spectrum.kind is SpectrumKind.COMPLEX_PAIR
    assert (h.spectrum.e_plus, h.spectrum.e_minus) == (1j, -1j)

    h = build_hamiltonian((1, 3, 0, 0, 4, 0))
    assert h.spectrum.kind is SpectrumKind.COMPLEX_PAIR
    assert h.spectrum.e_plus == pytest.approx(1 + 1j * math.sqrt(7), abs=1e-15)


def test_eigenvalue_examples():
    cases = [
        ((2, 0, 0, 1, 0, 0), (3, 1)),
        ((0, 1, 1, 1, 1, 1), (1, -1)),
        ((0, 0, 0, 0, 3, 4), (5j, -5j)),
    ]
    for u, (ep, em) in cases:
        h = build_hamiltonian(u, allow_null=True)
        spec = eigenvalues(h)
        assert spec.e_plus == pytest.approx(ep, abs=1e-14)
        assert spec.e_minus == pytest.approx(em, abs=1e-14)
        # each value appears twice among the eigenvalues of the 4x4 real image
        oracle = spectrum_oracle(h)
        for e in (ep, em):
            assert np.sum(np.abs(oracle - e) < 1e-10) == 2


def test_null_regime_needs_opt_in():
    with pytest.raises(NullGenerator):
        build_hamiltonian((0, 0, 1, 0, 1, 0))
    h = build_hamiltonian((0, 0, 1, 0, 1, 0), allow_null=True)
    assert h.is_null and h.nu == 0 and h.generator_unit is None and h.sign == 0
    with pytest.raises(NullGenerator):
        generator(h)


def test_generator_examples():
    a = generator(build_hamiltonian((0, 0, 1, 0, 0, 0)))
    assert a == CoqMatrix2(ZERO, ONE, -ONE, ZERO)
    assert a == pauli(2).left_scale(I)

    a = generator(build_hamiltonian((0, 0, 0, 0, 1, 0)))
    assert a == pauli(4).left_scale(J)
    assert a.isclose(CoqMatrix2(ZERO, -ONE, ONE, ZERO))


@given(nonnull_params)
def test_generator_skew_hermitian(u):
    a = generator(build_hamiltonian(u))
    assert (a.dagger() + a).isclose(CoqMatrix2.zero(), atol=1e-12)


@given(nonnull_params)
def test_generator_unit_squares(u):
    h = build_hamiltonian(u)
    square = h.generator_unit * h.generator_unit
    assert square.isclose(Coquaternion(-h.sign), atol=1e-12)
    assert h.sign == (1 if h.regime.kind is RegimeKind.TIME_LIKE else -1)


def test_matrix_arithmetic():
    m = CoqMatrix2(ONE, I, J, K)
    assert m + CoqMatrix2.zero() == m
    assert m - m == CoqMatrix2.zero()
    assert -m == m * -1
    assert CoqMatrix2.identity() @ m == m
    assert m.apply(ONE, ZERO) == (ONE, J)
    assert not m.is_hermitian()
