import cmath

import pytest

from tracecat.cyclo import CycloField, FloatField, cyclotomic_polynomial, scalar_field


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    # phi(72) = 24
    assert len(cyclotomic_polynomial(72)) == 25


@pytest.mark.parametrize("k", [2, 4, 10, 16])
def test_special_elements(k):
    F = CycloField.for_level(k)
    N = 4 * (k + 2)
    assert F.conductor == N
    i = F.imag_unit()
    assert i * i == F.from_int(-1)
    # q^(1/2) squared is q
    assert F.q_half() * F.q_half() == F.q()
    assert F.zeta(N) == F.one


@pytest.mark.parametrize("k", [2, 4, 10, 16])
def test_quantum_integers_against_sines(k):
    F = CycloField.for_level(k)
    for n in range(1, k + 3):
        exact = complex(F.quantum_integer(n))
        expected = cmath.sin(n * cmath.pi / (k + 2)) / cmath.sin(cmath.pi / (k + 2))
        assert abs(exact - expected) < 1e-12
    # the alcove wall
    assert F.quantum_integer(k + 2).is_zero()
    for n in range(1, k + 2):
        assert not F.quantum_integer(n).is_zero()


def test_field_operations_exact():
    F = CycloField.for_level(4)
    a = F.quantum_integer(3)
    b = F.zeta(5) - F.q(-2)
    assert (a + b) - b == a
    assert a * b == b * a
    assert (a * b) * b.inverse() == a
    assert (a / a) == F.one
    assert a ** 3 == a * a * a
    assert a ** 0 == F.one
    with pytest.raises(ZeroDivisionError):
        F.zero.inverse()


def test_complex_evaluation_matches_arithmetic():
    F = CycloField.for_level(10)
    x = F.quantum_integer(5) * F.zeta(7) + F.q_half(-3)
    y = F.quantum_integer(2)
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-12
    assert abs(complex(x + y) - (complex(x) + complex(y))) < 1e-12


def test_float_field_mirrors_exact():
    E = CycloField.for_level(4)
    F = FloatField.for_level(4)
    assert abs(complex(F.loop_value()) - complex(E.loop_value())) < 1e-12
    assert F.quantum_integer(6).is_zero()
    assert F.imag_unit() * F.imag_unit() == F.from_int(-1)


def test_scalar_field_selector():
    assert isinstance(scalar_field(2), CycloField)
    assert isinstance(scalar_field(2, exact=False), FloatField)
