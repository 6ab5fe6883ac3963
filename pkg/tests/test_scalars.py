import random
from fractions import Fraction

import pytest

from hermfact import GaussianRational, as_gaussian

from helpers import rand_gauss


def test_construction_normalizes_to_fractions():
    c = GaussianRational(1, 2)
    assert c.re == Fraction(1) and c.im == Fraction(2)
    with pytest.raises(TypeError):
        GaussianRational(0.5)


def test_field_operations_exact():
    a = GaussianRational(Fraction(1, 3), Fraction(-2, 7))
    b = GaussianRational(Fraction(5, 2), Fraction(1, 6))
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a + (-a) == GaussianRational()
    assert a * a.inverse() == as_gaussian(1)


def test_conjugate_and_abs2():
    a = GaussianRational(Fraction(3, 4), Fraction(-1, 2))
    assert a.conjugate().im == Fraction(1, 2)
    assert a.abs2() == Fraction(9, 16) + Fraction(1, 4)
    assert (a * a.conjugate()).re == a.abs2()
    assert (a * a.conjugate()).im == 0


def test_powers():
    i = GaussianRational(0, 1)
    assert i**2 == as_gaussian(-1)
    assert i**0 == as_gaussian(1)
    a = GaussianRational(Fraction(2, 3), Fraction(1, 5))
    assert a**3 == a * a * a
    assert a**-2 == (a * a).inverse()


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        GaussianRational().inverse()
    with pytest.raises(ZeroDivisionError):
        as_gaussian(1) / GaussianRational()


def test_mixed_arithmetic_with_ints_and_fractions():
    a = GaussianRational(Fraction(1, 2), Fraction(1, 3))
    assert a + 1 == GaussianRational(Fraction(3, 2), Fraction(1, 3))
    assert 2 * a == GaussianRational(1, Fraction(2, 3))
    assert a - Fraction(1, 2) == GaussianRational(0, Fraction(1, 3))
    assert Fraction(1, 2) / GaussianRational(0, 1) == GaussianRational(0, Fraction(-1, 2))


def test_hash_and_equality_are_exact():
    a = GaussianRational(Fraction(2, 4), Fraction(0))
    b = GaussianRational(Fraction(1, 2))
    assert a == b and hash(a) == hash(b)
    assert a != GaussianRational(Fraction(1, 2), Fraction(1, 10**12))


def test_random_field_axioms():
    rng = random.Random(42)
    for _ in range(200):
        a, b, c = (rand_gauss(rng) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        if not b.is_zero():
            assert (a / b) * b == a


def test_complex_conversion():
    a = GaussianRational(Fraction(1, 4), Fraction(-3, 8))
    assert complex(a) == 0.25 - 0.375j
