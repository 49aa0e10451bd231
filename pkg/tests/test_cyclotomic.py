from fractions import Fraction

import pytest

from jumploci.cyclotomic import Cyclotomic, cyclotomic_polynomial, field_rank


def test_cyclotomic_polynomials_small_orders():
    # Phi_1 = x - 1, Phi_2 = x + 1, Phi_4 = x^2 + 1, Phi_6 = x^2 - x + 1
    assert cyclotomic_polynomial(1) == (Fraction(-1), Fraction(1))
    assert cyclotomic_polynomial(2) == (Fraction(1), Fraction(1))
    assert cyclotomic_polynomial(4) == (Fraction(1), Fraction(0), Fraction(1))
    assert cyclotomic_polynomial(6) == (Fraction(1), Fraction(-1), Fraction(1))
    assert len(cyclotomic_polynomial(12)) - 1 == 4  # phi(12) = 4


def test_roots_of_unity_relations():
    z = Cyclotomic.root_of_unity(6, 1)
    prod = Cyclotomic.rational(6, 1)
    for _ in range(6):
        prod = prod * z
    assert prod.is_one()
    # zeta_6^3 = -1
    assert Cyclotomic.root_of_unity(6, 3) == Cyclotomic.rational(6, -1)
    # zeta_4^2 = -1
    assert Cyclotomic.root_of_unity(4, 2).as_fraction() == -1


def test_primitive_root_sums():
    # 1 + zeta_3 + zeta_3^2 = 0
    total = (
        Cyclotomic.rational(3, 1)
        + Cyclotomic.root_of_unity(3, 1)
        + Cyclotomic.root_of_unity(3, 2)
    )
    assert total.is_zero()


def test_inverse_and_division():
    z = Cyclotomic.root_of_unity(12, 5) + Cyclotomic.rational(12, Fraction(1, 2))
    assert (z * z.inverse()).is_one()
    w = Cyclotomic.root_of_unity(12, 7)
    assert (z / w) * w == z
    with pytest.raises(ZeroDivisionError):
        Cyclotomic.rational(12, 0).inverse()


def test_as_fraction_guard():
    z = Cyclotomic.root_of_unity(4, 1)
    with pytest.raises(ValueError):
        z.as_fraction()
    assert Cyclotomic.rational(1, Fraction(7, 3)).as_fraction() == Fraction(7, 3)


def test_field_rank_rational_case():
    def q(x):
        return Cyclotomic.rational(1, x)

    rows = [[q(1), q(2)], [q(2), q(4)], [q(0), q(1)]]
    assert field_rank(rows) == 2
    assert field_rank([[q(0), q(0)]]) == 0
    assert field_rank([]) == 0


def test_field_rank_with_torsion_entries():
    z = Cyclotomic.root_of_unity(4, 1)  # i
    one = Cyclotomic.rational(4, 1)
    # [[1, i], [i, -1]] has rank 1: second row = i * first row
    rows = [[one, z], [z, z * z]]
    assert field_rank(rows) == 1
    rows = [[one, z], [z, one]]
    assert field_rank(rows) == 2
