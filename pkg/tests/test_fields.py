import pytest

from exacthom.fields import GF, QQ, field_from_name, rational_parts


def test_rational_arithmetic_exact():
    a = QQ.of(1, 3)
    b = QQ.of(1, 6)
    assert QQ.add(a, b) == QQ.of(1, 2)
    assert QQ.mul(a, QQ.of(3)) == QQ.one
    assert QQ.inv(QQ.of(-2, 4)) == QQ.of(-2)
    assert QQ.sub(a, a) == QQ.zero


def test_rational_normal_form():
    num, den = rational_parts(QQ.of(6, -4))
    assert (num, den) == (-3, 2)


def test_rational_parse():
    assert QQ.parse("3/2") == QQ.of(3, 2)
    assert QQ.parse("-7") == QQ.of(-7)


def test_prime_field_arithmetic():
    F = GF(7)
    assert F.add(5, 4) == 2
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5
    assert F.neg(0) == 0
    assert F.of(-1) == 6
    assert F.of_rational(1, 2) == 4  # 2 * 4 = 1 mod 7


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        GF(6)


def test_prime_field_rejects_bad_denominator():
    with pytest.raises(ZeroDivisionError):
        GF(5).of_rational(1, 10)


def test_field_names_round_trip():
    assert field_from_name("Q") is QQ
    assert field_from_name("Fp:11") == GF(11)
    assert field_from_name("Fp:11") is GF(11)
    with pytest.raises(ValueError):
        field_from_name("R")


def test_division_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        QQ.inv(QQ.zero)
    with pytest.raises(ZeroDivisionError):
        GF(5).inv(0)
