import random

import pytest

from algroup import PrimeField, QQ, is_prime


def test_rational_arithmetic():
    half = QQ.from_ratio(1, 2)
    third = QQ.from_ratio(1, 3)
    assert QQ.add(half, third) == QQ.from_ratio(5, 6)
    assert QQ.from_ratio(-2, 4) == QQ.from_ratio(-1, 2)
    assert QQ.inv(QQ.from_ratio(-3, 7)) == QQ.from_ratio(-7, 3)
    assert QQ.sub(half, half) == QQ.zero()
    assert QQ.mul(QQ.from_int(6), QQ.from_ratio(1, 6)) == QQ.one()


def test_prime_field_arithmetic():
    f5 = PrimeField(5)
    assert f5.mul(3, 4) == 2
    assert f5.inv(2) == 3
    assert f5.add(4, 4) == 3
    assert f5.from_int(-1) == 4
    f7 = PrimeField(7)
    assert f7.inv(1) == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        QQ.inv(QQ.zero())
    with pytest.raises(ZeroDivisionError):
        PrimeField(5).inv(0)
    with pytest.raises(ZeroDivisionError):
        QQ.div(QQ.one(), QQ.zero())


def test_modulus_validation():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeField(1)
    with pytest.raises(ValueError):
        PrimeField(2**63)  # word-size limit, checked before primality
    PrimeField(2**61 - 1)  # large Mersenne prime is fine


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for k in range(2, 50):
        assert is_prime(k) == (k in primes)
    assert not is_prime(0) and not is_prime(1) and not is_prime(-7)
    assert is_prime(2**31 - 1)
    assert not is_prime(2**32 + 1)


def test_field_axioms_random():
    rng = random.Random(7)
    fields = [QQ, PrimeField(5), PrimeField(2), PrimeField(97)]
    for field in fields:
        def rand():
            if field is QQ:
                return QQ.from_ratio(rng.randint(-20, 20), rng.randint(1, 9))
            return field.from_int(rng.randint(0, 200))
        for _ in range(50):
            a, b, c = rand(), rand(), rand()
            assert field.add(a, b) == field.add(b, a)
            assert field.mul(a, b) == field.mul(b, a)
            assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
            assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
            assert field.mul(a, field.add(b, c)) == \
                field.add(field.mul(a, b), field.mul(a, c))
            assert field.add(a, field.neg(a)) == field.zero()
            if a != field.zero():
                assert field.mul(a, field.inv(a)) == field.one()


def test_fermat_little_theorem():
    rng = random.Random(11)
    for p in (2, 3, 5, 31, 97):
        field = PrimeField(p)
        for _ in range(30):
            a = field.from_int(rng.randint(0, 10 * p))
            assert field.pow(a, p) == a


def test_field_equality():
    assert QQ == QQ.__class__()
    assert PrimeField(5) == PrimeField(5)
    assert PrimeField(5) != PrimeField(7)
    assert QQ != PrimeField(5)
