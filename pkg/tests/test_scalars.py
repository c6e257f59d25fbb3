import random
from fractions import Fraction

import pytest

from bosokit.scalars import (
    FieldError,
    FieldSpec,
    Scalar,
    compute_big_n,
    cyclotomic_polynomial,
    infer_field,
    order_of_unity,
    parse_scalar,
    scalar_arith,
)

from conftest import random_scalar


def test_modular_arithmetic_examples():
    F5 = FieldSpec.prime(5)
    assert scalar_arith(F5.from_int(3), F5.from_int(4), "add") == F5.from_int(2)
    assert scalar_arith(F5.one(), F5.from_int(2), "div") == F5.from_int(3)


def test_zeta4_square_is_minus_one():
    Q4 = FieldSpec.cyclotomic(4)
    z = Q4.zeta()
    assert scalar_arith(z, z, "mul") == Q4.from_int(-1)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_field_mismatch_and_zero_division():
    F5 = FieldSpec.prime(5)
    F7 = FieldSpec.prime(7)
    with pytest.raises(FieldError):
        scalar_arith(F5.one(), F7.one(), "add")
    with pytest.raises(FieldError):
        scalar_arith(F5.one(), F5.zero(), "div")


def test_order_of_unity_examples():
    Q6 = FieldSpec.cyclotomic(6)
    assert order_of_unity(Q6.zeta()) == 6
    assert order_of_unity(Q6.one()) == 1
    F5 = FieldSpec.prime(5)
    assert order_of_unity(F5.from_int(-1)) == 2
    # 2 is not a root of unity in Q
    Q = FieldSpec.rationals()
    assert order_of_unity(Q.from_int(2)) is None
    with pytest.raises(FieldError):
        order_of_unity(Q.zero())


def test_zeta_n_has_order_n():
    for n in range(1, 13):
        field = FieldSpec.cyclotomic(n)
        assert order_of_unity(field.zeta()) == (n if n > 1 else 1)


def test_compute_big_n_examples():
    F3 = FieldSpec.prime(3)
    assert compute_big_n(F3.one(), 3) == 3
    Q4 = FieldSpec.cyclotomic(4)
    assert compute_big_n(Q4.zeta(), 0) == 4
    F5 = FieldSpec.prime(5)
    assert compute_big_n(F5.from_int(-1), 5) == 2


def test_compute_big_n_coprime_to_characteristic():
    for p in (3, 5, 7, 11):
        F = FieldSpec.prime(p)
        for a in range(2, p):
            q = F.from_int(a)
            if q.is_one():
                continue
            n = compute_big_n(q, p)
            assert n % p != 0


def test_inverse_property_randomized():
    rng = random.Random(7)
    fields = [
        FieldSpec.prime(5),
        FieldSpec.prime(7),
        FieldSpec.rationals(),
        FieldSpec.cyclotomic(3),
        FieldSpec.cyclotomic(4),
    ]
    for field in fields:
        one = field.one()
        count = 0
        while count < 1000:
            a = random_scalar(field, rng)
            if a.is_zero():
                continue
            assert a * a.inverse() == one
            count += 1


def test_canonical_form_uniqueness():
    Q3 = FieldSpec.cyclotomic(3)
    z = Q3.zeta()
    # zeta^2 = -1 - zeta modulo Phi_3
    assert (z * z).value == (Fraction(-1), Fraction(-1))
    assert z ** 3 == Q3.one()
    assert hash(z ** 4) == hash(z)


def test_parse_field_and_scalar():
    assert str(FieldSpec.parse("F5")) == "F5"
    assert str(FieldSpec.parse("Q(zeta4)")) == "Q(zeta4)"
    assert str(FieldSpec.parse("Q")) == "Q"
    with pytest.raises(FieldError):
        FieldSpec.parse("F6")
    Q4 = FieldSpec.cyclotomic(4)
    assert parse_scalar("zeta^2", Q4) == Q4.from_int(-1)
    assert parse_scalar("-1/2", Q4) == Q4.from_fraction(Fraction(-1, 2))
    assert parse_scalar("1/2", FieldSpec.prime(5)) == FieldSpec.prime(5).from_int(3)
    assert infer_field("zeta3") == FieldSpec.cyclotomic(3)
    assert infer_field("-2") == FieldSpec.rationals()


def test_power_and_negative_exponent():
    Q5 = FieldSpec.cyclotomic(5)
    z = Q5.zeta()
    assert z ** (-1) == z ** 4
    assert z ** 0 == Q5.one()
