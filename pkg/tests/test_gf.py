import random

import pytest

from rankmetric.errors import (
    DependentBasisError,
    FieldTooLargeError,
    GcdViolationError,
    NonPrimeError,
    NotADivisorError,
    ReducibleModulusError,
)
from rankmetric.gf import field_create, poly_is_irreducible


def test_prime_field():
    f2 = field_create(2, 1, 1)
    assert f2.order == 2
    assert f2.generator == 1
    assert f2.add(1, 1) == 0
    assert f2.mul(1, 1) == 1


def test_f16_standard_modulus(f16):
    xi = f16.generator
    assert f16.multiplicative_order(xi) == 15
    # any stored generator is a root of X^4 + X + 1
    assert f16.pow(xi, 4) == f16.add(xi, f16.one)


def test_f81_generator_order():
    f81 = field_create(3, 1, 4)
    xi = f81.generator
    # verify full order by exponentiation: xi^80 = 1 and xi^(80/r) != 1
    assert f81.pow(xi, 80) == 1
    for r in (2, 5):
        assert f81.pow(xi, 80 // r) != 1


def test_default_modulus_is_deterministic():
    a = field_create(2, 1, 4)
    b = field_create(2, 1, 4)
    assert a.modulus == b.modulus
    assert a.generator == b.generator
    assert poly_is_irreducible(list(a.modulus), 2)


def test_nonprime_rejected():
    with pytest.raises(NonPrimeError):
        field_create(4, 1, 2)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulusError):
        field_create(2, 1, 4, [1, 0, 0, 0, 1])  # x^4 + 1 = (x+1)^4


def test_field_guard():
    with pytest.raises(FieldTooLargeError):
        field_create(2, 1, 30)


# -- frobenius ---------------------------------------------------------------

def test_frobenius_trivial_cases(f16):
    xi = f16.generator
    assert f16.frobenius(xi, 0) == xi
    assert f16.frobenius(xi, f16.n) == xi
    assert f16.frobenius(xi, 1) == f16.mul(xi, xi)


def test_frobenius_negative_index(f64):
    a = f64.generator
    assert f64.frobenius(f64.frobenius(a, -1), 1) == a


def test_frobenius_is_automorphism(f81):
    rng = random.Random(7)
    for j in range(f81.n):
        for _ in range(200):
            a, b = rng.randrange(81), rng.randrange(81)
            assert f81.frobenius(f81.mul(a, b), j) == \
                f81.mul(f81.frobenius(a, j), f81.frobenius(b, j))
            assert f81.frobenius(f81.add(a, b), j) == \
                f81.add(f81.frobenius(a, j), f81.frobenius(b, j))


# -- norms ---------------------------------------------------------------

def test_norm_of_ground_field_element(f81):
    for a in f81.fq_list():
        expected = 1 if a else 0
        acc = f81.one
        for _ in range(f81.n):
            acc = f81.mul(acc, a)
        assert f81.relative_norm(a, 1) == (acc if a else 0)


def test_norm_at_q2_is_always_one(f64):
    # exponent sum_(i<n) 2^(s i) is divisible by 2^n - 1, so the norm of any
    # nonzero element is 1; cross-check the product route against the
    # exponent route
    for s in (1, 5):
        for a in range(1, 64):
            exponent = sum(2 ** ((s * i) % 6) for i in range(6))
            assert f64.relative_norm(a, s) == f64.pow(a, exponent) == 1


def test_norm_of_nonsquare_is_minus_one(f81):
    xi = f81.generator  # odd generator exponent = a non-square
    assert f81.relative_norm(xi, 1) == f81.neg(f81.one)
    # squares have norm +1
    assert f81.relative_norm(f81.mul(xi, xi), 1) == f81.one


def test_norm_rejects_bad_step(f64):
    with pytest.raises(GcdViolationError):
        f64.relative_norm(f64.generator, 2)


def test_norm_lands_in_ground_field(f81):
    rng = random.Random(3)
    fq = f81.subfield_elements(1)
    for _ in range(300):
        assert f81.relative_norm(rng.randrange(81), 1) in fq


# -- subfields ----------------------------------------------------------

def test_subfield_extremes(f64):
    assert f64.subfield_elements(1) == frozenset(f64.fq_list())
    assert len(f64.subfield_elements(1)) == 2
    assert f64.subfield_elements(6) == frozenset(range(64))


def test_subfield_f8_inside_f64(f64):
    sf = f64.subfield_elements(3)
    assert len(sf) == 8
    # exactly the fixed points of x -> x^(q^3)
    assert sf == frozenset(a for a in range(64) if f64.frobenius(a, 3) == a)
    for a in sf:
        for b in sf:
            assert f64.add(a, b) in sf
            assert f64.mul(a, b) in sf


def test_subfield_rejects_nondivisor(f64):
    with pytest.raises(NotADivisorError):
        f64.subfield_elements(4)


def test_subfield_nesting_iff_divisibility(f64):
    divisors = [1, 2, 3, 6]
    for l1 in divisors:
        for l2 in divisors:
            nested = f64.subfield_elements(l1) <= f64.subfield_elements(l2)
            assert nested == (l2 % l1 == 0)


# -- coordinates --------------------------------------------------------

def test_vec_repr_trivial(f16):
    basis = f16.power_basis()
    assert f16.vec_repr(0, basis) == (0, 0, 0, 0)
    for i, b in enumerate(basis):
        expected = tuple(1 if j == i else 0 for j in range(4))
        assert f16.vec_repr(b, basis) == expected


def test_vec_repr_reads_off_coordinates(f16):
    xi = f16.generator
    a = f16.add(f16.mul(xi, xi), xi)
    assert f16.vec_repr(a) == (0, 1, 1, 0)


def test_vec_repr_is_linear_and_invertible(f81):
    rng = random.Random(11)
    for _ in range(100):
        a, b = rng.randrange(81), rng.randrange(81)
        va, vb = f81.vec_repr(a), f81.vec_repr(b)
        vsum = f81.vec_repr(f81.add(a, b))
        assert vsum == tuple(f81.add(x, y) for x, y in zip(va, vb))
        assert f81.from_vec(va) == a


def test_vec_repr_rejects_dependent_basis(f16):
    xi = f16.generator
    with pytest.raises(DependentBasisError):
        f16.vec_repr(xi, (1, xi, f16.add(1, xi), f16.pow(xi, 3)))


# -- axioms at volume -----------------------------------------------------

def test_field_axioms_random_sample(f81, f64):
    rng = random.Random(0)
    for gf in (f81, f64):
        for _ in range(5000):
            a, b, c = (rng.randrange(gf.order) for _ in range(3))
            assert gf.add(a, b) == gf.add(b, a)
            assert gf.add(gf.add(a, b), c) == gf.add(a, gf.add(b, c))
            assert gf.mul(a, b) == gf.mul(b, a)
            assert gf.mul(gf.mul(a, b), c) == gf.mul(a, gf.mul(b, c))
            assert gf.mul(a, gf.add(b, c)) == gf.add(gf.mul(a, b), gf.mul(a, c))
            assert gf.add(a, gf.neg(a)) == 0
            if a:
                assert gf.mul(a, gf.inv(a)) == gf.one


def test_generic_path_matches_tables(f81):
    # the schoolbook kernel must agree with the exp/log tables
    rng = random.Random(5)
    for _ in range(500):
        a, b = rng.randrange(81), rng.randrange(81)
        assert f81._mul_generic(a, b) == f81.mul(a, b)


# -- towers (e > 1) -------------------------------------------------------

def test_tower_field():
    gf = field_create(2, 2, 3)  # F_(4^3) = F_64 with F_4 inside
    assert gf.q == 4 and gf.order == 64
    fq = gf.fq_list()
    assert len(fq) == 4
    for a in fq:
        assert gf.frobenius_p(a, gf.e) == a  # fixed by x -> x^4
        for b in fq:
            assert gf.mul(a, b) in set(fq)
    rng = random.Random(2)
    for _ in range(50):
        a = rng.randrange(64)
        assert gf.from_vec(gf.vec_repr(a)) == a
        assert gf.frobenius(a, gf.n) == a


def test_serialize_roundtrip(f81):
    blob = f81.serialize()
    again = field_create(blob["p"], blob["e"], blob["n"], blob["modulus"])
    assert again.modulus == f81.modulus
    assert again.generator == f81.from_coords(blob["generator"])
