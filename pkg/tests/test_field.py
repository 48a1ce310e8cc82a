import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from scheme_forge.errors import (
    DegreeZero,
    DivisionByZero,
    FieldTooLarge,
    NotDivisor,
    NotPrime,
    ParityCondition,
    ZeroElement,
)
from scheme_forge.field import coset_of, make_field, sigma_zero, subgroup_of_index

FIELDS = [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 2), (2, 4), (3, 3), (2, 5), (7, 2)]


def high_first(coeffs):
    return [int(c) for c in reversed(coeffs)]


def oracle_mul(F, a, b):
    """Polynomial product mod the field modulus, via sympy's GF(p)[x] routines."""
    pa, pb = high_first(F.coeffs(a)), high_first(F.coeffs(b))
    mod = high_first(F.modulus_poly)
    prod = gf_rem(gf_mul(pa, pb, F.r, ZZ), mod, F.r, ZZ)
    return F.from_coeffs(list(reversed(prod)))


def least_irreducible(r, d):
    for code in range(r ** d):
        low = [(code // r ** i) % r for i in range(d)] + [1]
        if gf_irreducible_p(high_first(low), r, ZZ):
            return tuple(low)


@pytest.mark.parametrize("r,d", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_modulus_is_least_irreducible(r, d):
    F = make_field(r, d)
    assert F.modulus_poly == least_irreducible(r, d)


def test_small_fields():
    F2 = make_field(2, 1)
    assert F2.generator == 1 and F2.dlog(1) == 0
    F8 = make_field(2, 3)
    assert F8.modulus_poly == (1, 1, 0, 1)
    assert F8.element_order(F8.generator) == 7
    assert F8.coeffs(F8.pow(F8.generator, 3)) == (1, 1, 0)
    F9 = make_field(3, 2)
    assert F9.element_order(F9.generator) == 8
    assert sorted(F9.log[1:].tolist()) == list(range(8))


@pytest.mark.parametrize("r,d", FIELDS)
def test_generator_is_least_primitive(r, d):
    F = make_field(r, d)
    q = F.q
    orders = [F.element_order(x) for x in range(1, q)]
    assert orders.index(q - 1) + 1 == F.generator


@pytest.mark.parametrize("r,d", FIELDS)
def test_multiplication_matches_polynomial_oracle(r, d):
    F = make_field(r, d)
    xs = np.arange(F.q)
    table = F.mul(xs[:, None], xs[None, :])
    rng = np.random.default_rng(r * 100 + d)
    for a, b in rng.integers(0, F.q, size=(60, 2)).tolist():
        assert int(table[a, b]) == oracle_mul(F, a, b)


@pytest.mark.parametrize("r,d", FIELDS)
def test_frobenius_order_and_dlog(r, d):
    F = make_field(r, d)
    xs = np.arange(F.q)
    assert np.array_equal(F.frobenius(xs, F.d), xs)
    assert all(F.pow(int(x), F.q) == x for x in xs)
    nz = xs[1:]
    assert np.array_equal(F.exp[F.log[nz]], nz)


def test_frobenius_examples():
    F8 = make_field(2, 3)
    g = F8.generator
    assert F8.frobenius(g, 0) == g
    assert F8.frobenius(g, 1) == F8.mul(g, g)
    F9 = make_field(3, 2)
    assert all(F9.frobenius(x, 2) == x for x in range(9))


field_and_elements = st.sampled_from(FIELDS).flatmap(
    lambda rd: st.tuples(st.just(make_field(*rd)), *[st.integers(0, rd[0] ** rd[1] - 1)] * 3)
)


@given(field_and_elements)
def test_field_axioms(data):
    F, x, y, z = data
    assert F.add(x, F.add(y, z)) == F.add(F.add(x, y), z)
    assert F.mul(x, F.mul(y, z)) == F.mul(F.mul(x, y), z)
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert F.add(x, F.neg(x)) == 0
    assert F.sub(x, y) == F.add(x, F.neg(y))
    if x:
        assert F.mul(x, F.inv(x)) == 1
        assert F.div(y, x) == F.mul(y, F.inv(x))


def test_field_element_wrapper():
    F9 = make_field(3, 2)
    one = F9(1)
    assert (-one) * (-one) == one
    g = F9(F9.generator)
    assert g ** 8 == one and g * g.inverse() == one
    with pytest.raises(DivisionByZero):
        F9.inv(0)


def test_errors():
    with pytest.raises(NotPrime):
        make_field(4, 1)
    with pytest.raises(DegreeZero):
        make_field(2, 0)
    with pytest.raises(FieldTooLarge):
        make_field(2, 21)
    F5 = make_field(5)
    with pytest.raises(ParityCondition):
        subgroup_of_index(F5, 4)
    with pytest.raises(NotDivisor):
        subgroup_of_index(F5, 3)
    K = subgroup_of_index(make_field(2, 3), 7)
    with pytest.raises(ZeroElement):
        coset_of(K.F, K, 0)


def test_subgroups():
    F8 = make_field(2, 3)
    K = subgroup_of_index(F8, 7)
    assert K.m == 1 and K.elements() == [1]
    assert coset_of(F8, K, F8.generator) == 1
    F9 = make_field(3, 2)
    K = subgroup_of_index(F9, 4)
    assert K.m == 2 and sorted(K.elements()) == sorted([1, F9.neg(1)])


@pytest.mark.parametrize("q,n", [(4, 3), (5, 2), (7, 3), (8, 7), (9, 4), (13, 3), (23, 11), (25, 6), (27, 13)])
def test_coset_homomorphism(q, n):
    r, d = sympy.factorint(q).popitem()
    F = make_field(r, d)
    K = subgroup_of_index(F, n)
    xs = np.arange(1, q)
    labels = coset_of(F, K, xs)
    assert np.sum(labels == 0) == K.m
    prod = F.mul(xs[:, None], xs[None, :])
    assert np.array_equal(coset_of(F, K, prod), (labels[:, None] + labels[None, :]) % n)
    if q % 2:
        assert K.m % 2 == 0 and K.contains(F.neg(1))


def test_sigma_zero():
    assert sigma_zero(make_field(2, 3), 7) == [0]
    assert sigma_zero(make_field(7), 3) == [0]
    assert sigma_zero(make_field(2, 4), 5) == [0]
    assert sigma_zero(make_field(2, 4), 3) == [0, 2]
