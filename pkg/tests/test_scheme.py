import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from scheme_forge.errors import NotAScheme, SchemeViolation
from scheme_forge.scheme import (
    Scheme,
    intersection_numbers,
    star_group,
    thin_radical,
    trivial_scheme,
    verify_scheme,
)
from scheme_forge.tatra import check_group_ring_identities, check_product_identities, tatra_scheme

CASES = [(4, 3), (5, 2), (7, 3), (8, 7), (9, 4), (13, 3)]


def matmul_tensor(X):
    """c_rs^t read off A_r A_s at the first pair of relation t."""
    C = np.asarray(X.colors)
    k = X.rank
    A = [(C == r).astype(np.int64) for r in range(k)]
    firsts = [tuple(np.argwhere(C == t)[0]) for t in range(k)]
    out = np.zeros((k, k, k), dtype=np.int64)
    for r in range(k):
        for s in range(k):
            P = A[r] @ A[s]
            for t, (a, b) in enumerate(firsts):
                out[r, s, t] = P[a, b]
    return out


@pytest.mark.parametrize("q,n", CASES)
def test_tensor_matches_matmul_oracle(omega, q, n):
    X = tatra_scheme(omega(q, n))
    cert = verify_scheme(X, mode="full")
    assert cert.rank == 2 * n
    assert np.array_equal(cert.tensor, matmul_tensor(X))
    assert sorted(cert.valencies) == sorted([1] * n + [q] * n)


@pytest.mark.parametrize("q,n", CASES)
def test_form_product_entries(omega, q, n):
    om = omega(q, n)
    T = intersection_numbers(tatra_scheme(om))
    for h in range(n):
        for g in range(n):
            for x in range(n):
                assert T[n + h, n + g, x] == q * (x == (g - h) % n)
                assert T[n + h, n + g, n + x] == om.m
                assert T[h, g, x] == (x == (g + h) % n)


def test_tensor_examples(omega):
    T = intersection_numbers(tatra_scheme(omega(8, 7)))
    assert T[7, 7, 0] == 8
    assert T[7, 7, 10] == 1


def test_trivial_scheme():
    cert = verify_scheme(trivial_scheme(5))
    assert cert.rank == 2 and cert.commutative


def test_mutation_is_caught(omega):
    om = omega(8, 7)
    C = np.array(om.colors)
    a, b = map(int, np.argwhere(C == 7)[0])
    C[a, b] = C[b, a] = 8  # keep it symmetric so the count check has to find it
    X = Scheme(C, tatra_scheme(om).names)
    with pytest.raises(SchemeViolation) as info:
        verify_scheme(X, mode="full")
    r, s, t, pair, ref = info.value.witness
    assert pair != ref
    with pytest.raises(NotAScheme):
        intersection_numbers(X)


def test_sampled_mode_records_itself(omega):
    cert = verify_scheme(tatra_scheme(omega(9, 4)), mode="sampled", samples=8, seed=3)
    full = verify_scheme(tatra_scheme(omega(9, 4)), mode="full")
    assert cert.mode == "sampled" and full.mode == "full"
    assert cert.tensor_hash == full.tensor_hash


def test_commutativity(omega):
    assert not verify_scheme(tatra_scheme(omega(8, 7))).commutative
    cert = verify_scheme(tatra_scheme(omega(5, 2)))
    assert cert.commutative and cert.rank == 4
    assert verify_scheme(tatra_scheme(omega(5, 1))).commutative


@pytest.mark.parametrize("q,n", CASES)
def test_product_identities(omega, q, n):
    assert all(check_product_identities(omega(q, n)).values())


@pytest.mark.parametrize("q,n", [(8, 7), (9, 4), (13, 3)])
@given(data=st.data())
def test_group_ring_identities(omega, q, n, data):
    coeffs = st.lists(st.integers(-4, 4), min_size=n, max_size=n)
    xi, eta = data.draw(coeffs), data.draw(coeffs)
    assert all(check_group_ring_identities(omega(q, n), xi, eta).values())


def test_thin_radical_and_star_group(omega):
    X = tatra_scheme(omega(8, 7))
    thin = thin_radical(X)
    assert thin.order == 7 and thin.is_cyclic() and thin.is_group()
    star = star_group(X)
    assert star.order == 14 and star.is_group() and star.is_dihedral() and not star.is_cyclic()
    thin4 = thin_radical(tatra_scheme(omega(9, 4)))
    assert thin4.order == 4 and thin4.is_cyclic()
    assert thin_radical(tatra_scheme(omega(5, 1))).order == 1
