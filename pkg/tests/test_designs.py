from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scheme_forge.designs import (
    complement_ds,
    difference_counts,
    ds_catalog,
    ds_equivalent,
    paley_ds,
    singer_ds,
    trivial_ds,
    verify_ds,
)
from scheme_forge.errors import BadCongruence, DegreeTooSmall, NotADS, NotPrime


def brute_lambda(n, D):
    """None unless every nonzero x has the same number of representations d1 - d2."""
    reps = {x: sum(1 for a in D for b in D if (a - b) % n == x) for x in range(1, n)}
    vals = set(reps.values())
    return vals.pop() if len(vals) == 1 else (0 if n == 1 else None)


def test_examples():
    assert verify_ds(7, [1, 2, 4]).params == (7, 3, 1)
    assert verify_ds(10, [4]).params == (10, 1, 0)
    assert verify_ds(3, [1, 2]).params == (3, 2, 1)
    assert trivial_ds(3, "complement-singleton").elements == (1, 2)
    assert trivial_ds(6, "full").params == (6, 6, 6)
    assert complement_ds(paley_ds(7)).params == (7, 4, 2)
    assert paley_ds(11).elements == (1, 3, 4, 5, 9) and paley_ds(11).params == (11, 5, 2)
    with pytest.raises(BadCongruence):
        paley_ds(5)
    with pytest.raises(NotADS):
        verify_ds(7, [0, 1, 2])


def test_singer():
    assert singer_ds(2, 3).params == (7, 3, 1)
    assert singer_ds(3, 2).complement().params == (4, 3, 2)
    assert singer_ds(2, 5).params == (31, 15, 7)
    assert singer_ds(2, 4).complement().params == (15, 8, 4)
    with pytest.raises(NotPrime):
        singer_ds(4, 2)
    with pytest.raises(DegreeTooSmall):
        singer_ds(2, 1)


@pytest.mark.parametrize("r,d", [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 5), (7, 2)])
def test_singer_parameters(r, d):
    n = (r ** d - 1) // (r - 1)
    D = singer_ds(r, d)
    assert D.complement().params == (n, r ** (d - 1), r ** (d - 2) * (r - 1))
    assert brute_lambda(n, D.elements) == D.lam


def test_equivalence():
    D = paley_ds(7)
    shifted = [(x + 5) % 7 for x in D.elements]
    assert ds_equivalent(D, verify_ds(7, shifted)) == (1, 5)
    assert ds_equivalent(paley_ds(7), singer_ds(2, 3)) is not None
    assert ds_equivalent(paley_ds(31), singer_ds(2, 5)) is None
    assert ds_equivalent(paley_ds(31), singer_ds(2, 5).complement()) is None


@given(st.integers(1, 30), st.integers(0, 29), st.sampled_from([(7, (1, 2, 4)), (13, (0, 1, 3, 9)), (11, (1, 3, 4, 5, 9))]))
def test_equivalence_is_symmetric_and_transitive(u, g, case):
    n, elems = case
    from math import gcd

    if gcd(u, n) != 1:
        return
    D = verify_ds(n, elems)
    E = verify_ds(n, [(u * x + g) % n for x in elems])
    w = ds_equivalent(D, E)
    assert w is not None
    back = ds_equivalent(E, D)
    assert back is not None
    u2, g2 = back
    assert sorted((u2 * x + g2) % n for x in E.elements) == list(D.elements)
    F = verify_ds(n, [(3 * x + 1) % n for x in E.elements]) if gcd(3, n) == 1 else E
    assert ds_equivalent(D, F) is not None


def test_catalog_counting_identity():
    cat = ds_catalog(31)
    assert len(cat) > 100
    for D in cat:
        assert D.k * (D.k - 1) == D.lam * (D.n - 1)
        assert brute_lambda(D.n, D.elements) == D.lam
        assert D.catalog_line().startswith(f"{D.n} {D.k} {D.lam} :")


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_verify_ds_against_exhaustive_subsets(n):
    for k in range(1, n + 1):
        for D in combinations(range(n), k):
            lam = brute_lambda(n, D)
            if lam is None:
                with pytest.raises(NotADS):
                    verify_ds(n, D)
            else:
                assert verify_ds(n, D).lam == lam


def test_difference_counts():
    assert difference_counts(7, [1, 2, 4]).tolist() == [3, 1, 1, 1, 1, 1, 1]
