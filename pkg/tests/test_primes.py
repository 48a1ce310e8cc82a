import sympy
from hypothesis import given
from hypothesis import strategies as st

from scheme_forge.primes import integer_root, is_prime, is_prime_power, prime_power, quadratic_residues


@given(st.integers(min_value=0, max_value=(1 << 63) - 1))
def test_is_prime_matches_sympy(u):
    assert is_prime(u) == sympy.isprime(u)


def test_known_values():
    assert prime_power(8) == (2, 3)
    assert is_prime(23) and prime_power(23) == (23, 1)
    assert not is_prime(1) and not is_prime_power(1)
    assert prime_power(12) is None
    assert prime_power(3 ** 13) == (3, 13)
    assert is_prime((1 << 61) - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


@given(st.integers(min_value=2, max_value=10 ** 6), st.integers(min_value=1, max_value=5))
def test_prime_power_roundtrip(base, k):
    u = base ** k
    rd = prime_power(u)
    facts = sympy.factorint(u)
    if len(facts) == 1:
        (r, d), = facts.items()
        assert rd == (r, d)
    else:
        assert rd is None


@given(st.integers(min_value=0, max_value=10 ** 30), st.integers(min_value=1, max_value=7))
def test_integer_root(u, k):
    x = integer_root(u, k)
    assert x ** k <= u < (x + 1) ** k


def test_quadratic_residues():
    assert quadratic_residues(7) == [1, 2, 4]
    assert quadratic_residues(11) == [1, 3, 4, 5, 9]
