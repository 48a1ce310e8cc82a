"""Primality and prime-power tests for 64-bit integers."""

from __future__ import annotations

# Deterministic for every n < 3.3e24 (Sorenson & Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(u: int) -> bool:
    if u < 2:
        return False
    for p in _SMALL_PRIMES:
        if u % p == 0:
            return u == p
    d, s = u - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, u)
        if x == 1 or x == u - 1:
            continue
        for _ in range(s - 1):
            x = x * x % u
            if x == u - 1:
                break
        else:
            return False
    return True


def integer_root(u: int, k: int) -> int:
    """Largest integer x with x**k <= u."""
    if k == 1:
        return u
    x = int(round(u ** (1.0 / k)))
    while x ** k > u:
        x -= 1
    while (x + 1) ** k <= u:
        x += 1
    return x


def prime_power(u: int) -> tuple[int, int] | None:
    """Return ``(r, d)`` with ``u == r**d`` and r prime, or None."""
    if u < 2:
        return None
    if is_prime(u):
        return (u, 1)
    for d in range(2, u.bit_length() + 1):
        x = integer_root(u, d)
        if x < 2:
            break
        if x ** d == u and is_prime(x):
            return (x, d)
    return None


def is_prime_power(u: int) -> bool:
    return prime_power(u) is not None


def prime_factors(u: int) -> list[int]:
    """Distinct prime divisors by trial division (u is at most a field order)."""
    out = []
    p = 2
    while p * p <= u:
        if u % p == 0:
            out.append(p)
            while u % p == 0:
                u //= p
        p += 1 if p == 2 else 2
    if u > 1:
        out.append(u)
    return out


def quadratic_residues(p: int) -> list[int]:
    return sorted({x * x % p for x in range(1, p)})
