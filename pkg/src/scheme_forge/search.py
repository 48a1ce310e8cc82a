"""Admissible (p, q) pairs for the DSRG construction and the matching t-values."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .primes import is_prime, prime_power

MAX_Q = 1 << 40


@dataclass(frozen=True)
class DsrgPair:
    p: int
    q: int
    r: int
    d: int
    both_prime: bool

    @property
    def t(self) -> int:
        return (self.p - 3) // 4

    def row(self) -> str:
        return f"{self.p} {self.q} {self.r} {self.d} {int(self.both_prime)}"

    def to_dict(self) -> dict:
        return asdict(self)


def search_pairs(max_q: int, prime_q: bool = False) -> list[DsrgPair]:
    """All (p, q) with p prime = 3 mod 4, q - 1 = p(p-3)/4 a prime power, q <= max_q.

    Loops over p, since q grows like p^2/4.
    """
    if max_q > MAX_Q:
        raise ValueError(f"max_q must be at most 2^40, got {max_q}")
    out = []
    p = 3
    while True:
        q = p * (p - 3) // 4 + 1
        if q > max_q:
            break
        if q >= 2 and is_prime(p):
            if prime_q:
                if is_prime(q):
                    out.append(DsrgPair(p, q, q, 1, True))
            else:
                rd = prime_power(q)
                if rd is not None:
                    r, d = rd
                    assert d % 2 == 1, f"q = {q} = {r}^{d} with d even"
                    out.append(DsrgPair(p, q, r, d, d == 1))
        p += 4
    return sorted(out, key=lambda x: x.q)


def bateman_horn_t(max_t: int) -> list[int]:
    """t with 4t + 3 and (4t + 3)t + 1 both prime."""
    if max_t > 1 << 30:
        raise ValueError(f"max_t must be at most 2^30, got {max_t}")
    return [t for t in range(max_t + 1) if is_prime(4 * t + 3) and is_prime((4 * t + 3) * t + 1)]
