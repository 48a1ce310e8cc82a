"""Difference sets in Z_n: construction, certification and equivalence."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import BadCongruence, DegreeTooSmall, NotADS, NotPrime
from .field import make_field
from .primes import is_prime, quadratic_residues
from .sring import cyclic_product, ring_inverse, underline


@dataclass(frozen=True)
class DifferenceSet:
    n: int
    elements: tuple[int, ...]
    k: int
    lam: int

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.n, self.k, self.lam)

    def complement(self) -> "DifferenceSet":
        return complement_ds(self)

    def catalog_line(self) -> str:
        return f"{self.n} {self.k} {self.lam} : " + " ".join(map(str, self.elements))

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "lambda": self.lam, "elements": list(self.elements)}


def difference_counts(n: int, D) -> np.ndarray:
    """counts[x] = #{(d1, d2) in D^2 : d1 - d2 = x}, by direct enumeration."""
    counts = np.zeros(n, dtype=np.int64)
    for a in D:
        for b in D:
            counts[(a - b) % n] += 1
    return counts


def verify_ds(n: int, D) -> DifferenceSet:
    elems = tuple(sorted({int(x) % n for x in D}))
    if not elems:
        raise NotADS("empty set", None)
    counts = difference_counts(n, elems)
    nonzero = counts[1:]
    lam = int(nonzero[0]) if n > 1 else 0
    if np.any(nonzero != lam):
        x = 1 + int(np.argmax(nonzero != lam))
        raise NotADS(f"{x} has {int(counts[x])} representations, 1 has {lam}", (x, int(counts[x]), lam))
    k = len(elems)
    assert k * (k - 1) == lam * (n - 1)
    return DifferenceSet(n, elems, k, lam)


def complement_ds(D: DifferenceSet) -> DifferenceSet:
    rest = [x for x in range(D.n) if x not in D.elements]
    out = verify_ds(D.n, rest)
    assert out.params == (D.n, D.n - D.k, D.n - 2 * D.k + D.lam)
    return out


def trivial_ds(n: int, kind: str) -> DifferenceSet:
    if kind == "singleton":
        return verify_ds(n, [0])
    if kind == "complement-singleton":
        return verify_ds(n, range(1, n))
    if kind == "full":
        return verify_ds(n, range(n))
    raise ValueError(f"unknown trivial kind {kind!r}")


def paley_ds(p: int) -> DifferenceSet:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p % 4 != 3:
        raise BadCongruence(f"{p} is not 3 mod 4")
    return verify_ds(p, quadratic_residues(p))


def singer_ds(r: int, d: int) -> DifferenceSet:
    """Exponents i (mod (r^d-1)/(r-1)) with g^i in the trace-zero hyperplane of GF(r^d)."""
    if not is_prime(r):
        raise NotPrime(f"{r} is not prime")
    if d < 2:
        raise DegreeTooSmall(f"Singer sets need d >= 2, got {d}")
    F = make_field(r, d)
    n = (F.q - 1) // (r - 1)
    D = sorted({i % n for i in range(F.q - 1) if F.trace(F.gpow(i)) == 0})
    return verify_ds(n, D)


@dataclass(frozen=True)
class PaleyClasses:
    p: int
    C1: tuple[int, ...]
    C2: tuple[int, ...]


def paley_classes(p: int) -> PaleyClasses:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p % 4 != 3:
        raise BadCongruence(f"{p} is not 3 mod 4")
    C1 = tuple(quadratic_residues(p))
    C2 = tuple(x for x in range(1, p) if x not in C1)
    u1, u2 = underline(p, C1), underline(p, C2)
    a, b = (p - 3) // 4, (p + 1) // 4
    for ui, uj in ((u1, u2), (u2, u1)):
        assert np.array_equal(cyclic_product(ui, ui), a * ui + b * uj)
    assert np.array_equal(ring_inverse(u1), u2)
    return PaleyClasses(p, C1, C2)


def ds_equivalent(D1: DifferenceSet | tuple, D2: DifferenceSet | tuple, n: int | None = None):
    """Return (u, g) with u*D1 + g = D2, or None; exhaustive over units and shifts."""
    if isinstance(D1, DifferenceSet):
        n = D1.n
        D1 = D1.elements
    if isinstance(D2, DifferenceSet):
        if n is not None and D2.n != n:
            return None
        n = D2.n
        D2 = D2.elements
    target = frozenset(int(x) % n for x in D2)
    if len(target) != len(set(D1)):
        return None
    for u in range(1, n + 1):
        if gcd(u, n) != 1:
            continue
        image = [u * x % n for x in D1]
        for g in range(n):
            if frozenset((y + g) % n for y in image) == target:
                assert frozenset((u * x + g) % n for x in D1) == target
                return (u % n, g)
    return None


def ds_catalog(max_n: int = 31) -> list[DifferenceSet]:
    """Trivial, Paley, Singer and complement DSs with n <= max_n."""
    out: dict[tuple, DifferenceSet] = {}

    def add(D: DifferenceSet):
        out.setdefault((D.n, D.elements), D)

    for n in range(1, max_n + 1):
        for kind in ("singleton", "complement-singleton", "full"):
            if kind == "complement-singleton" and n < 2:
                continue
            add(trivial_ds(n, kind))
    for p in range(3, max_n + 1):
        if is_prime(p) and p % 4 == 3:
            D = paley_ds(p)
            add(D)
            add(D.complement())
    for r in range(2, max_n + 1):
        if not is_prime(r):
            continue
        d = 2
        while (r ** d - 1) // (r - 1) <= max_n:
            D = singer_ds(r, d)
            add(D)
            add(D.complement())
            d += 1
    return sorted(out.values(), key=lambda D: (D.n, D.k, D.elements))
