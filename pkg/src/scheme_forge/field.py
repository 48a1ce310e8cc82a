"""Arithmetic in GF(r^d) backed by discrete-logarithm tables.

Elements are encoded as integers ``sum(c_i * r**i)`` where ``c_i`` is the
coefficient of ``x**i``.  The integer order of this encoding is the
"coefficient-lex" order used to pick the modulus and the generator, so that
x^3+x+1 (encoded 11) precedes x^3+x^2+1 (encoded 13).

All array-valued helpers accept numpy integer arrays of any shape.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd

import numpy as np

from .errors import (
    DegreeZero,
    DivisionByZero,
    FieldTooLarge,
    NotDivisor,
    NotPrime,
    ParityCondition,
    ZeroElement,
)
from .primes import is_prime, prime_factors

DEFAULT_FIELD_CAP = 1 << 20


# -- polynomial helpers over Z_r, coefficient lists low degree first ---------

def _poly_mod(a: list[int], m: list[int], r: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], r - 2, r) if r > 2 else 1
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c = a[-1] * inv_lead % r
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % r
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(m: list[int], r: int) -> bool:
    d = len(m) - 1
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for tail in product(range(r), repeat=k):
            divisor = list(tail) + [1]
            if not _poly_mod(m, divisor, r):
                return False
    return True


def _encode(coeffs, r: int) -> int:
    return sum(int(c) * r ** i for i, c in enumerate(coeffs))


def _decode(x: int, r: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        out.append(x % r)
        x //= r
    return out


def _least_irreducible(r: int, d: int) -> list[int]:
    # monic degree-d polynomials in increasing integer encoding
    for code in range(r ** d):
        m = _decode(code, r, d) + [1]
        if m[0] == 0 and d > 1:
            continue
        if _is_irreducible(m, r):
            return m
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True, eq=False)
class FiniteField:
    """GF(r^d) with a fixed modulus, primitive element and dlog table."""

    r: int
    d: int
    modulus_poly: tuple[int, ...]
    generator: int
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    digits: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.r ** self.d

    @property
    def order(self) -> int:
        return self.q

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.r, self.d, self.modulus_poly) == (
            other.r,
            other.d,
            other.modulus_poly,
        )

    def __hash__(self):
        return hash((self.r, self.d, self.modulus_poly))

    def modulus_str(self) -> str:
        terms = []
        for i, c in reversed(list(enumerate(self.modulus_poly))):
            if not c:
                continue
            coef = "" if c == 1 and i else str(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(coef + ("*" if coef and mono else "") + mono)
        return " + ".join(terms)

    # -- encoding ---------------------------------------------------------

    def coeffs(self, x: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.digits[x])

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs) + [0] * (self.d - len(coeffs))
        if len(coeffs) != self.d or any(not 0 <= c < self.r for c in coeffs):
            raise ValueError(f"bad coefficient vector {coeffs!r}")
        return _encode(coeffs, self.r)

    def elements(self) -> range:
        return range(self.q)

    def __call__(self, x: int) -> "FieldElement":
        """Wrap an encoded element; negative ints mean additive inverses."""
        x = int(x)
        return FieldElement(self, x % self.q if x >= 0 else self.neg(-x % self.q))

    # -- vectorised arithmetic ---------------------------------------------

    def _enc(self, dig: np.ndarray) -> np.ndarray:
        weights = self.r ** np.arange(self.d, dtype=np.int64)
        return dig @ weights

    def add(self, x, y):
        if self.d == 1:
            return (np.asarray(x) + np.asarray(y)) % self.r if _is_arr(x, y) else (x + y) % self.r
        if self.r == 2:
            return np.bitwise_xor(x, y) if _is_arr(x, y) else x ^ y
        out = self._enc((self.digits[x] + self.digits[y]) % self.r)
        return out if _is_arr(x, y) else int(out)

    def neg(self, x):
        if self.r == 2:
            return x
        if self.d == 1:
            return (-np.asarray(x)) % self.r if _is_arr(x) else (-x) % self.r
        out = self._enc((-self.digits[x]) % self.r)
        return out if _is_arr(x) else int(out)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if _is_arr(x, y):
            x = np.asarray(x, dtype=np.int64)
            y = np.asarray(y, dtype=np.int64)
            s = (self.log[x] + self.log[y]) % (self.q - 1)
            return np.where((x == 0) | (y == 0), 0, self.exp[s])
        if x == 0 or y == 0:
            return 0
        return int(self.exp[(int(self.log[x]) + int(self.log[y])) % (self.q - 1)])

    def inv(self, x):
        if _is_arr(x):
            x = np.asarray(x)
            if np.any(x == 0):
                raise DivisionByZero("inverse of zero")
            return self.exp[(-self.log[x]) % (self.q - 1)]
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return int(self.exp[(-int(self.log[x])) % (self.q - 1)])

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[x]) * e) % (self.q - 1)])

    def dlog(self, x: int) -> int:
        if x == 0:
            raise ZeroElement("dlog of zero")
        return int(self.log[x])

    def gpow(self, i: int) -> int:
        """generator ** i"""
        return int(self.exp[i % (self.q - 1)])

    def frobenius(self, x, j: int = 1):
        """x ** (r ** j)."""
        e = self.r ** (j % self.d)
        if _is_arr(x):
            x = np.asarray(x, dtype=np.int64)
            return np.where(x == 0, 0, self.exp[(self.log[x] * e) % (self.q - 1)])
        return self.pow(x, e)

    def trace(self, x: int) -> int:
        """Absolute trace to GF(r), returned as an integer in [0, r)."""
        t = 0
        y = x
        for _ in range(self.d):
            t = self.add(t, y)
            y = self.pow(y, self.r)
        assert t < self.r
        return t

    def element_order(self, x: int) -> int:
        if x == 0:
            raise ZeroElement("order of zero")
        return (self.q - 1) // gcd(int(self.log[x]), self.q - 1)


def _is_arr(*xs) -> bool:
    return any(isinstance(x, np.ndarray) for x in xs)


@dataclass(frozen=True)
class FieldElement:
    """Operator-friendly wrapper around an encoded element."""

    F: FiniteField
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.F.coeffs(self.value)

    def _v(self, other) -> int:
        if isinstance(other, FieldElement):
            return other.value
        return self.F(other).value

    def __add__(self, other):
        return FieldElement(self.F, self.F.add(self.value, self._v(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.F, self.F.sub(self.value, self._v(other)))

    def __rsub__(self, other):
        return FieldElement(self.F, self.F.sub(self._v(other), self.value))

    def __neg__(self):
        return FieldElement(self.F, self.F.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.F, self.F.mul(self.value, self._v(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.F, self.F.div(self.value, self._v(other)))

    def __pow__(self, e: int):
        return FieldElement(self.F, self.F.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.F, self.F.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.F == other.F and self.value == other.value
        if isinstance(other, int):
            return self.value == self.F(other).value
        return NotImplemented

    def __hash__(self):
        return hash((self.F, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"GF({self.F.q})<{self.coeffs}>"


def make_field(r: int, d: int = 1, cap: int = DEFAULT_FIELD_CAP) -> FiniteField:
    if not is_prime(r):
        raise NotPrime(f"{r} is not prime")
    if d < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {d}")
    q = r ** d
    if q > cap:
        raise FieldTooLarge(f"q = {q} exceeds the field cap {cap}")
    digits = (np.arange(q, dtype=np.int64)[:, None] // r ** np.arange(d, dtype=np.int64)) % r

    if d == 1:
        modulus = [0, 1]  # x, the reduction is trivial
        mul = lambda a, b: a * b % r  # noqa: E731
    else:
        modulus = _least_irreducible(r, d)

        def mul(a: int, b: int) -> int:
            pa, pb = _decode(a, r, d), _decode(b, r, d)
            prod = [0] * (2 * d - 1)
            for i, ai in enumerate(pa):
                if ai:
                    for j, bj in enumerate(pb):
                        prod[i + j] = (prod[i + j] + ai * bj) % r
            return _encode(_poly_mod(prod, modulus, r), r)

    def power(a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = mul(result, base)
            base = mul(base, base)
            e >>= 1
        return result

    cofactors = [(q - 1) // p for p in prime_factors(q - 1)] if q > 2 else []
    generator = next(x for x in range(1, q) if all(power(x, c) != 1 for c in cofactors))

    exp = np.zeros(max(q - 1, 1), dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    y = 1
    for i in range(q - 1):
        exp[i] = y
        log[y] = i
        y = mul(y, generator)
    assert y == 1 and np.all(log[1:] >= 0), "generator is not primitive"
    return FiniteField(r, d, tuple(modulus), generator, exp, log, digits)


# -- the index-n subgroup K and the quotient C = F*/K ------------------------


@dataclass(frozen=True)
class SubgroupK:
    """K = <g^n>, the unique subgroup of F* of index n."""

    F: FiniteField
    n: int

    @property
    def m(self) -> int:
        return (self.F.q - 1) // self.n

    def contains(self, x: int) -> bool:
        return x != 0 and self.F.dlog(x) % self.n == 0

    def elements(self) -> list[int]:
        return [self.F.gpow(self.n * i) for i in range(self.m)]


def subgroup_of_index(F: FiniteField, n: int) -> SubgroupK:
    q = F.q
    if n < 1 or (q - 1) % n:
        raise NotDivisor(f"{n} does not divide q-1 = {q - 1}")
    if (q * (q - 1) // n) % 2:
        raise ParityCondition(f"q(q-1)/n = {q * (q - 1) // n} is odd")
    return SubgroupK(F, n)


def coset_of(F: FiniteField, K: SubgroupK, x):
    """Label of Kx in C = Z_n; vectorised over arrays (zeros raise)."""
    if _is_arr(x):
        x = np.asarray(x)
        if np.any(x == 0):
            raise ZeroElement("coset of zero")
        return F.log[x] % K.n
    if x == 0:
        raise ZeroElement("coset of zero")
    return F.dlog(x) % K.n


def sigma_zero(F: FiniteField, n: int) -> list[int]:
    """Frobenius exponents j acting trivially on C, i.e. r^j = 1 (mod n)."""
    if n < 1 or (F.q - 1) % n:
        raise NotDivisor(f"{n} does not divide q-1 = {F.q - 1}")
    return [j for j in range(F.d) if pow(F.r, j, n) == 1 % n]
