"""Group rings over C_n and D_2n, Schur rings, and fusions of Tatra schemes.

The dihedral group is C_n x| <b> with b x b = -x.  Element ``(eps, x)`` stands
for ``b^eps * x`` and is encoded as the integer ``eps * n + x``; the product is

    (e1, x1)(e2, x2) = (e1 xor e2, (-1)^e2 * x1 + x2).

This encoding coincides with the Tatra relation labels (r_g -> g, s_g -> n+g),
which is what makes the fusion of Theorem-style S-ring partitions a relabelling.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from .errors import CNotASubgroup, SRingViolation


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    name: str
    table: np.ndarray  # table[a, b] = a * b
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.table)

    @cached_property
    def inverse(self) -> np.ndarray:
        return np.argmax(self.table == self.identity, axis=1)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])


def cyclic_group(n: int) -> FiniteGroup:
    x = np.arange(n)
    return FiniteGroup(f"C{n}", (x[:, None] + x[None, :]) % n)


def dihedral_group(n: int) -> FiniteGroup:
    g = np.arange(2 * n)
    e, x = g // n, g % n
    sign = np.where(e[None, :] == 1, -1, 1)
    prod_x = (sign * x[:, None] + x[None, :]) % n
    prod_e = e[:, None] ^ e[None, :]
    return FiniteGroup(f"D{2 * n}", prod_e * n + prod_x)


# -- group ring elements are integer coefficient vectors ---------------------


def underline(G: FiniteGroup | int, X) -> np.ndarray:
    size = G if isinstance(G, int) else G.order
    out = np.zeros(size, dtype=np.int64)
    for x in X:
        out[x] += 1
    return out


def group_ring_product(G: FiniteGroup, xi, eta) -> np.ndarray:
    xi = np.asarray(xi, dtype=np.int64)
    eta = np.asarray(eta, dtype=np.int64)
    out = np.zeros(G.order, dtype=np.int64)
    np.add.at(out, G.table.ravel(), np.outer(xi, eta).ravel())
    return out


def cyclic_product(xi, eta) -> np.ndarray:
    """Convolution in Z[C_n]."""
    xi = np.asarray(xi, dtype=np.int64)
    eta = np.asarray(eta, dtype=np.int64)
    n = len(xi)
    out = np.zeros(n, dtype=np.int64)
    for h in np.flatnonzero(xi):
        out += xi[h] * np.roll(eta, h)
    return out


def ring_inverse(xi, G: FiniteGroup | None = None) -> np.ndarray:
    """xi^(-1): coefficient of g moved to g^-1."""
    xi = np.asarray(xi, dtype=np.int64)
    if G is None:
        n = len(xi)
        return xi[(-np.arange(n)) % n]
    out = np.zeros_like(xi)
    out[G.inverse] = xi
    return out


def augmentation(xi) -> int:
    return int(np.sum(xi))


# -- S-rings -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SRing:
    group: FiniteGroup
    basic_sets: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basic_sets)

    @cached_property
    def class_of(self) -> np.ndarray:
        out = np.full(self.group.order, -1, dtype=np.int64)
        for i, X in enumerate(self.basic_sets):
            out[list(X)] = i
        return out


def make_sring(G: FiniteGroup, sets) -> SRing:
    sets = tuple(sorted(tuple(sorted(int(x) for x in X)) for X in sets))
    return SRing(G, sets)


@dataclass
class SRingCertificate:
    rank: int
    structure: np.ndarray  # structure[i, j, k]: coefficient of X_k in X_i X_j


def verify_sring(A: SRing) -> SRingCertificate:
    G = A.group
    seen = np.zeros(G.order, dtype=np.int64)
    for X in A.basic_sets:
        if not X:
            raise SRingViolation("empty basic set", ())
        seen[list(X)] += 1
    if np.any(seen != 1):
        raise SRingViolation("basic sets do not partition the group", np.flatnonzero(seen != 1).tolist())
    if (G.identity,) not in A.basic_sets:
        raise SRingViolation("{e} is not a basic set", A.basic_sets[int(A.class_of[G.identity])])
    as_sets = {frozenset(X) for X in A.basic_sets}
    for X in A.basic_sets:
        inv = frozenset(int(G.inverse[x]) for x in X)
        if inv not in as_sets:
            raise SRingViolation("basic set not closed under inverse", X)
    k = A.rank
    structure = np.zeros((k, k, k), dtype=np.int64)
    sums = [underline(G, X) for X in A.basic_sets]
    for i in range(k):
        for j in range(k):
            prod = group_ring_product(G, sums[i], sums[j])
            for t, Z in enumerate(A.basic_sets):
                vals = prod[list(Z)]
                if np.any(vals != vals[0]):
                    raise SRingViolation(
                        f"product of basic sets {i} and {j} is not constant on basic set {t}", (i, j, t)
                    )
                structure[i, j, t] = vals[0]
    return SRingCertificate(k, structure)


def unit_orbits(n: int, multipliers) -> list[tuple[int, ...]]:
    """Orbits on Z_n of the multiplicative group generated by ``multipliers``."""
    mults = {1 % n} | {u % n for u in multipliers}
    for u in mults:
        if gcd(u, n) != 1 and n > 1:
            raise ValueError(f"{u} is not a unit mod {n}")
    group = {1 % n}
    frontier = [1 % n]
    while frontier:
        x = frontier.pop()
        for u in mults:
            y = x * u % n
            if y not in group:
                group.add(y)
                frontier.append(y)
    seen, orbits = set(), []
    for x in range(n):
        if x not in seen:
            orb = tuple(sorted({x * u % n for u in group}))
            seen.update(orb)
            orbits.append(orb)
    return orbits


def cyclotomic_sring(n: int, multipliers, dihedral: bool = True) -> SRing:
    """Orbit partition of M = <multipliers> <= Aut(C_n), extended to D_2n by (eps, x) -> (eps, ux)."""
    orbits = unit_orbits(n, multipliers)
    if not dihedral:
        return make_sring(cyclic_group(n), orbits)
    sets = list(orbits) + [tuple(n + x for x in orb) for orb in orbits]
    return make_sring(dihedral_group(n), sets)


def finest_sring(n: int) -> SRing:
    return make_sring(dihedral_group(n), [(x,) for x in range(2 * n)])


def paley_sring(p: int) -> SRing:
    """Rank-6 partition {e}, C1, C2, {b}, bC1, bC2 for p = 3 mod 4."""
    from .designs import paley_classes

    pc = paley_classes(p)
    sets = [(0,), pc.C1, pc.C2, (p,), tuple(p + x for x in pc.C1), tuple(p + x for x in pc.C2)]
    return make_sring(dihedral_group(p), sets)


def ds_sring(n: int, D) -> SRing:
    """Rank-4 partition {e}, C#, bD, b(C minus D) built from a difference set D."""
    D = sorted(set(int(x) % n for x in D))
    rest = [x for x in range(n) if x not in D]
    sets = [(0,), tuple(range(1, n)), tuple(n + x for x in D)]
    if rest:
        sets.append(tuple(n + x for x in rest))
    return make_sring(dihedral_group(n), [s for s in sets if s])


def fuse_scheme(X0, A: SRing, verify: bool = True):
    """The fusion of a Tatra scheme whose relations are r_X, s_Y for X, bY basic sets."""
    from .scheme import Scheme, verify_scheme

    n = X0.rank // 2
    if A.group.order != 2 * n:
        raise ValueError(f"S-ring over a group of order {A.group.order}, scheme needs {2 * n}")
    names = []
    for X in A.basic_sets:
        kinds = {x >= n for x in X}
        if len(kinds) != 1:
            raise CNotASubgroup(f"basic set {X} meets both C and bC")
        kind = "s" if kinds.pop() else "r"
        names.append(kind + "{" + ",".join(str(x % n) for x in X) + "}")
    if verify:
        verify_sring(A)
    colors = A.class_of[np.asarray(X0.colors)].astype(np.int32)
    colors.setflags(write=False)
    fused = Scheme(colors, tuple(names), dict(X0.meta, fused_from=[list(X) for X in A.basic_sets]))
    if verify:
        verify_scheme(fused)
    return fused
