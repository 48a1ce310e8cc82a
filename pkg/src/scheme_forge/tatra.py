"""Points, form and basic relations of the Tatra scheme on 2-dimensional vectors.

Points of Omega are the orbits Kv of nonzero vectors v in GF(q)^2.  Every
point is stored by the canonical representative of its orbit: among the
vectors xv with x in K, the one that is least when field elements are keyed
by (nonzero, dlog).  Concretely the representatives are

    (0, g^b)          for b in [0, n)           -- the line through (0, 1)
    (g^a, g^a * y)    for a in [0, n), y in F   -- the line through (1, y)

and the global order lists lines contiguously: the (0, 1) line first, then
y = 0, then y = g^0, g^1, ..., and inside a line increasing a.  Point index
``L * n + a`` is therefore ``g^a`` times the base vector of line ``L``; the
scaling relation r_h sends it to ``L * n + (a + h) % n``.

Relation labels: r_g -> g and s_g -> n + g, for g in Z_n = F*/K.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NotPrime, SingularMatrix
from .field import FiniteField, SubgroupK, make_field, subgroup_of_index
from .primes import prime_power

ORDERING_CONVENTION = "tatra-omega/v1:line-major,dlog-keyed-reps"


class Omega:
    """The point set (q+1)n, with the determinant form and relation colors."""

    def __init__(self, F: FiniteField, K: SubgroupK):
        self.F = F
        self.K = K
        self.q = F.q
        self.n = K.n
        self.m = K.m
        nlines = self.q + 1
        # base vectors of the q+1 lines, in line order
        bx = np.ones(nlines, dtype=np.int64)
        by = np.zeros(nlines, dtype=np.int64)
        bx[0], by[0] = 0, 1
        by[1] = 0
        by[2:] = F.exp[: self.q - 1]
        self.base_x = bx
        self.base_y = by
        scal = F.exp[np.arange(self.n)]
        self.v1 = F.mul(np.repeat(bx, self.n), np.tile(scal, nlines))
        self.v2 = F.mul(np.repeat(by, self.n), np.tile(scal, nlines))

    @property
    def size(self) -> int:
        return (self.q + 1) * self.n

    def __len__(self) -> int:
        return self.size

    @property
    def line_count(self) -> int:
        return self.q + 1

    def rep(self, idx: int) -> tuple[int, int]:
        return int(self.v1[idx]), int(self.v2[idx])

    def line_of(self, idx):
        return np.asarray(idx) // self.n if isinstance(idx, np.ndarray) else idx // self.n

    def index(self, v1, v2):
        """Index of the point K(v1, v2); vectorised over arrays."""
        F = self.F
        scalar = not isinstance(v1, np.ndarray) and not isinstance(v2, np.ndarray)
        v1 = np.atleast_1d(np.asarray(v1, dtype=np.int64))
        v2 = np.atleast_1d(np.asarray(v2, dtype=np.int64))
        v1, v2 = np.broadcast_arrays(v1, v2)
        if np.any((v1 == 0) & (v2 == 0)):
            raise ValueError("zero vector has no point")
        on_inf = v1 == 0
        safe1 = np.where(on_inf, 1, v1)
        y = F.mul(v2, F.inv(safe1))
        line = np.where(y == 0, 1, 2 + F.log[y])
        a = F.log[safe1] % self.n
        line = np.where(on_inf, 0, line)
        a = np.where(on_inf, F.log[np.where(on_inf, v2, 1)] % self.n, a)
        out = line * self.n + a
        return int(out[0]) if scalar else out

    def canonical_rep(self, v1: int, v2: int) -> tuple[int, int]:
        """Least K-multiple of (v1, v2) under the (nonzero, dlog) key, by brute force."""
        F = self.F

        def key(x):
            return (0, 0) if x == 0 else (1, F.dlog(x))

        best = min(((F.mul(x, v1), F.mul(x, v2)) for x in self.K.elements()),
                   key=lambda w: (key(w[0]), key(w[1])))
        return best

    def form(self, alpha: int, beta: int) -> int | None:
        """<alpha, beta> as a label in Z_n, or None when the determinant is zero."""
        F = self.F
        u1, u2 = self.rep(alpha)
        w1, w2 = self.rep(beta)
        det = F.sub(F.mul(u1, w2), F.mul(u2, w1))
        return None if det == 0 else F.dlog(det) % self.n

    def form_of_vectors(self, u, w) -> int | None:
        F = self.F
        det = F.sub(F.mul(u[0], w[1]), F.mul(u[1], w[0]))
        return None if det == 0 else F.dlog(det) % self.n

    def scale(self, g: int, idx):
        """The point g * alpha for g in C."""
        idx = np.asarray(idx) if isinstance(idx, np.ndarray) else idx
        return (idx // self.n) * self.n + (idx % self.n + g) % self.n

    @cached_property
    def line_form(self) -> np.ndarray:
        """Coset label of det(base_L1, base_L2) for distinct lines; -1 on the diagonal."""
        F = self.F
        bx, by = self.base_x, self.base_y
        det = F.sub(F.mul(bx[:, None], by[None, :]), F.mul(by[:, None], bx[None, :]))
        out = np.where(det == 0, -1, F.log[det] % self.n)
        assert np.all((out == -1) == np.eye(len(bx), dtype=bool))
        return out

    @cached_property
    def colors(self) -> np.ndarray:
        """Relation label of every ordered pair: r_g -> g, s_g -> n + g."""
        n = self.n
        idx = np.arange(self.size)
        lines, a = idx // n, idx % n
        W = self.line_form[lines[:, None], lines[None, :]]
        same = lines[:, None] == lines[None, :]
        s_lab = n + (a[:, None] + a[None, :] + W) % n
        r_lab = (a[None, :] - a[:, None]) % n
        colors = np.where(same, r_lab, s_lab).astype(np.int32)
        colors.setflags(write=False)
        return colors

    def label_name(self, label: int) -> str:
        return f"r{label}" if label < self.n else f"s{label - self.n}"

    def semilinear_perm(self, T, j: int = 0) -> np.ndarray:
        """Permutation alpha -> K(T v^sigma) for sigma = Frobenius^j."""
        F = self.F
        (a, b), (c, d) = T
        if F.sub(F.mul(a, d), F.mul(b, c)) == 0:
            raise SingularMatrix(f"det({T}) = 0")
        x = F.frobenius(self.v1, j)
        y = F.frobenius(self.v2, j)
        w1 = F.add(F.mul(a, x), F.mul(b, y))
        w2 = F.add(F.mul(c, x), F.mul(d, y))
        return self.index(w1, w2)

    def semilinear_label_map(self, T, j: int = 0) -> np.ndarray:
        """Predicted image of each relation label under (T, sigma^j)."""
        F = self.F
        (a, b), (c, d) = T
        det = F.sub(F.mul(a, d), F.mul(b, c))
        if det == 0:
            raise SingularMatrix(f"det({T}) = 0")
        n = self.n
        mult = pow(F.r, j, n) if n > 1 else 0
        shift = F.dlog(det) % n
        g = np.arange(n)
        return np.concatenate([(g * mult) % n, n + (shift + g * mult) % n])


@dataclass(frozen=True)
class Relation:
    label: int
    name: str
    adjacency: np.ndarray  # bool, v x v
    perm: np.ndarray | None = None  # for thin relations: alpha -> the unique beta

    @property
    def arc_count(self) -> int:
        return int(self.adjacency.sum())

    @property
    def valency(self) -> int:
        return int(self.adjacency[0].sum())


@dataclass(frozen=True)
class LineSystem:
    lines: list[np.ndarray]
    line_of: np.ndarray

    def __len__(self):
        return len(self.lines)


def build_omega(F: FiniteField, K: SubgroupK) -> Omega:
    return Omega(F, K)


def tatra_omega(q: int, n: int) -> Omega:
    """Convenience: Omega for the field of order q and subgroup of index n."""
    rd = prime_power(q)
    if rd is None:
        raise NotPrime(f"{q} is not a prime power")
    F = make_field(*rd)
    return Omega(F, subgroup_of_index(F, n))


def relation(om: Omega, kind: str, g: int) -> Relation:
    if kind not in ("r", "s"):
        raise ValueError(f"kind must be 'r' or 's', got {kind!r}")
    g %= om.n
    label = g if kind == "r" else om.n + g
    adj = om.colors == label
    perm = om.scale(g, np.arange(om.size)) if kind == "r" else None
    return Relation(label, om.label_name(label), adj, perm)


def line_system(om: Omega) -> LineSystem:
    idx = np.arange(om.size)
    return LineSystem([idx[L * om.n:(L + 1) * om.n] for L in range(om.line_count)], idx // om.n)


def apply_semilinear(om: Omega, T, j: int = 0) -> np.ndarray:
    return om.semilinear_perm(T, j)


def thin_matrix(om: Omega, coeffs) -> np.ndarray:
    """A_xi = sum_g xi_g A_g as an integer matrix."""
    table = np.concatenate([np.asarray(coeffs, dtype=np.int64), np.zeros(om.n, dtype=np.int64)])
    return table[om.colors]


def form_matrix(om: Omega, coeffs) -> np.ndarray:
    """B_xi = sum_g xi_g B_g as an integer matrix."""
    table = np.concatenate([np.zeros(om.n, dtype=np.int64), np.asarray(coeffs, dtype=np.int64)])
    return table[om.colors]


def tatra_scheme(om: Omega):
    from .scheme import Scheme

    names = tuple(om.label_name(i) for i in range(2 * om.n))
    return Scheme(om.colors, names, {"kind": "tatra", "q": om.q, "n": om.n, "m": om.m})


def _mat(x: np.ndarray) -> np.ndarray:
    return x.astype(np.float64)


def check_product_identities(om: Omega) -> dict[str, bool]:
    """The five basic-relation identities of the Tatra scheme, as exact matrix equations.

    (1) A_h A_g = A_g A_h = A_{h+g}
    (2) A_h B_g = B_{-h+g},  B_g A_h = B_{g+h}
    (3) B_h B_g = q A_{-h+g} + m (J - A_C)
    (4) valencies 1 and q
    (5) A_g^T = A_{-g},  B_g^T = B_g
    Products are float64 matmuls of 0/1 matrices, exact for v < 2^53.
    """
    n, q, m = om.n, om.q, om.m
    C = om.colors
    A = [_mat(C == g) for g in range(n)]
    B = [_mat(C == n + g) for g in range(n)]
    J = np.ones_like(A[0])
    AC = _mat(C < n)
    ok = {k: True for k in ("thin_products", "mixed_products", "form_products", "valencies", "transposes")}
    for h in range(n):
        for g in range(n):
            AhAg = A[h] @ A[g]
            if not (np.array_equal(AhAg, A[(h + g) % n]) and np.array_equal(AhAg, A[g] @ A[h])):
                ok["thin_products"] = False
            if not np.array_equal(A[h] @ B[g], B[(g - h) % n]) or not np.array_equal(B[g] @ A[h], B[(g + h) % n]):
                ok["mixed_products"] = False
            if not np.array_equal(B[h] @ B[g], q * A[(g - h) % n] + m * (J - AC)):
                ok["form_products"] = False
    for g in range(n):
        if not (np.all(A[g].sum(axis=1) == 1) and np.all(B[g].sum(axis=1) == q)):
            ok["valencies"] = False
        if not (np.array_equal(A[g].T, A[(-g) % n]) and np.array_equal(B[g].T, B[g])):
            ok["transposes"] = False
    return ok


def check_group_ring_identities(om: Omega, xi, eta) -> dict[str, bool]:
    """Products of A_xi, B_eta against the group-ring predictions over Z[C]."""
    from .sring import augmentation, cyclic_product, ring_inverse

    n, q, m = om.n, om.q, om.m
    xi = np.asarray(xi, dtype=np.int64)
    eta = np.asarray(eta, dtype=np.int64)
    Ax, Ae = _mat(thin_matrix(om, xi)), _mat(thin_matrix(om, eta))
    Bx, Be = _mat(form_matrix(om, xi)), _mat(form_matrix(om, eta))
    J = np.ones_like(Ax)
    AC = _mat(om.colors < n)
    xe = cyclic_product(xi, eta)
    xinv_e = cyclic_product(ring_inverse(xi), eta)
    return {
        "AA": bool(np.array_equal(Ax @ Ae, thin_matrix(om, xe))),
        "AB": bool(np.array_equal(Ax @ Be, form_matrix(om, xinv_e))),
        "BA": bool(np.array_equal(Be @ Ax, form_matrix(om, xe))),
        "BB": bool(np.array_equal(Bx @ Be, q * thin_matrix(om, xinv_e) + m * augmentation(xinv_e) * (J - AC))),
    }
