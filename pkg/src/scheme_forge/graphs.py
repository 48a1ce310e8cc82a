"""DSRGs and DDGs as unions of Tatra relations, with exact parameter certificates.

Two-path counts are computed by AND-ing packed bit rows and popcounting
(``two_path_counts``); a float matmul of the 0/1 matrix serves as the
independent oracle on graphs with at most ``LIMITS.matmul_oracle`` vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .config import LIMITS, chunked_map, row_chunks
from .designs import DifferenceSet, paley_classes
from .errors import (
    BadParameters,
    Disconnected,
    MismatchedN,
    NotDDG,
    NotDRG,
    NotDSRG,
    TooLarge,
)
from .primes import is_prime, prime_power
from .tatra import Omega


@dataclass(frozen=True, eq=False)
class ColoredDigraph:
    adj: np.ndarray  # bool, adj[a, b] means an arc a -> b
    vertex_colors: np.ndarray | None = None
    classes: np.ndarray | None = None  # class id per vertex, for DDG checks
    name: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def vertex_count(self) -> int:
        return self.adj.shape[0]

    @property
    def arc_count(self) -> int:
        return int(self.adj.sum())

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.adj, self.adj.T))

    def has_loops(self) -> bool:
        return bool(np.any(np.diagonal(self.adj)))

    def permuted(self, perm) -> "ColoredDigraph":
        """Relabel vertex a as perm[a]."""
        perm = np.asarray(perm)
        inv = np.argsort(perm)
        adj = self.adj[np.ix_(inv, inv)]
        vc = None if self.vertex_colors is None else self.vertex_colors[inv]
        cl = None if self.classes is None else self.classes[inv]
        return ColoredDigraph(adj, vc, cl, self.name, dict(self.meta))


# -- bit-packed two-path counting ---------------------------------------------


def _packed(rows: np.ndarray) -> np.ndarray:
    bits = np.packbits(rows.astype(bool), axis=1)
    pad = (-bits.shape[1]) % 8
    if pad:
        bits = np.pad(bits, ((0, 0), (0, pad)))
    return np.ascontiguousarray(bits).view(np.uint64)


def two_path_counts(adj: np.ndarray) -> np.ndarray:
    """P[a, b] = #{c : a -> c -> b}, via popcount of out(a) AND in(b)."""
    v = adj.shape[0]
    if v > LIMITS.exhaustive_graph:
        raise TooLarge(f"{v} vertices exceeds the exhaustive-verification cap {LIMITS.exhaustive_graph}")
    out_bits = _packed(adj)
    in_bits = _packed(adj.T)

    def rows(chunk):
        block = out_bits[chunk.start:chunk.stop]
        return np.bitwise_count(block[:, None, :] & in_bits[None, :, :]).sum(axis=2, dtype=np.int64)

    # keep each AND block near 32 MiB
    per_chunk = max(1, (1 << 22) // max(1, v * out_bits.shape[1]))
    return np.concatenate(chunked_map(rows, row_chunks(v, per_chunk)), axis=0)


def two_path_counts_matmul(adj: np.ndarray) -> np.ndarray:
    """Integer A^2; the secondary oracle for small graphs."""
    if adj.shape[0] > LIMITS.matmul_oracle:
        raise TooLarge(f"integer A^2 oracle is capped at {LIMITS.matmul_oracle} vertices")
    A = adj.astype(np.int64)
    return A @ A


# -- constructions ---------------------------------------------------------------


def dsrg_condition(p: int, q: int) -> bool:
    flag = 4 * (q - 1) == p * (p - 3)
    if flag:
        rd = prime_power(q)
        assert rd is not None and rd[1] % 2 == 1, f"q = {q} = r^d with d even"
    return flag


def build_dsrg(om: Omega, i: int, g: int) -> ColoredDigraph:
    """Arc set s_g union r_{C_i}."""
    p = om.n
    if i not in (1, 2):
        raise BadParameters(f"i must be 1 or 2, got {i}")
    if not (is_prime(p) and p % 4 == 3):
        raise BadParameters(f"n = {p} must be a prime = 3 mod 4")
    pc = paley_classes(p)
    Ci = pc.C1 if i == 1 else pc.C2
    C = om.colors
    adj = (C == p + g % p) | np.isin(C, Ci)
    assert not np.any(np.diagonal(adj))
    return ColoredDigraph(adj, name=f"Gamma({i},{g % p})", meta={"q": om.q, "p": p, "i": i, "g": g % p})


def build_ddg(om: Omega, D: DifferenceSet) -> ColoredDigraph:
    """Edge set s_D; the class partition is the line system."""
    if D.n != om.n:
        raise MismatchedN(f"difference set lives in Z_{D.n}, scheme has n = {om.n}")
    adj = np.isin(om.colors, [om.n + x for x in D.elements])
    assert not np.any(np.diagonal(adj))
    classes = np.arange(om.size) // om.n
    return ColoredDigraph(adj, classes=classes, name=f"Delta{tuple(D.elements)}",
                          meta={"q": om.q, "n": om.n, "D": list(D.elements)})


# -- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class DsrgParams:
    v: int
    k: int
    t: int
    lam: int
    mu: int

    @property
    def is_srg(self) -> bool:
        return self.t == self.k

    def as_tuple(self) -> tuple[int, ...]:
        return (self.v, self.k, self.t, self.lam, self.mu)

    def feasible(self) -> bool:
        return self.k * (self.k + self.mu - self.lam) == self.t + (self.v - 1) * self.mu


@dataclass(frozen=True)
class DdgParams:
    v: int
    k: int
    lam1: int | None
    lam2: int | None
    m: int
    n: int

    @property
    def proper(self) -> bool:
        return self.m > 1 and self.n > 1 and self.lam1 != self.lam2

    def as_tuple(self) -> tuple:
        return (self.v, self.k, self.lam1, self.lam2, self.m, self.n)


def _regularity(adj: np.ndarray) -> int:
    out_deg = adj.sum(axis=1)
    in_deg = adj.sum(axis=0)
    k = int(out_deg[0])
    if np.any(out_deg != k):
        a = int(np.argmax(out_deg != k))
        raise NotDSRG(f"out-degree {int(out_deg[a])} at {a}, {k} at 0", ("out-degree", a))
    if np.any(in_deg != k):
        a = int(np.argmax(in_deg != k))
        raise NotDSRG(f"in-degree {int(in_deg[a])} at {a}, out-degree {k}", ("in-degree", a))
    return k


def _constant(P: np.ndarray, mask: np.ndarray, what: str, exc):
    vals = P[mask]
    if vals.size == 0:
        return None
    ref = int(vals[0])
    if np.any(vals != ref):
        pairs = np.argwhere(mask)
        first = tuple(int(x) for x in pairs[0])
        bad = tuple(int(x) for x in pairs[int(np.argmax(vals != ref))])
        raise exc(f"{what}: {int(P[bad])} at {bad} but {ref} at {first}", (bad, first))
    return ref


def verify_dsrg(G: ColoredDigraph | np.ndarray, counts: np.ndarray | None = None) -> DsrgParams:
    adj = G.adj if isinstance(G, ColoredDigraph) else np.asarray(G, dtype=bool)
    v = adj.shape[0]
    if np.any(np.diagonal(adj)):
        raise NotDSRG("graph has loops", ("loop", int(np.argmax(np.diagonal(adj)))))
    k = _regularity(adj)
    P = two_path_counts(adj) if counts is None else counts
    eye = np.eye(v, dtype=bool)
    t = _constant(P, eye, "t (closed 2-paths)", NotDSRG)
    lam = _constant(P, adj, "lambda (2-paths along arcs)", NotDSRG)
    mu = _constant(P, ~adj & ~eye, "mu (2-paths along non-arcs)", NotDSRG)
    params = DsrgParams(v, k, t, 0 if lam is None else lam, 0 if mu is None else mu)
    return params


def verify_ddg(G: ColoredDigraph | np.ndarray, classes=None, counts: np.ndarray | None = None) -> DdgParams:
    """Common-neighbour counts within and across classes of an undirected graph."""
    adj = G.adj if isinstance(G, ColoredDigraph) else np.asarray(G, dtype=bool)
    if classes is None:
        classes = G.classes if isinstance(G, ColoredDigraph) else None
    if classes is None:
        raise ValueError("a class partition is required")
    classes = np.asarray(classes)
    v = adj.shape[0]
    if not np.array_equal(adj, adj.T):
        a, b = map(int, np.argwhere(adj != adj.T)[0])
        raise NotDDG("graph is not symmetric", ("asymmetric", (a, b)))
    if np.any(np.diagonal(adj)):
        raise NotDDG("graph has loops", ("loop", int(np.argmax(np.diagonal(adj)))))
    deg = adj.sum(axis=1)
    k = int(deg[0])
    if np.any(deg != k):
        a = int(np.argmax(deg != k))
        raise NotDDG(f"degree {int(deg[a])} at {a}, {k} at 0", ("degree", a))
    sizes = np.bincount(classes)
    sizes = sizes[sizes > 0]
    if np.any(sizes != sizes[0]):
        raise NotDDG("classes have different sizes", ("classes", sizes.tolist()))
    n, m = int(sizes[0]), len(sizes)
    P = two_path_counts(adj) if counts is None else counts
    eye = np.eye(v, dtype=bool)
    same = classes[:, None] == classes[None, :]
    lam1 = _constant(P, same & ~eye, "lambda1 (same class)", NotDDG)
    lam2 = _constant(P, ~same, "lambda2 (different classes)", NotDDG)
    return DdgParams(v, k, lam1, lam2, m, n)


def predicted_dsrg(p: int, q: int) -> DsrgParams:
    return DsrgParams((q + 1) * p, q + (p - 1) // 2, q, (q - 1) // p, (q - 1) // p + 1)


def predicted_ddg(q: int, n: int, k: int, lam: int) -> DdgParams:
    return DdgParams(n * (q + 1), k * q, lam * q, k * k * (q - 1) // n, q + 1, n)


def srg_condition(q: int, n: int, k: int, lam: int):
    """(flag, predicted SRG parameters (v, k, lambda, mu) or None)."""
    flag = lam * q * n == k * k * (q - 1)
    return flag, ((n * (q + 1), k * q, lam * q, lam * q) if flag else None)


def check_sd_square(om: Omega, D: DifferenceSet, counts: np.ndarray | None = None) -> bool:
    """B_D^2 = kq A_e + lambda q A_{C#} + k^2 m B_C, entrywise."""
    n, q, m = om.n, om.q, om.m
    C = om.colors
    if counts is None:
        counts = two_path_counts(np.isin(C, [n + x for x in D.elements]))
    rhs = np.where(C == 0, D.k * q, np.where(C < n, D.lam * q, D.k * D.k * m))
    return bool(np.array_equal(counts, rhs))


# -- distance regularity -------------------------------------------------------


@dataclass(frozen=True)
class DrgCertificate:
    b: tuple[int, ...]
    c: tuple[int, ...]
    diameter: int
    antipodal: bool
    antipodal_class_size: int | None

    @property
    def intersection_array(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.b, self.c

    def __str__(self):
        return "(" + ",".join(map(str, self.b)) + ";" + ",".join(map(str, self.c)) + ")"


def distance_regular_check(G: ColoredDigraph | np.ndarray, diameter: int | None = None) -> DrgCertificate:
    adj = G.adj if isinstance(G, ColoredDigraph) else np.asarray(G, dtype=bool)
    if not np.array_equal(adj, adj.T):
        raise NotDRG("graph is not undirected", ("asymmetric",))
    dist = shortest_path(adj.astype(np.float64), method="D", unweighted=True)
    if np.any(np.isinf(dist)):
        raise Disconnected("graph is disconnected")
    dist = dist.astype(np.int64)
    D = int(dist.max())
    if diameter is not None and D != diameter:
        raise NotDRG(f"diameter is {D}, expected {diameter}", ("diameter", D))
    A = adj.astype(np.float64)
    layers = [(dist == i).astype(np.float64) for i in range(D + 2)]
    b, c = [], []
    for i in range(D + 1):
        mask = dist == i
        if i < D:
            up = np.rint(layers[i + 1] @ A).astype(np.int64)
            b.append(_constant(up, mask, f"b_{i}", NotDRG))
        if i > 0:
            down = np.rint(layers[i - 1] @ A).astype(np.int64)
            c.append(_constant(down, mask, f"c_{i}", NotDRG))
    R = (dist == D) | np.eye(len(adj), dtype=bool)
    closed = np.array_equal((R.astype(np.float64) @ R.astype(np.float64)) > 0, R)
    sizes = R.sum(axis=1)
    antipodal = bool(D > 1 and closed and np.all(sizes == sizes[0]))
    return DrgCertificate(tuple(b), tuple(c), D, antipodal, int(sizes[0]) if antipodal else None)


def relation_graph(om: Omega, labels) -> ColoredDigraph:
    return ColoredDigraph(np.isin(om.colors, list(labels)))
