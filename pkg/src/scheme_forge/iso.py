"""Canonical labelling, isomorphism and automorphism groups by individualization-refinement.

Everything works on an integer "color matrix" M (M[x, y] is the color of the
ordered pair; for a digraph it is the 0/1 adjacency, for a scheme the relation
label) plus an optional vertex coloring.  The search tree is the usual one:

* refine the ordered partition to an equitable one, splitting a cell by the
  multiset of (M[x, y], M[y, x], cell of y) over all y (hashed, see _Refiner);
* individualize each vertex of the first smallest non-singleton cell;
* a leaf is a discrete partition, i.e. a labelling, whose key is
  (trace of node invariants, bytes of the relabelled matrix).

The canonical form is the least leaf.  Two leaves with equal keys give an
automorphism; automorphisms fixing a node's prefix prune its children by
orbits, and an automorphism found below a node whose sibling subtree was
already explored lets the search jump back to the common ancestor.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from sympy.combinatorics import Permutation, PermutationGroup

from .config import LIMITS
from .errors import SingularMatrix, TooLarge
from .field import coset_of, sigma_zero
from .graphs import ColoredDigraph, build_dsrg
from .scheme import Scheme
from .tatra import Omega


# -- inputs -----------------------------------------------------------------------


def color_matrix(obj) -> tuple[np.ndarray, np.ndarray]:
    """(M, vertex colors) for a ColoredDigraph, a Scheme, or a raw matrix."""
    if isinstance(obj, ColoredDigraph):
        M = obj.adj.astype(np.int32)
        vc = obj.vertex_colors
    elif isinstance(obj, Scheme):
        M = np.asarray(obj.colors, dtype=np.int32)
        vc = None
    else:
        M = np.asarray(obj)
        M = M.astype(np.int32)
        vc = None
    v = M.shape[0]
    vc = np.zeros(v, dtype=np.int64) if vc is None else np.asarray(vc, dtype=np.int64)
    return M, vc


def _rank(keys: np.ndarray) -> np.ndarray:
    return np.unique(keys, return_inverse=True)[1].reshape(-1).astype(np.int64)


def _rank_pairs(major: np.ndarray, minor: np.ndarray) -> np.ndarray:
    """Dense ranks of (major, minor) in lexicographic order."""
    order = np.lexsort((minor, major))
    a, b = major[order], minor[order]
    step = np.empty(len(order), dtype=np.int64)
    step[0] = 0
    step[1:] = (a[1:] != a[:-1]) | (b[1:] != b[:-1])
    out = np.empty(len(order), dtype=np.int64)
    out[order] = np.cumsum(step)
    return out


def _mix(x: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer on uint64 arrays."""
    x = x + np.uint64(0x9E3779B97F4A7C15)
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


class _Refiner:
    """Splits cells by a 64-bit hash of the multiset {(M[x,y], M[y,x], cell[y])}.

    The hash is a sum of mixed codes, so it is order independent and needs
    no per-row sort; a collision could only make the partition coarser,
    which keeps the refinement isomorphism invariant.
    """

    def __init__(self, M: np.ndarray):
        K = int(M.max()) + 1 if M.size else 1
        self.pair = (M.astype(np.uint64) * np.uint64(K) + M.T.astype(np.uint64)) << np.uint64(32)
        self.v = M.shape[0]

    def refine(self, cell: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore"):
            while True:
                nc = int(cell.max()) + 1
                if nc == self.v:
                    return cell
                sig = _mix(self.pair | cell.astype(np.uint64)[None, :]).sum(axis=1, dtype=np.uint64)
                new = _rank_pairs(cell, sig)
                if int(new.max()) + 1 == nc:
                    return cell
                cell = new

    @staticmethod
    def individualize(cell: np.ndarray, w: int) -> np.ndarray:
        key = cell * 2 + 1
        key[w] -= 1
        return _rank(key)


def _invariant(cell: np.ndarray) -> tuple[int, ...]:
    """Sizes of the cells in cell order; isomorphism invariant of the node."""
    return tuple(np.bincount(cell).tolist())


# -- the search --------------------------------------------------------------------


@dataclass
class _Leaf:
    trace: tuple
    data: bytes
    labelling: np.ndarray  # vertex -> position
    path: tuple[int, ...]

    def key(self):
        return (self.trace, self.data)


@dataclass
class SearchResult:
    labelling: np.ndarray
    encoding: bytes
    generators: list[np.ndarray]
    base: tuple[int, ...]
    nodes: int


def _leaf_bytes(M: np.ndarray, vc: np.ndarray, lab: np.ndarray) -> bytes:
    v = len(lab)
    inv = np.empty(v, dtype=np.int64)
    inv[lab] = np.arange(v)
    head = np.array([v], dtype=np.int64).tobytes() + vc[inv].astype(np.int64).tobytes()
    return head + np.ascontiguousarray(M[np.ix_(inv, inv)]).tobytes()


def _orbit_labels(v: int, gens: list[np.ndarray]) -> np.ndarray:
    if not gens:
        return np.arange(v)
    src = np.concatenate([np.arange(v)] * len(gens))
    dst = np.concatenate(gens)
    G = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(v, v))
    return connected_components(G, directed=True, connection="weak")[1]


def _search(M: np.ndarray, vc: np.ndarray, max_nodes: int | None = None) -> SearchResult:
    v = M.shape[0]
    R = _Refiner(M)
    root = R.refine(_rank(vc))
    state = {"first": None, "best": None, "gens": [], "nodes": 0}

    def check_auto(a: _Leaf, b: _Leaf) -> np.ndarray:
        inv_b = np.empty(v, dtype=np.int64)
        inv_b[b.labelling] = np.arange(v)
        gamma = inv_b[a.labelling]
        assert np.array_equal(M[np.ix_(gamma, gamma)], M)
        assert np.array_equal(vc[gamma], vc)
        return gamma

    def common(p1, p2) -> int:
        k = 0
        while k < min(len(p1), len(p2)) and p1[k] == p2[k]:
            k += 1
        return k

    def visit_leaf(cell, path, trace):
        leaf = _Leaf(trace, _leaf_bytes(M, vc, cell), cell, tuple(path))
        first, best = state["first"], state["best"]
        if first is None:
            state["first"] = state["best"] = leaf
            return None
        for ref in (first, best):
            if leaf.key() == ref.key():
                gamma = check_auto(ref, leaf)
                if not np.array_equal(gamma, np.arange(v)):
                    state["gens"].append(gamma)
                return common(leaf.path, ref.path)
        if leaf.key() < best.key():
            state["best"] = leaf
        return None

    def node(cell, path, trace):
        state["nodes"] += 1
        if max_nodes is not None and state["nodes"] > max_nodes:
            raise TooLarge(f"search tree exceeded {max_nodes} nodes")
        depth = len(path)
        if int(cell.max()) + 1 == v:
            return visit_leaf(cell, path, trace)
        sizes = np.bincount(cell)
        sizes_nt = np.where(sizes > 1, sizes, v + 1)
        target = int(np.argmin(sizes_nt))
        members = np.flatnonzero(cell == target)
        explored: list[int] = []
        seen_gens = -1
        orbit = None
        for w in members.tolist():
            gens = state["gens"]
            if len(gens) != seen_gens:
                fixing = [g for g in gens if all(g[s] == s for s in path)]
                orbit = _orbit_labels(v, fixing)
                seen_gens = len(gens)
            if any(orbit[w] == orbit[e] for e in explored):
                continue
            child = R.refine(R.individualize(cell, w))
            ctrace = trace + (_invariant(child),)
            first, best = state["first"], state["best"]
            if first is not None:
                on_first = ctrace == first.trace[: len(ctrace)]
                if not on_first and ctrace > best.trace[: len(ctrace)]:
                    continue
            explored.append(w)
            back = node(child, path + [w], ctrace)
            if back is not None and back < depth:
                return back
        return None

    node(root, [], (_invariant(root),))
    best, first = state["best"], state["first"]
    return SearchResult(best.labelling, best.data, state["gens"], first.path, state["nodes"])


# -- public API -------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    labelling: np.ndarray  # vertex x goes to position labelling[x]
    encoding: bytes = field(repr=False)

    @property
    def hash(self) -> str:
        return hashlib.sha256(self.encoding).hexdigest()

    def hex(self) -> str:
        return self.encoding.hex()

    def __eq__(self, other):
        return isinstance(other, CanonicalForm) and self.encoding == other.encoding

    def __hash__(self):
        return hash(self.encoding)


def canonical_form(G, max_nodes: int | None = None) -> CanonicalForm:
    M, vc = color_matrix(G)
    if M.shape[0] > LIMITS.canon_vertices:
        raise TooLarge(f"{M.shape[0]} vertices exceeds the canonical-labelling cap {LIMITS.canon_vertices}")
    res = _search(M, vc, max_nodes)
    return CanonicalForm(res.labelling, res.encoding)


def verify_isomorphism(G1, G2, sigma) -> bool:
    """sigma maps vertices of G1 to G2; check every ordered pair and vertex color."""
    M1, vc1 = color_matrix(G1)
    M2, vc2 = color_matrix(G2)
    sigma = np.asarray(sigma)
    if M1.shape != M2.shape or sorted(sigma.tolist()) != list(range(len(sigma))):
        return False
    return bool(np.array_equal(M2[np.ix_(sigma, sigma)], M1) and np.array_equal(vc2[sigma], vc1))


def pair_profile(G) -> tuple:
    """Histogram of (M[x, y], M[y, x], #2-paths x -> y); an isomorphism invariant."""
    M, vc = color_matrix(G)
    A = (M != 0).astype(np.float64)
    np.fill_diagonal(A, 0)
    P = np.rint(A @ A).astype(np.int64)
    rows = np.stack([M.ravel(), M.T.ravel(), P.ravel(), np.eye(len(M), dtype=np.int64).ravel()], axis=1)
    keys, counts = np.unique(rows, axis=0, return_counts=True)
    vcs, vcounts = np.unique(vc, return_counts=True)
    return (tuple(map(tuple, keys.tolist())), tuple(counts.tolist()), tuple(vcs.tolist()), tuple(vcounts.tolist()))


def edge_clique_profile(G) -> dict[int, int]:
    """For an undirected graph: histogram over edges xy of the number of edges inside N(x) & N(y).

    That count is the number of 4-cliques through xy.  Cost is one |N(x)|^3
    product per vertex.
    """
    M, _ = color_matrix(G)
    A = (M != 0)
    if not np.array_equal(A, A.T):
        raise ValueError("edge clique profile needs an undirected graph")
    A = A.astype(np.float64)
    np.fill_diagonal(A, 0)
    hist: dict[int, int] = {}
    for x in range(len(A)):
        N = np.flatnonzero(A[x])
        S = A[np.ix_(N, N)]
        inner = np.rint(np.einsum("ij,ij->i", S @ S, S)).astype(np.int64)
        for val, c in zip(*np.unique(inner, return_counts=True)):
            hist[int(val)] = hist.get(int(val), 0) + int(c)
    return dict(sorted(hist.items()))


@dataclass
class IsoResult:
    isomorphic: bool
    witness: np.ndarray | None
    method: str  # "invariant:<name>" when an invariant separated the inputs, else "canonical"


def isomorphism_test(G1, G2, cliques: bool | None = None, max_nodes: int | None = None) -> IsoResult:
    """Decide isomorphism; a differing invariant certifies "no" without any search.

    ``cliques=None`` turns on the edge-clique invariant for undirected graphs
    with more than ``LIMITS.matmul_oracle`` vertices, where the search tree
    of the plain refinement gets large.
    """
    M1, _ = color_matrix(G1)
    M2, _ = color_matrix(G2)
    if M1.shape != M2.shape:
        return IsoResult(False, None, "invariant:order")
    if pair_profile(G1) != pair_profile(G2):
        return IsoResult(False, None, "invariant:pair-profile")
    undirected = np.array_equal(M1, M1.T) and np.array_equal(M2, M2.T)
    if cliques is None:
        cliques = undirected and len(M1) > LIMITS.matmul_oracle
    if cliques and undirected and edge_clique_profile(G1) != edge_clique_profile(G2):
        return IsoResult(False, None, "invariant:edge-cliques")
    c1, c2 = canonical_form(G1, max_nodes), canonical_form(G2, max_nodes)
    if c1 != c2:
        return IsoResult(False, None, "canonical")
    inv2 = np.empty_like(c2.labelling)
    inv2[c2.labelling] = np.arange(len(inv2))
    sigma = inv2[c1.labelling]
    assert verify_isomorphism(G1, G2, sigma)
    return IsoResult(True, sigma, "canonical")


def are_isomorphic(G1, G2, **kw):
    """A verified isomorphism G1 -> G2 as an array, or None."""
    return isomorphism_test(G1, G2, **kw).witness


@dataclass
class AutGroupReport:
    order: int
    generators: list[np.ndarray]
    orbits: list[list[int]]
    base: tuple[int, ...]
    orbit_product: int
    nodes: int = 0

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "generators": [g.tolist() for g in self.generators],
            "orbits": self.orbits,
            "base": list(self.base),
        }


def group_order(gens: list[np.ndarray], v: int) -> int:
    if not gens:
        return 1
    return int(PermutationGroup([Permutation(g.tolist()) for g in gens]).order())


def _orbit_product(gens, base, v) -> int:
    """Product over the base of |orbit of b_l under gens fixing b_1..b_{l-1}|."""
    total = 1
    for lvl, b in enumerate(base):
        fixing = [g for g in gens if all(g[s] == s for s in base[:lvl])]
        lab = _orbit_labels(v, fixing)
        total *= int(np.sum(lab == lab[b]))
    return total


def automorphism_order(G) -> AutGroupReport:
    M, vc = color_matrix(G)
    v = M.shape[0]
    if v > LIMITS.aut_vertices:
        raise TooLarge(f"{v} vertices exceeds the automorphism-search cap {LIMITS.aut_vertices}")
    res = _search(M, vc)
    for g in res.generators:
        assert np.array_equal(M[np.ix_(g, g)], M) and np.array_equal(vc[g], vc)
    order = group_order(res.generators, v)
    prod = _orbit_product(res.generators, res.base, v)
    assert order == prod, f"Schreier-Sims order {order} != base orbit product {prod}"
    lab = _orbit_labels(v, res.generators)
    orbits = [np.flatnonzero(lab == c).tolist() for c in np.unique(lab[np.sort(np.unique(lab, return_index=True)[1])])]
    return AutGroupReport(order, res.generators, orbits, res.base, prod, res.nodes)


# -- Tatra-specific checks --------------------------------------------------------


def explicit_iso_from_matrix(om: Omega, i: int, g: int) -> np.ndarray:
    """f_T for T = diag(x, 1) with Kx = g; maps Gamma(i, 0) onto Gamma(i, g) and s_0 onto s_g."""
    F, K = om.F, om.K
    g %= om.n
    x = next(x for x in range(1, F.q) if coset_of(F, K, x) == g)
    T = ((x, 0), (0, 1))
    perm = om.semilinear_perm(T, 0)
    G0, Gg = build_dsrg(om, i, 0), build_dsrg(om, i, g)
    assert verify_isomorphism(G0, Gg, perm)
    s0, sg = om.colors == om.n, om.colors == om.n + g
    assert np.array_equal(sg[np.ix_(perm, perm)], s0)
    return perm


def semilinear_maps(om: Omega, det_in_K: bool = True, frobenius=None):
    """Yield (T, j) over invertible T (with det T in K if asked) and j in the given exponents."""
    F = om.F
    q = F.q
    js = sigma_zero(F, om.n) if frobenius is None else list(frobenius)
    cd = np.array([(c, d) for c in range(q) for d in range(q)], dtype=np.int64)
    Kset = np.zeros(q, dtype=bool)
    Kset[om.K.elements()] = True
    for a in range(q):
        for b in range(q):
            if a == 0 and b == 0:
                continue
            det = F.sub(F.mul(a, cd[:, 1]), F.mul(b, cd[:, 0]))
            ok = Kset[det] if det_in_K else det != 0
            for c, d in cd[ok].tolist():
                for j in js:
                    yield ((a, b), (c, d)), j


def predicted_scheme_aut(om: Omega) -> int:
    """Number of distinct permutations of Omega induced by {(T, j) : det T in K, j in Sigma_0}."""
    F = om.F
    count = (F.q * (F.q * F.q - 1)) * om.m * len(sigma_zero(F, om.n))
    if count > LIMITS.semilinear_maps:
        raise TooLarge(f"{count} semilinear maps exceeds the cap {LIMITS.semilinear_maps}")
    seen = set()
    for T, j in semilinear_maps(om):
        seen.add(om.semilinear_perm(T, j).astype(np.int32).tobytes())
    return len(seen)


def pair_orbits(v: int, gens: list[np.ndarray]) -> np.ndarray:
    """Orbit id of each ordered pair (a, b), as a v x v array."""
    idx = np.arange(v * v).reshape(v, v)
    if not gens:
        return idx
    src = np.concatenate([idx.ravel()] * len(gens))
    dst = np.concatenate([idx[np.ix_(g, g)].ravel() for g in gens])
    # idx[g][:, g][a, b] = g(a) * v + g(b), so the edge is (a, b) -> (g a, g b)
    G = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(v * v, v * v))
    return connected_components(G, directed=True, connection="weak")[1].reshape(v, v)


def schurian_check(X: Scheme, report: AutGroupReport | None = None) -> bool:
    """Orbits of Aut(X) on ordered pairs coincide with the basic relations."""
    if report is None:
        report = automorphism_order(X)
    orb = pair_orbits(X.point_count, report.generators)
    C = np.asarray(X.colors)
    pairs = np.unique(np.stack([orb.ravel(), C.ravel()], axis=1), axis=0)
    return len(pairs) == X.rank == len(np.unique(orb))


def semilinear_dsrg_generators(om: Omega, i: int, g: int):
    """Semilinear maps (T, j) that preserve Gamma(i, g), as verified permutations."""
    G = build_dsrg(om, i, g)
    F = om.F
    out = []
    for T, j in semilinear_maps(om, det_in_K=False, frobenius=range(F.d)):
        try:
            perm = om.semilinear_perm(T, j)
        except SingularMatrix:
            continue
        if verify_isomorphism(G, G, perm):
            out.append(perm)
    return out
