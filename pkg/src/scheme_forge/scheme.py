"""Association schemes given by a color matrix, and their verification."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from .config import LIMITS, chunked_map, row_chunks
from .errors import NotAScheme, SchemeViolation


@dataclass(frozen=True, eq=False)
class Scheme:
    """A partition of Omega^2 stored as a v x v matrix of relation labels 0..rank-1."""

    colors: np.ndarray
    names: tuple[str, ...]
    meta: dict = field(default_factory=dict)

    @property
    def point_count(self) -> int:
        return self.colors.shape[0]

    @property
    def rank(self) -> int:
        return len(self.names)

    def adjacency(self, label: int) -> np.ndarray:
        return self.colors == label

    def label(self, name: str) -> int:
        return self.names.index(name)

    @classmethod
    def from_colors(cls, colors, names=None, meta=None) -> "Scheme":
        """Compact arbitrary labels to 0..k-1 (in order of first appearance on sorted values)."""
        colors = np.asarray(colors)
        values, inverse = np.unique(colors, return_inverse=True)
        compact = inverse.reshape(colors.shape).astype(np.int32)
        if names is None:
            names = tuple(f"c{int(v)}" for v in values)
        compact.setflags(write=False)
        return cls(compact, tuple(names), dict(meta or {}))


def trivial_scheme(v: int) -> Scheme:
    colors = np.ones((v, v), dtype=np.int32)
    np.fill_diagonal(colors, 0)
    return Scheme(colors, ("1", "rest"))


@dataclass
class SchemeCertificate:
    rank: int
    point_count: int
    valencies: list[int]
    inverse: list[int]
    identity: int
    commutative: bool
    mode: str  # "full" or "sampled"
    tensor: np.ndarray = field(repr=False)

    @property
    def tensor_hash(self) -> str:
        return hashlib.sha256(np.ascontiguousarray(self.tensor, dtype=np.int64).tobytes()).hexdigest()

    def to_dict(self, with_tensor: bool = False) -> dict:
        out = {
            "rank": self.rank,
            "points": self.point_count,
            "valencies": self.valencies,
            "inverse": self.inverse,
            "identity": self.identity,
            "commutative": self.commutative,
            "mode": self.mode,
            "tensor_hash": self.tensor_hash,
        }
        if with_tensor:
            out["tensor"] = self.tensor.tolist()
        return out


def _pair_counts(C: np.ndarray, alpha: int, beta: int, rank: int) -> np.ndarray:
    """counts[r * rank + s] = #{gamma : C[alpha, gamma] = r, C[gamma, beta] = s}."""
    return np.bincount(C[alpha].astype(np.int64) * rank + C[:, beta], minlength=rank * rank)


def verify_scheme(X: Scheme, mode: str = "auto", samples: int | None = None, seed: int = 0) -> SchemeCertificate:
    """Check the scheme axioms and return the intersection-number tensor.

    ``tensor[r, s, t] = c_{rs}^t``.  Raises SchemeViolation with a witness
    ``(r, s, t, pair, reference_pair)`` (or a shorter tuple for the
    diagonal/transpose axioms).
    """
    C = np.asarray(X.colors)
    v, rank = X.point_count, X.rank
    if C.shape != (v, v):
        raise SchemeViolation("color matrix is not square", None)
    present = np.bincount(C.ravel(), minlength=rank)
    if len(present) != rank or np.any(present == 0):
        raise SchemeViolation("labels are not exactly 0..rank-1", present.tolist())

    diag = np.diagonal(C)
    identity = int(diag[0])
    if np.any(diag != identity):
        a = int(np.argmax(diag != identity))
        raise SchemeViolation("diagonal is not a single relation", ("diag", a))
    off = C.copy()
    np.fill_diagonal(off, -1)
    if np.any(off == identity):
        a, b = map(int, np.argwhere(off == identity)[0])
        raise SchemeViolation("identity label used off the diagonal", ("diag", a, b))

    inverse = np.full(rank, -1, dtype=np.int64)
    for s in range(rank):
        images = np.unique(C.T[C == s])
        if len(images) != 1:
            a, b = map(int, np.argwhere((C == s) & (C.T != images[0]))[0])
            raise SchemeViolation(f"transpose of relation {s} is not a relation", ("transpose", s, a, b))
        inverse[s] = images[0]

    # reference counts from the first pair of each relation (row-major order)
    order = np.argsort(C.ravel(), kind="stable")
    starts = np.searchsorted(C.ravel()[order], np.arange(rank))
    flat_first = order[starts]
    ref_pairs = [(int(i // v), int(i % v)) for i in flat_first]
    ref = np.stack([_pair_counts(C, a, b, rank) for a, b in ref_pairs])

    if mode == "auto":
        mode = "full" if v <= LIMITS.full_scheme_verify else "sampled"

    if mode == "full":
        def check_rows(rows):
            for a in rows:
                codes = C[a].astype(np.int64)[:, None] * rank + C  # [gamma, beta]
                codes = codes + (np.arange(v, dtype=np.int64) * rank * rank)[None, :]
                counts = np.bincount(codes.ravel(), minlength=v * rank * rank).reshape(v, rank * rank)
                bad = counts != ref[C[a]]
                if bad.any():
                    b, code = map(int, np.argwhere(bad)[0])
                    return (a, b, code, int(counts[b, code]))
            return None

        for hit in chunked_map(check_rows, row_chunks(v)):
            if hit is not None:
                a, b, code, got = hit
                t = int(C[a, b])
                r, s = divmod(code, rank)
                raise SchemeViolation(
                    f"c_{{{r},{s}}}^{t} is {got} at {(a, b)} but {int(ref[t, code])} at {ref_pairs[t]}",
                    (r, s, t, (a, b), ref_pairs[t]),
                )
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        k = samples or LIMITS.scheme_samples
        for t in range(rank):
            pairs = np.argwhere(C == t)
            pick = pairs[rng.choice(len(pairs), size=min(k, len(pairs)), replace=False)]
            for a, b in pick:
                counts = _pair_counts(C, int(a), int(b), rank)
                if np.any(counts != ref[t]):
                    code = int(np.argmax(counts != ref[t]))
                    r, s = divmod(code, rank)
                    raise SchemeViolation(
                        f"c_{{{r},{s}}}^{t} differs at {(int(a), int(b))} and {ref_pairs[t]}",
                        (r, s, t, (int(a), int(b)), ref_pairs[t]),
                    )
    else:
        raise ValueError(f"unknown mode {mode!r}")

    tensor = ref.reshape(rank, rank, rank).transpose(1, 2, 0).copy()  # [r, s, t]
    valencies = np.bincount(C[0], minlength=rank)
    return SchemeCertificate(
        rank=rank,
        point_count=v,
        valencies=[int(x) for x in valencies],
        inverse=[int(x) for x in inverse],
        identity=identity,
        commutative=is_commutative(tensor),
        mode=mode,
        tensor=tensor,
    )


def intersection_numbers(X: Scheme, **kw) -> np.ndarray:
    try:
        return verify_scheme(X, **kw).tensor
    except SchemeViolation as exc:
        raise NotAScheme(str(exc)) from exc


def is_commutative(tensor: np.ndarray) -> bool:
    return bool(np.array_equal(tensor, tensor.transpose(1, 0, 2)))


# -- thin radical and the star group ------------------------------------------


@dataclass
class GroupTable:
    labels: list[int]
    table: np.ndarray  # positions into labels
    identity: int

    @property
    def order(self) -> int:
        return len(self.labels)

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = int(self.table[y, x])
            k += 1
        return k

    def is_group(self) -> bool:
        T = self.table
        N = len(self.labels)
        if not np.all(np.sort(T, axis=1) == np.arange(N)) or not np.all(np.sort(T, axis=0) == np.arange(N)[:, None]):
            return False
        if not (np.all(T[self.identity] == np.arange(N)) and np.all(T[:, self.identity] == np.arange(N))):
            return False
        return _assoc(T)

    def is_cyclic(self) -> bool:
        return any(self.element_order(x) == self.order for x in range(self.order))

    def is_dihedral(self) -> bool:
        N = self.order
        if N % 2:
            return False
        n = N // 2
        T, e = self.table, self.identity
        inv = np.argmax(T == e, axis=1)
        for a in range(N):
            if self.element_order(a) != n:
                continue
            powers = {e}
            y = e
            for _ in range(n):
                y = int(T[y, a])
                powers.add(y)
            for b in range(N):
                if b in powers or T[b, b] != e:
                    continue
                if T[T[b, a], b] == inv[a]:
                    return True
        return False


def _assoc(T: np.ndarray) -> bool:
    left = T[T]  # left[a, b, c] = T[T[a, b], c]
    right = T[:, T]  # right[a, b, c] = T[a, T[b, c]]
    return bool(np.array_equal(left, right))


def thin_radical(X: Scheme, tensor: np.ndarray | None = None) -> GroupTable:
    """The valency-1 relations under composition."""
    if tensor is None:
        tensor = intersection_numbers(X)
    rank = X.rank
    val = np.bincount(X.colors[0], minlength=rank)
    thin = [int(t) for t in np.flatnonzero(val == 1)]
    pos = {t: i for i, t in enumerate(thin)}
    table = np.empty((len(thin), len(thin)), dtype=np.int64)
    for i, r in enumerate(thin):
        for j, s in enumerate(thin):
            (targets,) = np.nonzero(tensor[r, s])
            assert len(targets) == 1 and int(targets[0]) in pos
            table[i, j] = pos[int(targets[0])]
    identity = pos[int(X.colors[0, 0])]
    return GroupTable(thin, table, identity)


def star_group(X: Scheme, tensor: np.ndarray | None = None) -> GroupTable:
    """Composition when one side is thin; otherwise the unique thin relation in r*s."""
    if tensor is None:
        tensor = intersection_numbers(X)
    rank = X.rank
    val = np.bincount(X.colors[0], minlength=rank)
    thin = val == 1
    table = np.empty((rank, rank), dtype=np.int64)
    for r in range(rank):
        for s in range(rank):
            (targets,) = np.nonzero(tensor[r, s])
            if not (thin[r] or thin[s]):
                targets = [t for t in targets if thin[t]]
            if len(targets) != 1:
                raise NotAScheme(f"star product of {r} and {s} is not a single relation")
            table[r, s] = int(targets[0])
    return GroupTable(list(range(rank)), table, int(X.colors[0, 0]))
