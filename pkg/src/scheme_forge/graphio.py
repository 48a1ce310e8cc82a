"""graph6 / digraph6 / edge-list / adjacency-json encoders and decoders.

graph6 and digraph6 follow the published format description: a size header
N(n), then the adjacency bits packed six to a byte, big-endian within each
group, each byte offset by 63.  graph6 lists the upper triangle column by
column (x(0,1), x(0,2), x(1,2), x(0,3), ...); digraph6 is prefixed by '&' and
lists all n^2 entries row by row.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import AsymmetricForGraph6, SchemeForgeError

FORMATS = ("graph6", "digraph6", "edge-list", "adjacency-json")


def _size_header(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return b"~" + bytes(((n >> s) & 63) + 63 for s in (12, 6, 0))
    if n < 1 << 36:
        return b"~~" + bytes(((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0))
    raise SchemeForgeError(f"{n} vertices is too many for graph6")


def _read_size(data: bytes) -> tuple[int, int]:
    """(n, bytes consumed)."""
    if data[0] != 126:
        return data[0] - 63, 1
    if data[1] != 126:
        n = 0
        for c in data[1:4]:
            n = (n << 6) | (c - 63)
        return n, 4
    n = 0
    for c in data[2:8]:
        n = (n << 6) | (c - 63)
    return n, 8


def _pack(bits: np.ndarray) -> bytes:
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits.astype(np.uint8), np.zeros(pad, dtype=np.uint8)])
    groups = bits.reshape(-1, 6)
    vals = groups @ (1 << np.arange(5, -1, -1)) + 63
    return bytes(vals.astype(np.uint8).tolist())


def _unpack(data: bytes, count: int) -> np.ndarray:
    vals = np.frombuffer(data, dtype=np.uint8).astype(np.int64) - 63
    if np.any((vals < 0) | (vals > 63)):
        raise SchemeForgeError("byte outside the printable graph6 range")
    bits = ((vals[:, None] >> np.arange(5, -1, -1)) & 1).ravel()
    if len(bits) < count:
        raise SchemeForgeError("truncated graph6/digraph6 data")
    return bits[:count].astype(bool)


def _upper_order(n: int) -> tuple[np.ndarray, np.ndarray]:
    """(i, j) with i < j, column by column."""
    i, j = np.triu_indices(n, 1)
    order = np.lexsort((i, j))
    return i[order], j[order]


def to_graph6(adj) -> bytes:
    A = np.asarray(adj, dtype=bool)
    if not np.array_equal(A, A.T) or np.any(np.diagonal(A)):
        raise AsymmetricForGraph6("graph6 needs a symmetric loop-free adjacency matrix")
    n = len(A)
    i, j = _upper_order(n)
    return _size_header(n) + _pack(A[i, j])


def from_graph6(data: bytes | str) -> np.ndarray:
    if isinstance(data, str):
        data = data.encode()
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    n, used = _read_size(data)
    i, j = _upper_order(n)
    bits = _unpack(data[used:], len(i))
    A = np.zeros((n, n), dtype=bool)
    A[i, j] = bits
    return A | A.T


def to_digraph6(adj) -> bytes:
    A = np.asarray(adj, dtype=bool)
    return b"&" + _size_header(len(A)) + _pack(A.ravel())


def from_digraph6(data: bytes | str) -> np.ndarray:
    if isinstance(data, str):
        data = data.encode()
    data = data.strip()
    if data.startswith(b">>digraph6<<"):
        data = data[12:]
    if not data.startswith(b"&"):
        raise SchemeForgeError("digraph6 data must start with '&'")
    n, used = _read_size(data[1:])
    return _unpack(data[1 + used:], n * n).reshape(n, n)


def to_edge_list(adj) -> bytes:
    """'n <v>' then one 'a b' line per arc (per edge with a < b if symmetric)."""
    A = np.asarray(adj, dtype=bool)
    directed = not np.array_equal(A, A.T)
    arcs = np.argwhere(A if directed else np.triu(A))
    lines = [f"n {len(A)} {'directed' if directed else 'undirected'}"]
    lines += [f"{a} {b}" for a, b in arcs.tolist()]
    return ("\n".join(lines) + "\n").encode()


def from_edge_list(data: bytes | str) -> np.ndarray:
    if isinstance(data, bytes):
        data = data.decode()
    lines = [ln.split() for ln in data.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0][0] != "n":
        raise SchemeForgeError("edge list must start with 'n <vertex count>'")
    n = int(lines[0][1])
    directed = len(lines[0]) > 2 and lines[0][2] == "directed"
    A = np.zeros((n, n), dtype=bool)
    for a, b in lines[1:]:
        A[int(a), int(b)] = True
        if not directed:
            A[int(b), int(a)] = True
    return A


def to_adjacency_json(adj, classes=None) -> bytes:
    A = np.asarray(adj, dtype=bool)
    doc = {"n": len(A), "directed": not np.array_equal(A, A.T), "adjacency": A.astype(int).tolist()}
    if classes is not None:
        doc["classes"] = [int(c) for c in classes]
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode()


def from_adjacency_json(data: bytes | str) -> tuple[np.ndarray, np.ndarray | None]:
    doc = json.loads(data)
    n = doc["n"]
    A = np.asarray(doc["adjacency"], dtype=bool)
    if A.size != n * n or (n and A.shape != (n, n)):
        raise SchemeForgeError("adjacency matrix does not match n")
    A = A.reshape(n, n)
    classes = doc.get("classes")
    return A, None if classes is None else np.asarray(classes, dtype=np.int64)


def export_graph(adj, fmt: str, classes=None) -> bytes:
    if fmt == "graph6":
        return to_graph6(adj) + b"\n"
    if fmt == "digraph6":
        return to_digraph6(adj) + b"\n"
    if fmt == "edge-list":
        return to_edge_list(adj)
    if fmt == "adjacency-json":
        return to_adjacency_json(adj, classes)
    raise SchemeForgeError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def import_graph(data: bytes, fmt: str | None = None) -> tuple[np.ndarray, np.ndarray | None]:
    """(adjacency, classes or None); the format is sniffed when not given."""
    if fmt is None:
        head = data.lstrip()[:1]
        if head == b"{":
            fmt = "adjacency-json"
        elif head == b"&" or data.lstrip().startswith(b">>digraph6"):
            fmt = "digraph6"
        elif head == b"n":
            fmt = "edge-list"
        else:
            fmt = "graph6"
    if fmt == "graph6":
        return from_graph6(data), None
    if fmt == "digraph6":
        return from_digraph6(data), None
    if fmt == "edge-list":
        return from_edge_list(data), None
    if fmt == "adjacency-json":
        return from_adjacency_json(data)
    raise SchemeForgeError(f"unknown format {fmt!r}")
