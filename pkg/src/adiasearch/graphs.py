"""Regular graph construction, validation and edge-list I/O.

Adjacency matrices are stored densely; every family used for search
experiments is small enough that repeated dense mat-vecs are cheap.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    MalformedEdgeList,
    NotConnected,
    NotRegular,
    NotSymmetric,
    ParameterOutOfRange,
    SelfLoop,
    UnknownFamily,
    VertexOutOfRange,
)

FAMILIES = ("complete", "dihedral", "mpartite", "crown")

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with a dense 0/1 adjacency matrix.

    Construction does not validate; use :func:`validate` (the family
    builders and :func:`load_edge_list` already do).
    """

    adjacency: np.ndarray
    family: str = "custom"
    params: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        adj = np.array(self.adjacency, dtype=float, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ParameterOutOfRange(f"adjacency must be square, got shape {adj.shape}")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def degree(self) -> int:
        """Row sum of vertex 0 (the common degree once validated)."""
        return int(round(self.adjacency[0].sum())) if self.n else 0

    def laplacian(self) -> np.ndarray:
        return self.degree * np.eye(self.n) - self.adjacency

    def edges(self) -> list[tuple[int, int]]:
        """Sorted edge list with ``u < v``."""
        rows, cols = np.nonzero(np.triu(self.adjacency, k=1))
        return [(int(u), int(v)) for u, v in zip(rows, cols)]

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges())

    def describe(self) -> dict:
        return {
            "family": self.family,
            "params": list(self.params),
            "n": self.n,
            "degree": self.degree,
            "edges": len(self.edges()),
        }


def validate(g: Graph) -> int:
    """Check that ``g`` is simple, undirected, regular and connected.

    Returns the common degree D.
    """
    adj = g.adjacency
    if not np.array_equal(adj, adj.T):
        raise NotSymmetric("adjacency matrix is not symmetric")
    if np.any(np.diag(adj) != 0):
        loops = np.flatnonzero(np.diag(adj))
        raise SelfLoop(f"self-loop at vertex {int(loops[0])}")
    if not np.all((adj == 0) | (adj == 1)):
        raise NotSymmetric("adjacency entries must be 0 or 1")
    degrees = adj.sum(axis=1).astype(int)
    if g.n and np.any(degrees != degrees[0]):
        raise NotRegular(f"vertex degrees differ: {sorted(set(degrees.tolist()))}")
    if g.n and _reachable_count(adj) != g.n:
        raise NotConnected("graph is not connected")
    return int(degrees[0]) if g.n else 0


def _reachable_count(adj: np.ndarray) -> int:
    seen = np.zeros(adj.shape[0], dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in np.flatnonzero(adj[u]):
            if not seen[v]:
                seen[v] = True
                queue.append(int(v))
    return int(seen.sum())


def _complete(n: int) -> np.ndarray:
    return np.ones((n, n)) - np.eye(n)


def build_family(family: str, params: Sequence[int]) -> Graph:
    """Build one of the named graph families.

    ``complete``: ``[N]``, K_N. ``dihedral``: ``[n]``, adjacency
    ``sigma_x (x) J_n`` on 2n vertices. ``mpartite``: ``[m, n]``, adjacency
    ``K_m (x) J_n``. ``crown``: ``[n]``, adjacency ``K_n (x) sigma_x`` (vertex
    ``2i`` is u_i, ``2i + 1`` is v_i).
    """
    params = [int(p) for p in params]

    def need(count: int) -> None:
        if len(params) != count:
            raise ParameterOutOfRange(f"{family} takes {count} parameter(s), got {len(params)}")

    if family == "complete":
        need(1)
        (n,) = params
        if n < 2:
            raise ParameterOutOfRange(f"complete graph needs N >= 2, got {n}")
        adj = _complete(n)
    elif family == "dihedral":
        need(1)
        (n,) = params
        if n < 2:
            raise ParameterOutOfRange(f"dihedral graph needs n >= 2, got {n}")
        adj = np.kron(SIGMA_X, np.ones((n, n)))
    elif family == "mpartite":
        need(2)
        m, n = params
        if m < 2 or n < 1:
            raise ParameterOutOfRange(f"m-partite graph needs m >= 2 and n >= 1, got m={m}, n={n}")
        adj = np.kron(_complete(m), np.ones((n, n)))
    elif family == "crown":
        need(1)
        (n,) = params
        if n < 3:
            raise ParameterOutOfRange(f"crown graph needs n >= 3, got {n}")
        adj = np.kron(_complete(n), SIGMA_X)
    else:
        raise UnknownFamily(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")

    g = Graph(adj, family=family, params=tuple(params))
    validate(g)
    return g


def family_degree(family: str, params: Sequence[int]) -> int:
    """Closed-form degree of a family member."""
    if family == "complete":
        return params[0] - 1
    if family == "dihedral":
        return params[0]
    if family == "mpartite":
        m, n = params
        return n * (m - 1)
    if family == "crown":
        return params[0] - 1
    raise UnknownFamily(f"unknown family {family!r}")


def from_edges(n: int, edges: Iterable[tuple[int, int]], family: str = "custom") -> Graph:
    adj = np.zeros((n, n))
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        adj[u, v] = adj[v, u] = 1.0
    return Graph(adj, family=family)


def load_edge_list(text: str, n: int | None = None) -> Graph:
    """Parse a whitespace-separated 0-based edge list.

    ``#`` starts a comment; blank lines are ignored; duplicate edges collapse.
    The vertex count is ``max index + 1`` unless ``n`` is given, in which case
    larger indices are rejected.
    """
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedEdgeList(f"line {lineno}: expected two vertex indices, got {raw!r}")
        try:
            u, v = (int(t) for t in tokens)
        except ValueError:
            raise MalformedEdgeList(f"line {lineno}: non-integer vertex index in {raw!r}") from None
        if u < 0 or v < 0 or (n is not None and max(u, v) >= n):
            raise VertexOutOfRange(f"line {lineno}: vertex index out of range in {raw!r}")
        if u == v:
            raise SelfLoop(f"line {lineno}: self-loop at vertex {u}")
        edges.append((u, v))
    if not edges:
        raise MalformedEdgeList("edge list contains no edges")
    size = n if n is not None else 1 + max(max(e) for e in edges)
    g = from_edges(size, edges)
    validate(g)
    return g


def uniform_state(g: Graph) -> np.ndarray:
    """Equal superposition over all vertices."""
    return np.full(g.n, 1.0 / np.sqrt(g.n), dtype=complex)


def basis_state(g: Graph, vertex: int) -> np.ndarray:
    if not 0 <= vertex < g.n:
        raise VertexOutOfRange(f"vertex {vertex} outside 0..{g.n - 1}")
    e = np.zeros(g.n, dtype=complex)
    e[vertex] = 1.0
    return e


def cycle(n: int) -> Graph:
    g = from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    validate(g)
    return g


def hypercube(dim: int) -> Graph:
    n = 1 << dim
    g = from_edges(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(dim) if v < v ^ (1 << b)])
    validate(g)
    return g
