"""Finite edge-indexed graphs.

A graph stores its oriented edges in three parallel integer arrays
(``origin``, ``terminus``, ``index``).  Oriented edges come in pairs: edge
``2k`` and edge ``2k + 1`` are reverses of each other, so ``reverse(e) == e ^ 1``.
Vertex ids are strings; every internal ordering is file order.

File format (UTF-8, one record per line)::

    # comment
    v <name> [truncated]
    e <u> <v> <i(u->v)> <i(v->u)>
    base <name>
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


class GraphError(ValueError):
    """Raised for structurally invalid graphs."""


class GraphFormatError(GraphError):
    """Raised when a graph description cannot be parsed."""

    def __init__(self, message: str, lineno: Optional[int] = None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class MissingVertexError(GraphError, KeyError):
    def __str__(self) -> str:
        return f"no such vertex: {self.args[0]!r}"


class DisconnectedGraphWarning(UserWarning):
    pass


class OrientedEdge(NamedTuple):
    id: int
    reverse: int
    origin: str
    terminus: str
    index: int


def _frozen(a, dtype=np.int64) -> np.ndarray:
    arr = np.array(a, dtype=dtype, copy=True).reshape(-1)
    arr.setflags(write=False)
    return arr


class EdgeIndexedGraph:
    """Immutable finite multigraph with positive integer indices on oriented edges.

    ``vertices`` may be any sequence of distinct strings.  Sequences that
    provide a ``position(name)`` method are used for lookups directly, which
    lets very large generated graphs avoid building a name dictionary.
    """

    def __init__(
        self,
        vertices: Sequence[str],
        origin,
        terminus,
        index,
        base: Optional[str] = None,
        truncated=None,
    ):
        if isinstance(vertices, (list, tuple)):
            vertices = tuple(str(v) for v in vertices)
            if len(set(vertices)) != len(vertices):
                seen = set()
                for v in vertices:
                    if v in seen:
                        raise GraphError(f"duplicate vertex {v!r}")
                    seen.add(v)
        self._vertices = vertices
        self.origin = _frozen(origin)
        self.terminus = _frozen(terminus)
        self.index = _frozen(index)
        nv = len(vertices)
        ne = len(self.origin)
        if len(self.terminus) != ne or len(self.index) != ne:
            raise GraphError("edge arrays differ in length")
        if ne % 2:
            raise GraphError("oriented edges must come in reverse pairs")
        if ne:
            if self.origin.min() < 0 or self.origin.max() >= nv:
                raise GraphError("edge origin out of range")
            if self.terminus.min() < 0 or self.terminus.max() >= nv:
                raise GraphError("edge terminus out of range")
            if self.index.min() < 1:
                raise GraphError("index < 1")
            pairs_o = self.origin.reshape(-1, 2)
            pairs_t = self.terminus.reshape(-1, 2)
            if not (np.array_equal(pairs_o[:, 0], pairs_t[:, 1])
                    and np.array_equal(pairs_o[:, 1], pairs_t[:, 0])):
                raise GraphError("reverse edge endpoints do not swap")
        if truncated is None:
            truncated = np.zeros(nv, dtype=bool)
        self.truncated = _frozen(truncated, dtype=bool)
        if len(self.truncated) != nv:
            raise GraphError("truncated flags do not match vertex count")
        self._base = None
        if base is not None:
            self.vertex_index(base)
            self._base = str(base)

    # -- vertices -------------------------------------------------------

    @property
    def vertices(self) -> Sequence[str]:
        return self._vertices

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_oriented_edges(self) -> int:
        return len(self.origin)

    @property
    def num_edges(self) -> int:
        """Number of undirected edges (loops count once)."""
        return len(self.origin) // 2

    @property
    def base(self) -> Optional[str]:
        return self._base

    @cached_property
    def _lookup(self):
        position = getattr(self._vertices, "position", None)
        if position is not None:
            return position
        table = {name: k for k, name in enumerate(self._vertices)}
        return table.__getitem__

    def vertex_index(self, name: str) -> int:
        try:
            return self._lookup(name)
        except (KeyError, ValueError):
            raise MissingVertexError(name) from None

    def has_vertex(self, name: str) -> bool:
        try:
            self.vertex_index(name)
        except MissingVertexError:
            return False
        return True

    def with_base(self, name: Optional[str]) -> "EdgeIndexedGraph":
        return EdgeIndexedGraph(self._vertices, self.origin, self.terminus,
                                self.index, base=name, truncated=self.truncated)

    # -- edges ----------------------------------------------------------

    @staticmethod
    def reverse(e: int) -> int:
        return e ^ 1

    def edge(self, e: int) -> OrientedEdge:
        return OrientedEdge(e, e ^ 1, self._vertices[int(self.origin[e])],
                            self._vertices[int(self.terminus[e])],
                            int(self.index[e]))

    def edges(self) -> Iterator[OrientedEdge]:
        for e in range(self.num_oriented_edges):
            yield self.edge(e)

    @cached_property
    def _out_csr(self):
        order = np.argsort(self.origin, kind="stable")
        ptr = np.zeros(self.num_vertices + 1, dtype=np.int64)
        np.cumsum(np.bincount(self.origin, minlength=self.num_vertices), out=ptr[1:])
        return ptr, order.astype(np.int64)

    def out_edges(self, v: int) -> np.ndarray:
        """Oriented edges leaving the vertex with position ``v``, in edge order."""
        ptr, order = self._out_csr
        return order[ptr[v]:ptr[v + 1]]

    @cached_property
    def adjacency_lists(self) -> list:
        """Per-vertex Python lists of outgoing oriented edge ids."""
        ptr, order = self._out_csr
        flat = order.tolist()
        p = ptr.tolist()
        return [flat[p[v]:p[v + 1]] for v in range(self.num_vertices)]

    @cached_property
    def is_connected(self) -> bool:
        nv = self.num_vertices
        if nv <= 1:
            return True
        if nv <= 256:
            # plain search; the sparse setup costs more than this on small graphs
            adj = self.adjacency_lists
            term = self.terminus.tolist()
            seen = {0}
            stack = [0]
            while stack:
                for e in adj[stack.pop()]:
                    t = term[e]
                    if t not in seen:
                        seen.add(t)
                        stack.append(t)
            return len(seen) == nv
        adj = coo_matrix((np.ones(len(self.origin), dtype=np.int8),
                          (self.origin, self.terminus)), shape=(nv, nv))
        ncomp, _ = connected_components(adj, directed=False)
        return ncomp == 1

    @property
    def is_unweighted(self) -> bool:
        return bool(np.all(self.index == 1))

    @cached_property
    def cover_degrees(self) -> np.ndarray:
        """Sum of outgoing indices at every vertex."""
        deg = np.zeros(self.num_vertices, dtype=np.int64)
        np.add.at(deg, self.origin, self.index)
        deg.setflags(write=False)
        return deg

    @cached_property
    def degrees(self) -> np.ndarray:
        """Number of oriented edges leaving each vertex (a loop counts twice)."""
        deg = np.bincount(self.origin, minlength=self.num_vertices).astype(np.int64)
        deg.setflags(write=False)
        return deg

    def __repr__(self) -> str:
        return (f"EdgeIndexedGraph(|V|={self.num_vertices}, |E|={self.num_edges}, "
                f"base={self._base!r})")


@dataclass(frozen=True)
class MergePoint:
    graph: EdgeIndexedGraph
    vertex: str

    def __post_init__(self):
        self.graph.vertex_index(self.vertex)


def parse_graph(text: str) -> EdgeIndexedGraph:
    names: list[str] = []
    known: dict[str, int] = {}
    truncated: list[bool] = []
    origin: list[int] = []
    terminus: list[int] = []
    index: list[int] = []
    base = None

    def endpoint(tok, lineno):
        try:
            return known[tok]
        except KeyError:
            raise GraphFormatError(f"unknown endpoint {tok!r}", lineno) from None

    def positive(tok, lineno):
        try:
            value = int(tok)
        except ValueError:
            raise GraphFormatError(f"bad index {tok!r}", lineno) from None
        if value < 1:
            raise GraphFormatError(f"index < 1: {value}", lineno)
        return value

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        kind = tok[0]
        if kind == "v":
            if len(tok) not in (2, 3) or (len(tok) == 3 and tok[2] != "truncated"):
                raise GraphFormatError("expected 'v <name> [truncated]'", lineno)
            if tok[1] in known:
                raise GraphFormatError(f"duplicate vertex {tok[1]!r}", lineno)
            known[tok[1]] = len(names)
            names.append(tok[1])
            truncated.append(len(tok) == 3)
        elif kind == "e":
            if len(tok) != 5:
                raise GraphFormatError("expected 'e <u> <v> <i_uv> <i_vu>'", lineno)
            a = positive(tok[3], lineno)
            b = positive(tok[4], lineno)
            u = endpoint(tok[1], lineno)
            v = endpoint(tok[2], lineno)
            origin += [u, v]
            terminus += [v, u]
            index += [a, b]
        elif kind == "base":
            if len(tok) != 2:
                raise GraphFormatError("expected 'base <name>'", lineno)
            if base is not None:
                raise GraphFormatError("base given twice", lineno)
            endpoint(tok[1], lineno)
            base = tok[1]
        else:
            raise GraphFormatError(f"unknown record {kind!r}", lineno)

    g = EdgeIndexedGraph(names, origin, terminus, index, base=base,
                         truncated=truncated)
    if not g.is_connected:
        warnings.warn("graph is disconnected", DisconnectedGraphWarning, stacklevel=2)
    return g


def serialize_graph(g: EdgeIndexedGraph) -> str:
    lines = []
    for name, flag in zip(g.vertices, g.truncated.tolist()):
        lines.append(f"v {name} truncated" if flag else f"v {name}")
    names = g.vertices
    o = g.origin.tolist()
    t = g.terminus.tolist()
    idx = g.index.tolist()
    for k in range(0, len(o), 2):
        lines.append(f"e {names[o[k]]} {names[t[k]]} {idx[k]} {idx[k + 1]}")
    if g.base is not None:
        lines.append(f"base {g.base}")
    return "\n".join(lines)


def from_edge_list(vertices: Iterable[str], edges: Iterable[tuple],
                   base: Optional[str] = None) -> EdgeIndexedGraph:
    """Build a graph from ``(u, v)`` or ``(u, v, i_uv, i_vu)`` tuples."""
    vertices = list(vertices)
    pos = {v: k for k, v in enumerate(vertices)}
    origin, terminus, index = [], [], []
    for edge in edges:
        u, v = edge[0], edge[1]
        a, b = (edge[2], edge[3]) if len(edge) == 4 else (1, 1)
        try:
            origin += [pos[u], pos[v]]
        except KeyError as exc:
            raise MissingVertexError(exc.args[0]) from None
        terminus += [pos[v], pos[u]]
        index += [a, b]
    return EdgeIndexedGraph(vertices, origin, terminus, index, base=base)


def merge(g1: EdgeIndexedGraph, x: str, g2: EdgeIndexedGraph, y: str) -> EdgeIndexedGraph:
    """Identify vertex ``x`` of ``g1`` with vertex ``y`` of ``g2``.

    The merged vertex keeps the name ``x``.  Names of ``g2`` that clash with
    names already taken get primes appended until unique.  ``g1``'s vertices
    come first, followed by the rest of ``g2`` in order; likewise for edges.
    """
    p1, p2 = MergePoint(g1, x), MergePoint(g2, y)
    xi = p1.graph.vertex_index(x)
    yi = p2.graph.vertex_index(y)

    names = list(g1.vertices)
    taken = set(names)
    remap = np.empty(g2.num_vertices, dtype=np.int64)
    renamed = {}
    for k, name in enumerate(g2.vertices):
        if k == yi:
            remap[k] = xi
            continue
        new = name
        while new in taken:
            new += "'"
        taken.add(new)
        renamed[name] = new
        remap[k] = len(names)
        names.append(new)

    truncated = np.concatenate([
        g1.truncated, np.delete(g2.truncated, yi)]).copy()
    truncated[xi] = bool(g1.truncated[xi] or g2.truncated[yi])

    base = g1.base
    if base is None and g2.base is not None:
        base = x if g2.base == y else renamed[g2.base]

    return EdgeIndexedGraph(
        names,
        np.concatenate([g1.origin, remap[g2.origin]]),
        np.concatenate([g1.terminus, remap[g2.terminus]]),
        np.concatenate([g1.index, g2.index]),
        base=base,
        truncated=truncated,
    )


def cover_degree(g: EdgeIndexedGraph, v: str) -> int:
    """Degree of any lift of ``v`` in the universal covering tree."""
    return int(g.cover_degrees[g.vertex_index(v)])


def is_regular_cover(g: EdgeIndexedGraph, q: int) -> bool:
    """True iff every non-truncated vertex has cover degree ``q + 1``."""
    live = ~g.truncated
    return bool(np.all(g.cover_degrees[live] == q + 1))
