"""Integral vertex orderings: certificates for finite groupings.

An edge-indexed graph admits a finite grouping iff there is a positive
integer function N on vertices with i(e) / i(ē) = N(∂₀e) / N(∂₁e) for every
oriented edge e.  When no such N exists we return a closed walk whose
index-ratio product differs from 1.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Mapping, Optional, Union

import numpy as np

from .graph import EdgeIndexedGraph, GraphError, MissingVertexError

#: Attached to every report that certifies an ordering.
DISCRETENESS_NOTE = "finite grouping exists => discrete realization exists"


@dataclass(frozen=True)
class VertexOrdering:
    values: Mapping[str, int]

    def __post_init__(self):
        for v, n in self.values.items():
            if n < 1:
                raise ValueError(f"N({v}) = {n} is not positive")

    def __getitem__(self, vertex: str) -> int:
        return self.values[vertex]

    def normalized(self) -> "VertexOrdering":
        g = reduce(gcd, self.values.values(), 0) or 1
        return VertexOrdering({v: n // g for v, n in self.values.items()})

    @property
    def is_normalized(self) -> bool:
        return reduce(gcd, self.values.values(), 0) == 1


@dataclass(frozen=True)
class NoGrouping:
    """A closed walk (oriented edge ids) whose ratio product is not 1."""

    witness: tuple
    product: Fraction


def cycle_ratio_product(g: EdgeIndexedGraph, walk) -> Fraction:
    """Product of i(e)/i(ē) along a sequence of oriented edges."""
    num, den = 1, 1
    idx = g.index
    for e in walk:
        num *= int(idx[e])
        den *= int(idx[e ^ 1])
    return Fraction(num, den)


def find_vertex_ordering(
    g: EdgeIndexedGraph, root: Optional[str] = None
) -> Union[VertexOrdering, NoGrouping]:
    """Propagate exact ratios over a BFS spanning tree, then check the rest.

    Returns the unique normalized ordering, or a ``NoGrouping`` carrying a
    fundamental cycle that violates the ratio condition.
    """
    if not g.is_connected:
        raise GraphError("find_vertex_ordering needs a connected graph")
    nv = g.num_vertices
    if nv == 0:
        return VertexOrdering({})
    r = 0 if root is None else g.vertex_index(root)
    origin = g.origin.tolist()
    terminus = g.terminus.tolist()
    index = g.index.tolist()
    adj = g.adjacency_lists

    value: list = [None] * nv
    parent_edge = [-1] * nv
    depth = [0] * nv
    value[r] = Fraction(1)
    queue = deque([r])
    while queue:
        u = queue.popleft()
        for e in adj[u]:
            v = terminus[e]
            if value[v] is None:
                value[v] = value[u] * index[e ^ 1] / index[e]
                parent_edge[v] = e
                depth[v] = depth[u] + 1
                queue.append(v)

    for e in range(len(origin)):
        u, v = origin[e], terminus[e]
        if parent_edge[v] == e or parent_edge[u] == e ^ 1:
            continue
        if index[e] * value[v] != index[e ^ 1] * value[u]:
            walk = _fundamental_cycle(e, origin, terminus, parent_edge, depth)
            return NoGrouping(tuple(walk), cycle_ratio_product(g, walk))

    scale = reduce(lcm, (x.denominator for x in value), 1)
    ints = [int(x * scale) for x in value]
    common = reduce(gcd, ints, 0)
    names = g.vertices
    return VertexOrdering({names[k]: n // common for k, n in enumerate(ints)})


def _fundamental_cycle(e, origin, terminus, parent_edge, depth):
    """Closed walk: tree path root-side from ∂₁e back to ∂₀e, closed by e."""
    # walk = e, then tree path from ∂₁e to ∂₀e
    a, b = terminus[e], origin[e]
    up_from_a, down_to_b = [], []
    while a != b:
        if depth[a] >= depth[b]:
            pe = parent_edge[a]
            up_from_a.append(pe ^ 1)   # step a -> parent(a)
            a = origin[pe]
        else:
            pe = parent_edge[b]
            down_to_b.append(pe)       # step parent(b) -> b
            b = origin[pe]
    return [e] + up_from_a + down_to_b[::-1]


def verify_ordering(g: EdgeIndexedGraph, ordering) -> bool:
    """Check i(e)·N(∂₁e) == i(ē)·N(∂₀e) on every oriented edge, exactly."""
    values = ordering.values if isinstance(ordering, VertexOrdering) else ordering
    if isinstance(values, np.ndarray):
        n = values
    else:
        n = np.empty(g.num_vertices, dtype=object)
        for k, name in enumerate(g.vertices):
            try:
                n[k] = int(values[name])
            except KeyError:
                raise MissingVertexError(name) from None
    if len(n) != g.num_vertices:
        raise GraphError("ordering length does not match vertex count")
    if n.dtype == np.int64 and len(n) and int(n.max()) * int(g.index.max(initial=1)) < 2 ** 62:
        idx = g.index
    else:
        n = n.astype(object)
        idx = g.index.astype(object)
    rev = idx.reshape(-1, 2)[:, ::-1].reshape(-1)
    lhs = idx * n[g.terminus]
    rhs = rev * n[g.origin]
    return bool(np.all(lhs == rhs))
