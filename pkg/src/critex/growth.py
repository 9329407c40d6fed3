"""Orbit growth in universal covering trees of edge-indexed graphs.

The weighted non-backtracking transfer operator B acts on oriented edges:

    B[e][f] = i(f)        if ∂₀f = ∂₁e and f ≠ ē
    B[e][ē] = i(ē) - 1

A lift of e ends at a lift of ∂₁e, which has i(f) outgoing lifts of each f
leaving ∂₁e; one lift of ē is the way back, so only i(ē) - 1 of those
continue a geodesic.  Pushing the initial mass i(e) on edges leaving the
base vertex through B therefore counts geodesics of the cover exactly.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np

from . import _kernels
from .graph import EdgeIndexedGraph, from_edge_list
from .grouping import VertexOrdering, verify_ordering
from .polynomial import (ONE, U, IntPolynomial, RootInterval, bareiss_det,
                         isolate_smallest_positive_root)

Real = Union[Fraction, float]


class GrowthError(ValueError):
    pass


class TruncationError(GrowthError):
    """A requested depth would step out of a truncated vertex."""


# ---------------------------------------------------------------------------
# transfer operator
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransferOperator:
    graph: EdgeIndexedGraph

    @property
    def dim(self) -> int:
        return self.graph.num_oriented_edges

    def entry(self, e: int, f: int) -> int:
        g = self.graph
        if g.origin[f] != g.terminus[e]:
            return 0
        if f == e ^ 1:
            return int(g.index[f]) - 1
        return int(g.index[f])

    def to_dense(self) -> list:
        g = self.graph
        n = self.dim
        idx = g.index.tolist()
        term = g.terminus.tolist()
        adj = g.adjacency_lists
        rows = []
        for e in range(n):
            row = [0] * n
            for f in adj[term[e]]:
                row[f] = idx[f] - 1 if f == e ^ 1 else idx[f]
            rows.append(row)
        return rows

    def row_sums(self) -> np.ndarray:
        g = self.graph
        return g.cover_degrees[g.terminus] - 1

    def apply(self, mass: np.ndarray) -> np.ndarray:
        """Row vector(s) times B."""
        g = self.graph
        new, _ = _kernels.nb_step(mass, g.origin, g.terminus, g.index, g.num_vertices)
        return new

    def characteristic_polynomial(self) -> IntPolynomial:
        """det(I - u·B) as an exact integer polynomial in u."""
        dense = self.to_dense()
        n = len(dense)
        mat = [[(ONE if e == f else IntPolynomial()) - U * dense[e][f]
                for f in range(n)] for e in range(n)]
        return bareiss_det(mat)


def transfer_operator(g: EdgeIndexedGraph) -> TransferOperator:
    return TransferOperator(g)


def _dtype_for(bound: int):
    return np.int64 if bound < _kernels.INT64_SAFE else object


# ---------------------------------------------------------------------------
# sphere counts and traces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SphereCounts:
    """S_m(v): number of lifts of v at distance m from a fixed lift of the base."""

    base: str
    depth: int
    totals: list
    table: dict

    def __getitem__(self, key):
        v, m = key
        return self.table[v][m]

    def cumulative(self, vertex: Optional[str] = None) -> list:
        seq = self.totals if vertex is None else self.table[vertex]
        out, acc = [], 0
        for x in seq:
            acc += x
            out.append(acc)
        return out


def sphere_counts(g: EdgeIndexedGraph, base: Optional[str] = None, depth: int = 1,
                  vertices: Optional[Sequence[str]] = None) -> SphereCounts:
    """Sphere sizes around a lift of ``base`` in the covering tree, per quotient vertex.

    ``vertices`` restricts the per-vertex table (all vertices by default).
    Refuses any depth that would step out of a truncated vertex.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    base = base if base is not None else (g.base or g.vertices[0])
    b = g.vertex_index(base)
    if vertices is None:
        vertices = list(g.vertices)
    rows = np.array([g.vertex_index(v) for v in vertices], dtype=np.int64)
    truncated = g.truncated

    start = np.where(g.origin == b, g.index, 0)
    max_row = int(g.cover_degrees.max(initial=1)) - 1
    bound = int(start.sum()) * max(max_row, 1) ** max(depth - 1, 0) + 1
    dtype = _dtype_for(bound)
    mass = start.astype(dtype)

    s0 = np.zeros(g.num_vertices, dtype=dtype)
    s0[b] = 1
    if depth > 0 and truncated[b]:
        raise TruncationError(f"base {base!r} is truncated")
    table_cols = [s0[rows]]
    totals = [1]
    for m in range(1, depth + 1):
        new, sphere = _kernels.nb_step(mass, g.origin, g.terminus, g.index,
                                       g.num_vertices)
        if m < depth and np.any(sphere[truncated] != 0):
            raise TruncationError(
                f"depth {depth} exceeds the non-truncated radius ({m}) around {base!r}")
        table_cols.append(sphere[rows])
        totals.append(int(sphere.sum()))
        mass = new
    table = {}
    cols = [c.tolist() for c in table_cols]
    for k, v in enumerate(vertices):
        table[v] = [int(col[k]) for col in cols]
    return SphereCounts(base, depth, totals, table)


def return_counts(g: EdgeIndexedGraph, base: Optional[str], max_len: int) -> list:
    """S_m(base) for m = 1..max_len: weighted non-backtracking walks base -> base."""
    base = base if base is not None else (g.base or g.vertices[0])
    sc = sphere_counts(g, base, max_len, vertices=[base])
    return sc.table[base][1:]


def trace_counts(g: EdgeIndexedGraph, max_len: int) -> list:
    """tr(B^m) for m = 1..max_len, by propagating every unit row vector."""
    n = g.num_oriented_edges
    if n == 0:
        return [0] * max_len
    max_row = max(int(g.cover_degrees.max()) - 1, 1)
    dtype = _dtype_for(max_row ** max_len * n + 1)
    x = np.eye(n, dtype=np.int64).astype(dtype)
    out = []
    diag = np.arange(n)
    for _ in range(max_len):
        x, _ = _kernels.nb_step(x, g.origin, g.terminus, g.index, g.num_vertices)
        out.append(int(sum(x[diag, diag].tolist())))
    return out


# ---------------------------------------------------------------------------
# partitions of the positive integers
# ---------------------------------------------------------------------------

def _bits(text: str) -> tuple:
    if any(ch not in "01" for ch in text):
        raise ValueError(f"expected a 0/1 string, got {text!r}")
    return tuple(int(ch) for ch in text)


@dataclass(frozen=True)
class PartitionSpec:
    """Indicator a_n (n >= 1) of a subset I of the positive integers.

    ``periodic``: explicit prefix bits followed by a repeating period.
    ``beatty``: a_n = floor(nθ) - floor((n-1)θ), density θ.
    """

    kind: str
    prefix: tuple = ()
    period: tuple = ()
    theta: Optional[Real] = None

    def __post_init__(self):
        if self.kind == "periodic":
            if not self.period:
                raise ValueError("period must be non-empty")
            if any(b not in (0, 1) for b in self.prefix + self.period):
                raise ValueError("bits must be 0 or 1")
        elif self.kind == "beatty":
            if self.theta is None or not 0 <= self.theta <= 1:
                raise ValueError("beatty density must lie in [0, 1]")
        else:
            raise ValueError(f"unknown partition kind {self.kind!r}")

    @classmethod
    def periodic(cls, period: Union[str, Sequence[int]],
                 prefix: Union[str, Sequence[int]] = ()) -> "PartitionSpec":
        period = _bits(period) if isinstance(period, str) else tuple(period)
        prefix = _bits(prefix) if isinstance(prefix, str) else tuple(prefix)
        return cls("periodic", prefix=prefix, period=period)

    @classmethod
    def beatty(cls, theta: Union[Real, int, str]) -> "PartitionSpec":
        if isinstance(theta, (str, int)):
            theta = Fraction(theta)
        return cls("beatty", theta=theta)

    @classmethod
    def from_set(cls, members, length: int) -> "PartitionSpec":
        """Finite set I within 1..length, followed by J forever."""
        members = set(members)
        return cls.periodic((0,), tuple(int(n in members) for n in range(1, length + 1)))

    @classmethod
    def parse(cls, spec: str) -> "PartitionSpec":
        """``periodic:<period>``, ``periodic:<prefix>/<period>`` or ``beatty:<theta>``."""
        kind, _, body = spec.partition(":")
        if kind == "periodic":
            prefix, slash, period = body.partition("/")
            if not slash:
                prefix, period = "", body
            return cls.periodic(period, prefix)
        if kind == "beatty":
            try:
                return cls.beatty(Fraction(body))
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"bad density {body!r}") from None
        raise ValueError(f"bad partition spec {spec!r}")

    def __str__(self) -> str:
        if self.kind == "periodic":
            per = "".join(map(str, self.period))
            if self.prefix:
                return f"periodic:{''.join(map(str, self.prefix))}/{per}"
            return f"periodic:{per}"
        return f"beatty:{self.theta}"

    def indicator(self, n: int) -> int:
        if n < 1:
            raise ValueError("indices start at 1")
        if self.kind == "periodic":
            if n <= len(self.prefix):
                return self.prefix[n - 1]
            return self.period[(n - 1 - len(self.prefix)) % len(self.period)]
        th = Fraction(self.theta)
        return math.floor(n * th) - math.floor((n - 1) * th)

    def bits(self, n: int) -> list:
        """a_1 .. a_n."""
        return [self.indicator(k) for k in range(1, n + 1)]

    def partial_sums(self, n: int) -> list:
        """s_0 .. s_n with s_k = a_1 + ... + a_k."""
        out = [0]
        for a in self.bits(n):
            out.append(out[-1] + a)
        return out

    def density(self) -> Real:
        if self.kind == "periodic":
            return Fraction(sum(self.period), len(self.period))
        return self.theta


def predicted_orbit_count(q: int, partition: PartitionSpec, n: int) -> int:
    """Lifts of x₀ at distance 2n in the ray construction (stabilizer factored out)."""
    if q < 2 or n < 1:
        raise ValueError("need q >= 2 and n >= 1")
    if not partition.indicator(n):
        return 0
    s_n = partition.partial_sums(n)[-1]
    return (q - 1) * q ** (s_n - 1)


def cumulative_orbit_counts(q: int, partition: PartitionSpec, n_max: int) -> list:
    """C(d) = #lifts of x₀ within distance d, for d = 0 .. 2·n_max, in closed form."""
    if q < 2:
        raise ValueError("need q >= 2")
    s = partition.partial_sums(n_max)
    a = partition.bits(n_max)
    out = [1]
    for n in range(1, n_max + 1):
        out.append(out[-1])
        gain = (q - 1) * q ** (s[n] - 1) if a[n - 1] else 0
        out.append(out[-1] + gain)
    return out


# ---------------------------------------------------------------------------
# exponents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExactExponent:
    """δ = coefficient · log q, with the coefficient kept exact when rational."""

    coefficient: Real
    q: int

    @property
    def value(self) -> float:
        return float(self.coefficient) * math.log(self.q)

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        return f"{self.coefficient}*log({self.q})"


def _snap_rational(x: float, max_den: int = 10 ** 6, tol: float = 1e-12) -> Real:
    fr = Fraction(x).limit_denominator(max_den)
    return fr if abs(float(fr) - x) <= tol else x


def target_partition(delta: float, q: int) -> PartitionSpec:
    """Beatty partition of density 2δ/log q, realizing exponent δ."""
    if q < 2:
        raise ValueError("need q >= 2")
    top = 0.5 * math.log(q)
    if delta < 0 or delta > top * (1 + 1e-12):
        raise ValueError(f"delta must lie in [0, {top}] for q = {q}")
    theta = _snap_rational(min(2 * delta / math.log(q), 1.0))
    return PartitionSpec.beatty(theta)


def exact_delta_of_partition(q: int, partition: PartitionSpec) -> ExactExponent:
    density = partition.density()
    return ExactExponent(density / 2, q)


@dataclass(frozen=True)
class DeltaEstimate:
    value: float
    n: int
    tail: list
    all_zero: bool = False


def estimate_delta(counts: Sequence[int], window: int = 10) -> DeltaEstimate:
    """log C(n) / n at the last index of cumulative counts C(0), C(1), ...."""
    counts = [int(c) for c in counts]
    if any(b < a for a, b in zip(counts, counts[1:])):
        raise ValueError("cumulative counts must be nondecreasing")
    n = len(counts) - 1
    if n < 1 or counts[-1] == 0:
        return DeltaEstimate(0.0, max(n, 0), [], all_zero=not any(counts))
    tail = [math.log(counts[k]) / k for k in range(max(1, n - window + 1), n + 1)
            if counts[k] > 0]
    return DeltaEstimate(math.log(counts[-1]) / n, n, tail)


@dataclass(frozen=True)
class SpectralDelta:
    value: float
    lambda_max: float
    root: RootInterval
    certificate: IntPolynomial
    exact_lambda: Optional[int] = None
    cofactor: Optional[IntPolynomial] = None


def _check_finite_core(g: EdgeIndexedGraph):
    if not g.is_connected:
        raise GrowthError("graph must be connected")
    if g.truncated.any():
        raise GrowthError("graph has truncated vertices")
    if np.any(g.degrees == 1):
        raise GrowthError("graph has degree-1 vertices")
    if g.num_edges < g.num_vertices:
        raise GrowthError("graph is acyclic (no growth)")


def perron_root(w_poly: IntPolynomial, tol=Fraction(1, 10 ** 15)):
    """Smallest positive root of det(I - uB), with an integer-eigenvalue check.

    Returns ``(interval, exact_lambda, cofactor)``; when 1/u is an integer k
    that divides out as the factor (1 - k·u), the interval has zero width.
    """
    root = isolate_smallest_positive_root(w_poly, tol)
    if root is None:
        return None, None, None
    lo, hi = root.lo, root.hi
    k_lo = math.floor(1 / hi) if hi else 1
    k_hi = math.ceil(1 / lo) if lo else k_lo + 1
    for k in range(max(k_lo, 1), k_hi + 1):
        factor = IntPolynomial((1, -k))
        if factor.divides(w_poly):
            r = Fraction(1, k)
            if (lo < r <= hi) or root.exact and r == lo:
                return RootInterval(r, r), k, w_poly.exact_div(factor)
    return root, None, None


def spectral_delta(g: EdgeIndexedGraph) -> SpectralDelta:
    """log of the Perron value of B, certified by the exact det(I - uB)."""
    _check_finite_core(g)
    w_poly = transfer_operator(g).characteristic_polynomial()
    root, k, cofactor = perron_root(w_poly)
    if root is None:
        raise GrowthError("transfer operator is nilpotent (no growth)")
    if k is not None:
        lam = float(k)
        value = math.log(k)
    else:
        lam = 1 / root.value
        value = -math.log(root.value)
    return SpectralDelta(value, lam, root, w_poly, k, cofactor)


# ---------------------------------------------------------------------------
# the ray construction
# ---------------------------------------------------------------------------

class RayNames(Sequence):
    """Vertex names of a ray construction, generated on demand.

    Ray vertices are ``x0 .. xD``; the tree hung at x₀ uses ``tp.<k>`` and
    the tree hung at xₙ uses ``tz<n>.<k>`` (k >= 1, breadth-first).
    """

    def __init__(self, depth: int, blocks: list):
        self._depth = depth
        self._blocks = blocks                 # (start, count, prefix)
        self._starts = [b[0] for b in blocks]
        self._by_prefix = {b[2]: b for b in blocks}
        self._len = depth + 1 + sum(b[1] for b in blocks)

    def __len__(self) -> int:
        return self._len

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self[j] for j in range(*k.indices(self._len))]
        if k < 0:
            k += self._len
        if not 0 <= k < self._len:
            raise IndexError(k)
        if k <= self._depth:
            return f"x{k}"
        j = bisect.bisect_right(self._starts, k) - 1
        start, _, prefix = self._blocks[j]
        return f"{prefix}{k - start + 1}"

    def position(self, name: str) -> int:
        if name.startswith("x") and name[1:].isdigit():
            n = int(name[1:])
            if n <= self._depth and name == f"x{n}":
                return n
        head, dot, tail = name.rpartition(".")
        if dot and tail.isdigit():
            block = self._by_prefix.get(head + ".")
            k = int(tail)
            if block is not None and 1 <= k <= block[1] and tail == str(k):
                return block[0] + k - 1
        raise KeyError(name)


@lru_cache(maxsize=64)
def _tree_template(root_children: int, q: int, budget: int):
    """Parents of a breadth-first rooted tree, root 0.

    The root has ``root_children`` children, every other vertex ``q``; levels
    run to ``budget``.  Returns (parent[1:], mask of vertices on the last level).
    """
    parents = [np.zeros(0, dtype=np.int64)]
    level_nodes = np.array([0], dtype=np.int64)
    next_id = 1
    last = np.zeros(0, dtype=np.int64)
    for level in range(1, budget + 1):
        fan = root_children if level == 1 else q
        count = len(level_nodes) * fan
        if count == 0:
            break
        par = np.repeat(level_nodes, fan)
        ids = np.arange(next_id, next_id + count, dtype=np.int64)
        parents.append(par)
        next_id += count
        level_nodes = ids
        last = ids
    parent = np.concatenate(parents)
    leaf = np.zeros(len(parent), dtype=bool)
    if len(last):
        leaf[last - 1] = True
    parent.setflags(write=False)
    leaf.setflags(write=False)
    return parent, leaf


@dataclass(frozen=True)
class RayQuotient:
    graph: EdgeIndexedGraph
    depth: int
    q: int
    partition: PartitionSpec
    ray: list
    N: np.ndarray = field(repr=False)
    partial_sums: list = field(repr=False)

    @property
    def ray_N(self) -> list:
        return [int(x) for x in self.N[: self.depth + 1].tolist()]

    def ordering(self) -> VertexOrdering:
        return VertexOrdering({v: int(n) for v, n in zip(self.graph.vertices, self.N.tolist())})


def build_ray_quotient(q: int, partition: PartitionSpec, depth: int) -> RayQuotient:
    """Ray x₀..x_D with index q on xₙ -> xₙ₋₁ for n in I, trees hung to fill degrees.

    The tree at x₀ has q branches and the tree at xₙ (n in J) has q - 1; both are
    (q+1)-regular below their root and expanded to the remaining depth budget.
    Vertices on the budget boundary are marked truncated.
    """
    if q < 2 or depth < 1:
        raise ValueError("need q >= 2 and depth >= 1")
    a = partition.bits(depth)
    s = partition.partial_sums(depth)

    origin = [np.empty(2 * depth, dtype=np.int64)]
    origin[0][0::2] = np.arange(depth)
    origin[0][1::2] = np.arange(1, depth + 1)
    terminus = [origin[0].reshape(-1, 2)[:, ::-1].reshape(-1).copy()]
    index = [np.ones(2 * depth, dtype=np.int64)]
    index[0][1::2] = np.where(np.array(a, dtype=bool), q, 1)

    n_dtype = _dtype_for(q ** (s[-1] + 1))
    ray_n = np.array([q ** k for k in s], dtype=object).astype(n_dtype)
    n_parts = [ray_n]
    truncated = [np.zeros(depth + 1, dtype=bool)]
    truncated[0][depth] = True

    blocks = []
    offset = depth + 1
    attachments = [(0, q, depth, "tp.")]
    attachments += [(n, q - 1, depth - n, f"tz{n}.") for n in range(1, depth)
                    if not a[n - 1]]
    for at, fan, budget, prefix in attachments:
        parent, leaf = _tree_template(fan, q, budget)
        count = len(parent)
        if count == 0:
            continue
        gid_parent = np.where(parent == 0, at, parent + offset - 1)
        gid_node = np.arange(offset, offset + count, dtype=np.int64)
        o = np.empty(2 * count, dtype=np.int64)
        o[0::2] = gid_parent
        o[1::2] = gid_node
        t = np.empty(2 * count, dtype=np.int64)
        t[0::2] = gid_node
        t[1::2] = gid_parent
        origin.append(o)
        terminus.append(t)
        index.append(np.ones(2 * count, dtype=np.int64))
        n_parts.append(np.full(count, ray_n[at], dtype=n_dtype))
        truncated.append(leaf)
        blocks.append((offset, count, prefix))
        offset += count

    names = RayNames(depth, blocks)
    g = EdgeIndexedGraph(names, np.concatenate(origin), np.concatenate(terminus),
                         np.concatenate(index), base="x0",
                         truncated=np.concatenate(truncated))
    N = np.concatenate(n_parts)
    if not verify_ordering(g, N):
        raise AssertionError("ray construction violates the ordering equation")
    return RayQuotient(g, depth, q, partition, [f"x{k}" for k in range(depth + 1)], N, s)


def bouquet(loops: int, name: str = "v") -> EdgeIndexedGraph:
    """One vertex with ``loops`` unweighted loops."""
    return from_edge_list([name], [(name, name)] * loops, base=name)


def cycle_graph(n: int) -> EdgeIndexedGraph:
    names = [f"c{k}" for k in range(n)]
    return from_edge_list(names, [(names[k], names[(k + 1) % n]) for k in range(n)],
                          base=names[0])


def complete_graph(n: int) -> EdgeIndexedGraph:
    names = [f"k{k}" for k in range(n)]
    edges = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n)]
    return from_edge_list(names, edges, base=names[0])
