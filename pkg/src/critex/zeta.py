"""Ihara zeta functions, non-backtracking cycle counts and primes of finite graphs."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Optional

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import _kernels
from .graph import EdgeIndexedGraph, GraphError, from_edge_list
from .growth import perron_root, trace_counts, transfer_operator
from .polynomial import ONE, IntPolynomial, RootInterval, U, bareiss_det


class ZetaError(ValueError):
    pass


class DegenerateSpectrumError(ZetaError):
    def __init__(self, message: str = "degenerate spectrum"):
        super().__init__(message)


def _require_plain(a: EdgeIndexedGraph):
    if not a.is_connected:
        raise GraphError("graph must be connected")
    if not a.is_unweighted:
        raise ZetaError("graph carries indices other than 1")
    if a.truncated.any():
        raise ZetaError("graph has truncated vertices")
    if np.any(a.degrees == 1):
        raise ZetaError("graph has degree-1 vertices")


def adjacency_matrices(a: EdgeIndexedGraph):
    """(Adj, Q, χ): loops add 2 to the diagonal of Adj and to the degree."""
    _require_plain(a)
    n = a.num_vertices
    adj = [[0] * n for _ in range(n)]
    for o, t in zip(a.origin.tolist(), a.terminus.tolist()):
        adj[o][t] += 1
    q = [[0] * n for _ in range(n)]
    for v, d in enumerate(a.degrees.tolist()):
        q[v][v] = d - 1
    chi = a.num_edges - a.num_vertices + 1
    return adj, q, chi


def ihara_polynomial(a: EdgeIndexedGraph) -> IntPolynomial:
    """det(I - Adj·u + Q·u²)."""
    adj, q, _ = adjacency_matrices(a)
    n = len(adj)
    u2 = U * U
    mat = [[(ONE if i == j else IntPolynomial()) - U * adj[i][j] + u2 * q[i][j]
            for j in range(n)] for i in range(n)]
    return bareiss_det(mat)


def hashimoto_polynomial(a: EdgeIndexedGraph) -> IntPolynomial:
    """det(I - u·W) for the oriented line graph adjacency W."""
    _require_plain(a)
    return transfer_operator(a).characteristic_polynomial()


def bass_factor(a: EdgeIndexedGraph) -> IntPolynomial:
    """(1 - u²)^(|E| - |V|)."""
    return IntPolynomial((1, 0, -1)) ** (a.num_edges - a.num_vertices)


@dataclass(frozen=True)
class ZetaReport:
    num_vertices: int
    num_edges: int
    chi: int
    det_poly: IntPolynomial
    w_poly: IntPolynomial
    bass_identity: bool
    R: Optional[RootInterval]
    lambda_max: Optional[float]
    exact_lambda: Optional[int]
    delta_gcd: int
    primes: dict = field(default_factory=dict)

    @property
    def R_value(self) -> Optional[float]:
        return None if self.R is None else self.R.value

    def inverse_zeta(self) -> IntPolynomial:
        """1/Z(u) as an exact polynomial."""
        return self.w_poly


def ihara_zeta(a: EdgeIndexedGraph, degree: int = 8) -> ZetaReport:
    det_poly = ihara_polynomial(a)
    w_poly = hashimoto_polynomial(a)
    bass = w_poly == bass_factor(a) * det_poly
    if not bass:
        raise AssertionError("Bass determinant identity failed")
    root, k, _ = perron_root(w_poly)
    if root is None:
        raise ZetaError("no positive root: graph has no cycles")
    lam = float(k) if k is not None else 1 / root.value
    primes = enumerate_primes(a, degree) if degree > 0 else None
    return ZetaReport(
        a.num_vertices, a.num_edges, a.num_edges - a.num_vertices + 1,
        det_poly, w_poly, bass, root, lam, k, cycle_length_gcd(a),
        dict(enumerate(primes.counts[1:], start=1)) if primes else {},
    )


def cycle_counts(a: EdgeIndexedGraph, max_len: int) -> list:
    """N(m) = tr(W^m) for m = 1..max_len."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if not a.is_unweighted:
        raise ZetaError("graph carries indices other than 1")
    return trace_counts(a, max_len)


def _csr(a: EdgeIndexedGraph):
    ptr = np.zeros(a.num_vertices + 1, dtype=np.int64)
    np.cumsum(np.bincount(a.origin, minlength=a.num_vertices), out=ptr[1:])
    order = np.argsort(a.origin, kind="stable").astype(np.int64)
    return (np.ascontiguousarray(a.origin), np.ascontiguousarray(a.terminus), ptr, order)


def brute_force_cycle_counts(a: EdgeIndexedGraph, max_len: int, guard: Optional[int] = None) -> list:
    """Enumerate closed non-backtracking tail-less edge sequences directly."""
    if not a.is_unweighted:
        raise ZetaError("graph carries indices other than 1")
    counts = _kernels.closed_walk_counts(*_csr(a), max_len, guard)
    return list(counts[1:])


@dataclass(frozen=True)
class PrimeTable:
    max_len: int
    counts: list            # counts[n] = π(n), counts[0] = 0
    delta: int              # gcd of the lengths found (0 if none)
    cycles: Optional[list] = None

    def pi(self, n: int) -> int:
        return self.counts[n]


def enumerate_primes(a: EdgeIndexedGraph, max_len: int, collect: bool = False,
                     guard: Optional[int] = None) -> PrimeTable:
    """Primes of length <= max_len, one Lyndon-minimal edge sequence per class.

    A prime and its inverse are different classes.
    """
    if not a.is_unweighted:
        raise ZetaError("graph carries indices other than 1")
    arrays = _csr(a)
    cycles = None
    if collect:
        cycles = list(_kernels.iter_prime_cycles(*arrays, max_len, guard))
        counts = [0] * (max_len + 1)
        for w in cycles:
            counts[len(w)] += 1
    else:
        counts = list(_kernels.prime_cycle_counts(*arrays, max_len, guard))
    lengths = [n for n, c in enumerate(counts) if c]
    return PrimeTable(max_len, counts, reduce(math.gcd, lengths, 0), cycles)


def mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def primes_from_traces(traces: list) -> list:
    """π(n) = (1/n) Σ_{d|n} μ(n/d) N(d), with traces[m-1] = N(m)."""
    out = [0]
    for n in range(1, len(traces) + 1):
        total = sum(mobius(n // d) * traces[d - 1] for d in range(1, n + 1) if n % d == 0)
        if total % n:
            raise ArithmeticError("trace sequence is not a prime-count sequence")
        out.append(total // n)
    return out


def cycle_length_gcd(a: EdgeIndexedGraph) -> int:
    """gcd of all closed non-backtracking cycle lengths (the period of W)."""
    n = a.num_oriented_edges
    rows, cols = [], []
    term = a.terminus.tolist()
    adj = a.adjacency_lists
    for e in range(n):
        for f in adj[term[e]]:
            if f != e ^ 1:
                rows.append(e)
                cols.append(f)
    if not rows:
        return 0
    w = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n)).tocsr()
    ncomp, label = connected_components(w, directed=True, connection="strong")
    succ = [[] for _ in range(n)]
    for e, f in zip(rows, cols):
        if label[e] == label[f]:
            succ[e].append(f)
    result = 0
    for comp in range(ncomp):
        members = np.flatnonzero(label == comp).tolist()
        root = members[0]
        if not succ[root]:
            continue
        level = {root: 0}
        stack = [root]
        while stack:
            e = stack.pop()
            for f in succ[e]:
                if f not in level:
                    level[f] = level[e] + 1
                    stack.append(f)
        for e in members:
            for f in succ[e]:
                result = math.gcd(result, level[e] + 1 - level[f])
    return abs(result)


@dataclass(frozen=True)
class PGTTable:
    """Rows (n, nΔ, π(nΔ), nΔ·π(nΔ)·R^(nΔ)).

    The last column tends to Δ, so ``normalized`` divides it by Δ and the tail
    diagnostics measure the distance of the normalized values from 1.
    """

    delta: int
    R: RootInterval
    rows: list
    tail_deviation: float
    tail_monotone: bool

    def value(self, n: int) -> float:
        return self.rows[n - 1][3]

    def normalized(self, n: int) -> float:
        return self.rows[n - 1][3] / self.delta


def pgt_check(a: EdgeIndexedGraph, nmax: int, window: int = 10) -> PGTTable:
    """Tabulate nΔ·π(nΔ)·R^(nΔ) for n = 1..nmax."""
    _require_plain(a)
    if np.all(a.degrees == 2):
        raise DegenerateSpectrumError()
    delta = cycle_length_gcd(a)
    w_poly = hashimoto_polynomial(a)
    root, k, _ = perron_root(w_poly)
    if root is None:
        raise DegenerateSpectrumError()
    traces = trace_counts(a, nmax * delta)
    pi = primes_from_traces(traces)
    rows = []
    for n in range(1, nmax + 1):
        length = n * delta
        p = pi[length]
        if k is not None:
            val = float(Fraction(length * p, k ** length))
        elif p == 0:
            val = 0.0
        else:
            val = math.exp(math.log(length * p) + length * math.log(root.value))
        rows.append((n, length, p, val))
    tail = [r[3] / delta for r in rows[-window:]]
    dev = max(abs(v - 1) for v in tail)
    diffs = [abs(b - 1) - abs(a - 1) for a, b in zip(tail, tail[1:])]
    return PGTTable(delta, root, rows, dev, all(d <= 0 for d in diffs))


def dumbbell(a: int, b: int, n: int) -> EdgeIndexedGraph:
    """Cycles of lengths a and b joined by a path of n edges."""
    if a < 1 or b < 1 or n < 1:
        raise ValueError("need a, b, n >= 1")
    left = [f"a{k}" for k in range(a)]
    right = [f"b{k}" for k in range(b)]
    path = [left[0]] + [f"p{k}" for k in range(1, n)] + [right[0]]
    edges = [(left[k], left[(k + 1) % a]) for k in range(a)]
    edges += [(right[k], right[(k + 1) % b]) for k in range(b)]
    edges += [(path[k], path[k + 1]) for k in range(n)]
    return from_edge_list(left + path[1:-1] + right, edges, base=left[0])
