"""Graph generators shared by the test modules."""
import itertools
import random

from hypothesis import strategies as st

from critex.graph import from_edge_list
from critex.growth import bouquet, complete_graph, cycle_graph
from critex.zeta import dumbbell


def names(n):
    return [f"v{k}" for k in range(n)]


@st.composite
def indexed_graphs(draw, max_vertices=5, max_extra=4, max_index=3, loops=True):
    """Connected edge-indexed graph: random spanning tree plus extra edges."""
    n = draw(st.integers(1, max_vertices))
    vs = names(n)
    edges = []
    for k in range(1, n):
        edges.append((vs[draw(st.integers(0, k - 1))], vs[k]))
    extra = draw(st.integers(0 if n > 1 else 1, max_extra))
    for _ in range(extra):
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(0, n - 1))
        if a == b and not loops:
            continue
        edges.append((vs[a], vs[b]))
    idx = st.integers(1, max_index)
    full = [(u, v, draw(idx), draw(idx)) for u, v in edges]
    return from_edge_list(vs, full, base=vs[0])


def random_min_degree_two(rng: random.Random, max_vertices=6):
    """Connected unweighted multigraph with every degree >= 2 (loops count 2)."""
    while True:
        n = rng.randint(1, max_vertices)
        vs = names(n)
        edges = [(vs[rng.randrange(k)], vs[k]) for k in range(1, n)]
        edges += [(vs[rng.randrange(n)], vs[rng.randrange(n)])
                  for _ in range(rng.randint(1, n + 2))]
        deg = [0] * n
        for u, v in edges:
            deg[int(u[1:])] += 1
            deg[int(v[1:])] += 1
        if min(deg) >= 2:
            return from_edge_list(vs, edges, base=vs[0])


def named_suite():
    """Small unweighted graphs used throughout the zeta checks."""
    out = {"K4": complete_graph(4)}
    for n in range(3, 7):
        out[f"C{n}"] = cycle_graph(n)
    out["bouquet2"] = bouquet(2)
    out["bouquet3"] = bouquet(3)
    out["D(3,3,1)"] = dumbbell(3, 3, 1)
    out["D(3,4,2)"] = dumbbell(3, 4, 2)
    return out


def multigraph_shapes(max_vertices=4, max_edges=4):
    """Connected loop-multigraphs up to isomorphism, as (n, sorted edge tuple)."""
    seen = set()
    out = []
    for n in range(1, max_vertices + 1):
        pairs = [(a, b) for a in range(n) for b in range(a, n)]
        perms = list(itertools.permutations(range(n)))
        for m in range(max(n - 1, 1), max_edges + 1):
            for combo in itertools.combinations_with_replacement(pairs, m):
                if not _connected(n, combo):
                    continue
                key = min(tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in combo))
                          for p in perms)
                if (n, key) in seen:
                    continue
                seen.add((n, key))
                out.append((n, key))
    return out


def _connected(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(x) for x in range(n)}) == 1
