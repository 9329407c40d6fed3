"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat R]

Times one sphere-count pass over a large ray quotient and the closed-walk and
prime enumerations on small dense graphs, checking that both backends agree.
"""
import argparse
import time

import numpy as np

from critex._kernels import _pykernels
from critex.growth import PartitionSpec, build_ray_quotient, complete_graph, bouquet
from critex.zeta import _csr

try:
    from critex._kernels import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def sphere_pass(mod, g, depth):
    mass = np.where(g.origin == 0, g.index, 0).astype(np.int64)
    totals = []
    for _ in range(depth):
        mass, sphere = mod.nb_step(mass, g.origin, g.terminus, g.index, g.num_vertices)
        totals.append(int(sphere.sum()))
    return totals


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--depth", type=int, default=12)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the Python backend is available")

    rq = build_ray_quotient(3, PartitionSpec.periodic("10"), args.depth)
    g = rq.graph
    cases = [(f"nb_step ray q=3 depth={args.depth} ({g.num_vertices} vertices)",
              lambda m: sphere_pass(m, g, args.depth))]
    for name, h, length in [("K4", complete_graph(4), 10), ("bouquet3", bouquet(3), 7)]:
        arrays = _csr(h)
        cases.append((f"closed walks {name} m<={length}",
                      lambda m, a=arrays, n=length: m.closed_walk_counts(*a, n, 10 ** 9)[0]))
        cases.append((f"primes {name} m<={length}",
                      lambda m, a=arrays, n=length: m.prime_cycle_counts(*a, n, 10 ** 9)[0]))

    print(f"{'case':48s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, fn in cases:
        tp, outp = best_of(lambda: fn(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{label:48s} {tp:10.4f} {'-':>10s} {'-':>8s}")
            continue
        tc, outc = best_of(lambda: fn(_ckernels), args.repeat)
        if list(outp) != list(outc):
            raise SystemExit(f"backends disagree on {label}")
        print(f"{label:48s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
