"""Both kernel backends must agree bit for bit."""
import numpy as np
import pytest

from critex import _kernels
from critex._kernels import GuardExceeded, _pykernels
from critex.growth import (PartitionSpec, bouquet, build_ray_quotient, complete_graph,
                           sphere_counts, trace_counts)
from critex.zeta import _csr, brute_force_cycle_counts, dumbbell, enumerate_primes

try:
    from critex._kernels import _ckernels
except ImportError:
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def test_backend_name():
    assert _kernels.BACKEND in ("cython", "python")


@needs_c
@pytest.mark.parametrize("shape", ["1d", "2d"])
def test_nb_step_parity(shape):
    g = build_ray_quotient(2, PartitionSpec.periodic("110"), 7).graph
    rng = np.random.default_rng(0)
    mass = rng.integers(0, 50, size=g.num_oriented_edges, dtype=np.int64)
    if shape == "2d":
        mass = rng.integers(0, 50, size=(3, g.num_oriented_edges), dtype=np.int64)
    a = _pykernels.nb_step(mass, g.origin, g.terminus, g.index, g.num_vertices)
    b = _ckernels.nb_step(mass, g.origin, g.terminus, g.index, g.num_vertices)
    for x, y in zip(a, b):
        assert np.array_equal(np.asarray(x), np.asarray(y))


@needs_c
@pytest.mark.parametrize("g", [complete_graph(4), bouquet(2), dumbbell(3, 4, 2)],
                         ids=["K4", "bouquet2", "D342"])
def test_dfs_parity(g):
    arrays = _csr(g)
    for fn in ("closed_walk_counts", "prime_cycle_counts"):
        a = getattr(_pykernels, fn)(*arrays, 8, 10 ** 8)
        b = getattr(_ckernels, fn)(*arrays, 8, 10 ** 8)
        assert list(a[0]) == list(b[0])


def test_sphere_counts_per_backend(backend):
    g = build_ray_quotient(3, PartitionSpec.periodic("10"), 9).graph
    sc = sphere_counts(g, "x0", 9, vertices=["x0"])
    assert sc.table["x0"] == [1, 0, 2, 0, 0, 0, 6, 0, 0, 0]


def test_trace_counts_per_backend(backend):
    assert trace_counts(complete_graph(4), 4) == [0, 0, 24, 24]


def test_guard(backend):
    with pytest.raises(GuardExceeded):
        brute_force_cycle_counts(bouquet(3), 8, guard=100)
    with pytest.raises(GuardExceeded):
        enumerate_primes(bouquet(3), 8, guard=100)


def test_guard_from_environment(monkeypatch, backend):
    monkeypatch.setenv("CRITEX_GUARD", "50")
    with pytest.raises(GuardExceeded):
        brute_force_cycle_counts(complete_graph(4), 8)


def test_object_dtype_falls_back():
    g = bouquet(2)
    mass = np.array([2 ** 70, 1, 1, 1], dtype=object)
    new, sphere = _kernels.nb_step(mass, g.origin, g.terminus, g.index, g.num_vertices)
    assert new.dtype == object and int(sphere[0]) == 2 ** 70 + 3
