import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from critex.graph import from_edge_list, merge
from critex.growth import (PartitionSpec, bouquet, build_ray_quotient, cycle_graph,
                           return_counts, sphere_counts, trace_counts)
from critex.series import (NoRoot, SeriesError, TruncatedSeries, add, alternating_block_sum,
                           div, genfun_from_counts, merge_genfun, mul, partition_series,
                           solve_unit_product)

M = 10
small = st.fractions(-5, 5, max_denominator=6)


def series(draw_list, degree=M):
    return TruncatedSeries(draw_list, degree)


coeffs = st.lists(small, min_size=M + 1, max_size=M + 1)
nonneg_ints = st.lists(st.integers(0, 4), min_size=M + 1, max_size=M + 1)


def test_geometric_identities():
    for deg in (0, 1, 5, 20):
        g = TruncatedSeries.geometric(deg, start=0)
        assert (TruncatedSeries([1, -1], deg) * g).coeffs == (1,) + (0,) * deg
    u = TruncatedSeries([0, 1], 8)
    assert div(u, 1 - u) == TruncatedSeries.geometric(8)


def test_division_by_zero_constant():
    with pytest.raises(SeriesError):
        TruncatedSeries([1, 1], 4) / TruncatedSeries([0, 1], 4)


def test_degree_mismatch():
    with pytest.raises(SeriesError):
        TruncatedSeries([1], 3) + TruncatedSeries([1], 4)


@given(coeffs, coeffs)
def test_mul_div_round_trip(f, g):
    f = series(f)
    g = series([1] + g[1:])
    assert div(mul(f, g), g) == f
    assert add(f, g) - g == f


@given(coeffs, coeffs, coeffs)
def test_ring_laws(a, b, c):
    a, b, c = series(a), series(b), series(c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


def test_genfun_examples():
    f = genfun_from_counts(return_counts(cycle_graph(3), None, 6))
    assert f.coeffs == (0, 0, 0, 2, 0, 0, 2)
    assert genfun_from_counts([0, 0, 0]) == TruncatedSeries([0], 3)


@pytest.mark.parametrize("q", [2, 3])
def test_weight_form_of_ray_series(q):
    p = PartitionSpec.periodic("110")
    f = partition_series(q, p, 9, "weight")
    s = p.partial_sums(9)
    assert f.coeffs == tuple([0] + [q ** s[m] for m in range(1, 10)])


@pytest.mark.parametrize("q", [2, 3])
def test_orbit_form_of_ray_series(q):
    p = PartitionSpec.periodic("10")
    f = partition_series(q, p, 10, "orbit")
    depth = 10
    rq = build_ray_quotient(q, p, depth)
    table = sphere_counts(rq.graph, "x0", depth, vertices=["x0"]).table["x0"]
    assert list(f.coeffs[1:]) == table[1:]


def test_merge_examples():
    z = TruncatedSeries([0], 8)
    assert merge_genfun(z, z) == z
    u = TruncatedSeries([0, 1], 8)
    assert merge_genfun(u, u) == 2 * TruncatedSeries.geometric(8)
    with pytest.raises(SeriesError):
        merge_genfun(TruncatedSeries([1, 1], 3), u.__class__([0, 1], 3))


@given(nonneg_ints, nonneg_ints)
def test_merge_symmetry_and_defining_identity(a, b):
    fx = series([0] + a[1:])
    fy = series([0] + b[1:])
    m = merge_genfun(fx, fy)
    assert m == merge_genfun(fy, fx)
    assert (1 - fx * fy) * m == fx + fy + 2 * fx * fy


@given(st.lists(st.integers(0, 5), min_size=8, max_size=8),
       st.lists(st.integers(0, 5), min_size=8, max_size=8))
def test_telescoping_sum(nx, ny):
    m = merge_genfun(genfun_from_counts(nx), genfun_from_counts(ny))
    assert [alternating_block_sum(nx, ny, k) for k in range(1, 9)] == list(m.coeffs[1:])


def _based(g, v, deg):
    return genfun_from_counts(return_counts(g, v, deg))


@pytest.mark.parametrize("pair", ["loops", "C3C4", "weighted"])
def test_merge_matches_return_counts(pair):
    if pair == "loops":
        x = y = from_edge_list("a", [("a", "a")])
        vx = vy = "a"
    elif pair == "C3C4":
        x, y, vx, vy = cycle_graph(3), cycle_graph(4), "c0", "c0"
    else:
        x = from_edge_list("a", [("a", "a", 2, 3)])
        y = from_edge_list("bc", [("b", "c", 1, 2), ("c", "b", 1, 1)])
        vx, vy = "a", "b"
    m = merge(x, vx, y, vy)
    assert merge_genfun(_based(x, vx, 12), _based(y, vy, 12)) == _based(m, vx, 12)


def test_trace_counts_do_not_merge():
    """The merging rule is about walks based at the merge vertex; rotating
    the base point (as traces do) breaks it."""
    loop = from_edge_list("a", [("a", "a")])
    f = genfun_from_counts(trace_counts(loop, 3))
    merged = merge_genfun(f, f)
    assert merged[3] == 36
    assert trace_counts(bouquet(2), 3)[2] == 28


# -- unit product roots --------------------------------------------------------

def test_solve_examples():
    geo = TruncatedSeries.geometric(80)
    r = solve_unit_product(geo, geo, 1e-13)
    assert abs(r.u - 0.5) < 1e-10 and r.label == "CANDIDATE"
    r = solve_unit_product(geo, TruncatedSeries([0, 1], 80), 1e-13)
    assert abs(r.u - (math.sqrt(5) - 1) / 2) < 1e-10
    assert r.delta_lower == -math.log(r.u)
    z = TruncatedSeries([0], 10)
    with pytest.raises(NoRoot):
        solve_unit_product(z, z)


def test_solve_rejects_negative():
    with pytest.raises(SeriesError):
        solve_unit_product(TruncatedSeries([0, -1, 2], 2), TruncatedSeries([0, 1], 2))


def test_truncated_root_bounds_true_root():
    for deg in (5, 10, 20):
        geo = TruncatedSeries.geometric(deg)
        r = solve_unit_product(geo, geo, 1e-14)
        assert r.u >= 0.5 - 1e-14
        assert r.delta_lower <= math.log(2) + 1e-12


@given(nonneg_ints, nonneg_ints, st.integers(1, M), st.integers(1, 3))
def test_root_antitone(a, b, k, bump):
    fx = series([0] + a[1:])
    fy = series([0, 1] + b[2:])
    bigger = series([0] + a[1:k] + [a[k] + bump] + a[k + 1:])
    try:
        r1 = solve_unit_product(fx, fy, 1e-12)
    except NoRoot:
        return
    r2 = solve_unit_product(bigger, fy, 1e-12)
    assert r2.u <= r1.u + 1e-12


def test_merged_full_rays_candidate():
    for q in (2, 3):
        f = partition_series(q, PartitionSpec.periodic("1"), 120)
        r = solve_unit_product(f, f, 1e-14)
        assert abs(r.delta_lower - 0.5 * math.log(2 * q - 1)) < 1e-6
        assert 0.5 * math.log(q) < r.delta_lower < math.log(q)


def test_series_evaluation():
    f = TruncatedSeries([1, Fraction(1, 2), 3], 2)
    assert f(2.0) == 1 + 1 + 12
