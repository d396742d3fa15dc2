import pytest

from holiest.errors import (
    DartMissing,
    DimensionMismatch,
    NotASpanningCotree,
    ParseError,
    VariantMismatch,
)
from holiest.homology import homology_signatures, tree_cotree
from holiest.oracles import cycle_graph, planar_grid, random_surface_graph, torus_grid, unit_costs
from holiest.perturb import (
    MODIFIED,
    STANDARD,
    PerturbedCost,
    compare,
    cotree_drainage,
    cut_sum,
    dual_imbalance_of,
    perturb_costs,
    read_cst,
    sum_over,
    write_cst,
)


def drained(g, root_vertex=0, sink=0):
    tc = tree_cotree(g, root_vertex, sink)
    return tc, cotree_drainage(g, tc)


def test_four_cycle_drainage_frozen():
    g = cycle_graph(4)
    tc, dr = drained(g)
    assert dr.sink == 0
    assert dr.z == [0, 1, 0, 0]
    assert dual_imbalance_of(g, dr) == [1, -1]


def test_torus_grid_drainage_frozen():
    g = torus_grid(3, 3)
    _, dr = drained(g)
    assert dr.z == [0, 0, 0, 0, 0, -1, -1, 2, -2, -4, 0, 0, -8, 0, 1, 0, 1, 0]
    assert dual_imbalance_of(g, dr) == [8] + [-1] * 8


@pytest.mark.parametrize("seed", range(8))
def test_imbalance_is_minus_one_off_sink(seed):
    g = random_surface_graph(15, seed % 3, seed)
    sink = seed % g.num_faces
    _, dr = drained(g, sink=sink)
    imb = dual_imbalance_of(g, dr)
    assert imb[sink] == g.num_faces - 1
    assert all(x == -1 for p, x in enumerate(imb) if p != sink)


def test_drainage_dart_is_antisymmetric():
    g = planar_grid(3, 3)
    _, dr = drained(g)
    for d in range(g.num_darts):
        assert dr.dart(d) == -dr.dart(d ^ 1)


def test_cut_sum_single_faces():
    g = planar_grid(3, 3)
    _, dr = drained(g)
    assert cut_sum(g, dr, [0]) == g.num_faces - 1
    for p in range(1, g.num_faces):
        assert cut_sum(g, dr, [p]) == -1


def test_bad_successor_table():
    g = cycle_graph(4)
    with pytest.raises(NotASpanningCotree):
        cotree_drainage(g, [-1, -1])
    with pytest.raises(NotASpanningCotree):
        cotree_drainage(g, [-1])
    with pytest.raises(NotASpanningCotree):
        cotree_drainage(g, [-1, 2], sink=1)


def test_perturbed_vector_layout():
    g = torus_grid(3, 3)
    c = unit_costs(g)
    tc, dr = drained(g)
    sigs = homology_signatures(g, tc)
    std = perturb_costs(g, c, sigs, dr, STANDARD)
    mod = perturb_costs(g, c, sigs, dr, MODIFIED)
    assert std.length == 5 and mod.length == 4
    for d in range(g.num_darts):
        a, b = std[d], mod[d]
        assert a.c0 == b.c0 == 1
        assert a.unit == 1 and b.unit is None
        assert a.h == b.h == sigs.dart(d)
        assert a.z == b.z == dr.dart(d)
        assert a.h == tuple(-x for x in std[d ^ 1].h)


def test_perturb_costs_dimension_checks():
    g = torus_grid(3, 3)
    tc, dr = drained(g)
    sigs = homology_signatures(g, tc)
    with pytest.raises(DimensionMismatch):
        perturb_costs(g, [1] * 5, sigs, dr)
    with pytest.raises(VariantMismatch):
        perturb_costs(g, unit_costs(g), sigs, dr, "fancy")
    planar = planar_grid(2, 2)
    ptc = tree_cotree(planar, 0, 0)
    with pytest.raises(DimensionMismatch):
        perturb_costs(g, unit_costs(g), homology_signatures(planar, ptc), dr)


def test_unusable_darts_keep_none():
    g = cycle_graph(3)
    tc, dr = drained(g)
    c = [1, None, 1, None, 1, None]
    t = perturb_costs(g, c, homology_signatures(g, tc), dr)
    assert t.vecs[1] is None and t.vecs[0] is not None


def test_perturbed_cost_arithmetic():
    a = PerturbedCost((1, 1, 0), STANDARD)
    b = PerturbedCost((1, 1, -1), STANDARD)
    assert b < a and a > b and a >= a and b <= a
    assert compare(a, b) == 1 and compare(b, a) == -1 and compare(a, a) == 0
    assert (a + b).vec == (2, 2, -1)
    assert (a - b).vec == (0, 0, 1)
    assert (-a).vec == (-1, -1, 0)
    assert a.scale(3).vec == (3, 3, 0)
    assert PerturbedCost.zero(1).vec == (0,) * 5
    assert PerturbedCost.zero(1, MODIFIED).genus == 1
    assert hash(a) == hash(PerturbedCost((1, 1, 0)))


def test_perturbed_cost_mixing_rejected():
    a = PerturbedCost((1, 1, 0), STANDARD)
    with pytest.raises(VariantMismatch):
        a + PerturbedCost((1, 1, 0), MODIFIED)
    with pytest.raises(DimensionMismatch):
        a + PerturbedCost((1, 1, 0, 0, 0), STANDARD)
    with pytest.raises(DimensionMismatch):
        a < 3
    with pytest.raises(VariantMismatch):
        PerturbedCost((1,), "other")


def test_sum_over_walk_and_multiset():
    g = cycle_graph(4)
    tc, dr = drained(g)
    t = perturb_costs(g, unit_costs(g), homology_signatures(g, tc), dr)
    face = g.faces[0]
    assert sum_over(t, face).c0 == 4
    assert t.sum_over({face[0]: 2}).vec == t[face[0]].scale(2).vec


def test_cst_round_trip():
    c = [3, 0, 5, 1]
    assert read_cst(write_cst(c), 4) == c
    assert read_cst("# comment\n0 2\n\n", 2, default_cost=7) == [2, 7]


@pytest.mark.parametrize("text", ["0\n", "0 x\n", "9 1\n", "0 -1\n", "0 1\n0 2\n"])
def test_cst_parse_errors(text):
    with pytest.raises(ParseError):
        read_cst(text, 2, default_cost=1)


def test_cst_missing_dart():
    with pytest.raises(DartMissing):
        read_cst("0 1\n", 2)
