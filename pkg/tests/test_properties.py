"""Property-based checks over random embedded graphs."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from holiest.distances import mssp_distances, source_sequence
from holiest.embedding import dual, read_emg, write_emg
from holiest.homology import facial_walk, homology_signatures, tree_cotree, walk_signature
from holiest.mssp_linear import mssp_linear
from holiest.mssp_ref import mssp_costs, mssp_reference, trace_lines
from holiest.oracles import (
    brute_sssp,
    dijkstra_distances,
    positive_cycle_costs,
    random_surface_graph,
    standard_costs,
)
from holiest.perturb import cotree_drainage, cut_sum, dual_imbalance_of
from holiest.sssp import holiest_sssp

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def graphs(draw, max_n=14, max_genus=3):
    n = draw(st.integers(1, max_n))
    genus = draw(st.integers(0, max_genus))
    seed = draw(st.integers(0, 2**31))
    return random_surface_graph(n, genus, seed)


@st.composite
def instances(draw, max_n=14, max_genus=3):
    g = draw(graphs(max_n, max_genus))
    c = positive_cycle_costs(g, draw(st.integers(0, 5)), draw(st.integers(0, 2**31)))
    r = draw(st.integers(0, g.num_faces - 1))
    return g, c, r


@SETTINGS
@given(graphs())
def test_euler_characteristic(g):
    assert g.num_vertices - g.num_edges + g.num_faces == 2 - 2 * g.genus


@SETTINGS
@given(graphs())
def test_dual_swaps_vertices_and_faces(g):
    h = dual(g).as_graph()
    assert (h.num_vertices, h.num_faces, h.genus) == (g.num_faces, g.num_vertices, g.genus)


@SETTINGS
@given(graphs())
def test_emg_round_trip(g):
    assert read_emg(write_emg(g)).rotation == g.rotation


@SETTINGS
@given(graphs(), st.data())
def test_signature_invariants(g, data):
    v = data.draw(st.integers(0, g.num_vertices - 1))
    f = data.draw(st.integers(0, g.num_faces - 1))
    tc = tree_cotree(g, v, f)
    sigs = homology_signatures(g, tc)
    zero = (0,) * (2 * g.genus)
    assert len(tc.leftover_edges) == 2 * g.genus
    for e in tc.tree_edges:
        assert sigs.edge_sig[e] == zero
    for i, e in enumerate(tc.leftover_edges):
        assert sigs.edge_sig[e] == tuple(int(k == i) for k in range(2 * g.genus))
    for p in range(g.num_faces):
        assert walk_signature(sigs, facial_walk(g, p)) == zero


@SETTINGS
@given(graphs(max_n=10), st.data())
def test_drainage_cut_sums(g, data):
    f = data.draw(st.integers(0, g.num_faces - 1))
    dr = cotree_drainage(g, tree_cotree(g, 0, f))
    imb = dual_imbalance_of(g, dr)
    assert sum(imb) == 0
    subset = data.draw(st.sets(st.integers(0, g.num_faces - 1)))
    want = sum(imb[p] for p in subset)
    assert cut_sum(g, dr, subset) == want


@SETTINGS
@given(instances(max_n=10), st.data())
def test_holiest_tree_is_vector_optimal(inst, data):
    g, c, _ = inst
    s = data.draw(st.integers(0, g.num_vertices - 1))
    costs = standard_costs(g, c)
    tree = holiest_sssp(g, costs, s)
    dist, _ = brute_sssp(g, costs, s)
    assert tree.dist == dist
    assert [tree.dist_c0(v) for v in range(g.num_vertices)] == dijkstra_distances(g, c, s)


@SETTINGS
@given(instances(max_n=25))
def test_engines_agree(inst):
    g, c, r = inst
    costs = mssp_costs(g, c, r)
    assert trace_lines(mssp_linear(g, c, r, costs=costs)) == trace_lines(
        mssp_reference(g, c, r, costs=costs)
    )


@SETTINGS
@given(instances(max_n=20), st.data())
def test_streamed_distances(inst, data):
    g, c, r = inst
    src = source_sequence(g, r)
    walk = [data.draw(st.integers(0, g.num_vertices - 1))]
    for _ in range(data.draw(st.integers(0, 10))):
        nbrs = [g.head[d ^ 1] for d in g.rotation[walk[-1]]]
        if not nbrs:
            break
        walk.append(data.draw(st.sampled_from(nbrs)))
    m = data.draw(st.integers(1, 4 * g.num_vertices))
    ii = sorted(data.draw(st.lists(st.integers(0, len(src) - 1), min_size=m, max_size=m)))
    jj = sorted(data.draw(st.lists(st.integers(0, len(walk) - 1), min_size=m, max_size=m)))
    for i, j, dist in mssp_distances(g, c, r, walk, list(zip(ii, jj))):
        assert dist == dijkstra_distances(g, c, src[i])[walk[j]]
