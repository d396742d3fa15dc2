import pytest

from holiest.errors import InputError, VariantMismatch
from holiest.mssp_linear import (
    LinearMSSP,
    audit_state,
    fundamental_signatures,
    mssp_linear,
    reduced_cut_graph,
)
from holiest.mssp_ref import MSSPListener, mssp_costs, mssp_reference, trace_lines
from holiest.oracles import (
    bouquet,
    cycle_graph,
    fuzz_instance,
    path_graph,
    planar_grid,
    torus_grid,
    unit_costs,
)
from holiest.perturb import STANDARD


def same_trace(g, c, r, audit=False):
    costs = mssp_costs(g, c, r)
    ref = trace_lines(mssp_reference(g, c, r, costs=costs))
    lin = trace_lines(mssp_linear(g, c, r, costs=costs, audit=audit))
    return ref == lin


def test_four_cycle_stats_frozen():
    g = cycle_graph(4)
    eng = LinearMSSP(g, unit_costs(g), 0)
    eng.run()
    assert eng.stats == {"rounds": 8, "stage1": 0, "stage2": 4, "stage3": 0, "passed": 8, "audits": 0}


def test_torus_grid_stats_frozen():
    g = torus_grid(3, 3)
    eng = LinearMSSP(g, unit_costs(g), 0)
    eng.run()
    assert eng.stats == {"rounds": 8, "stage1": 6, "stage2": 4, "stage3": 10, "passed": 40, "audits": 0}


@pytest.mark.parametrize(
    "g",
    [cycle_graph(4), cycle_graph(7), path_graph(5), bouquet(1), bouquet(2), planar_grid(3, 3),
     torus_grid(3, 3), torus_grid(4, 3)],
    ids=["c4", "c7", "path5", "bouquet1", "bouquet2", "grid3", "torus3", "torus43"],
)
def test_small_families_match_reference(g):
    for r in range(g.num_faces):
        assert same_trace(g, unit_costs(g), r, audit=True)


@pytest.mark.parametrize("seed", range(40))
def test_random_instances_match_reference_with_audit(seed):
    g, c, r = fuzz_instance(seed, 40)
    assert same_trace(g, c, r, audit=True)


def test_torus_regular_pivots_frozen():
    counts = {}
    for w in (4, 8, 16):
        g = torus_grid(w, w)
        ev = mssp_linear(g, unit_costs(g), 0)
        counts[w] = sum(e.kind == "regular" for e in ev)
    assert counts == {4: 28, 8: 60, 16: 124}


def test_missing_costs_and_variant():
    g = cycle_graph(4)
    with pytest.raises(InputError):
        LinearMSSP(g, [1, None, 1, 1, 1, 1, 1, 1], 0)
    with pytest.raises(VariantMismatch):
        LinearMSSP(g, unit_costs(g), 0, costs=mssp_costs(g, unit_costs(g), 0, STANDARD))


class CutPathCheck(MSSPListener):
    def __init__(self):
        self.checked = 0

    def on_start(self, engine):
        self.engine = engine

    def on_pivot(self, event):
        st = self.engine.state
        g = st.graph
        cut, paths = reduced_cut_graph(st)
        fund = fundamental_signatures(g, st.pred, st.root, st.sigs)
        assert sum(len(p.darts) for p in paths) == sum(st.core)
        for p in paths:
            assert len({fund[d] for d in p.darts}) == 1
            assert p.start in cut and p.end in cut
            back = p.reversed()
            assert back.darts == [d ^ 1 for d in reversed(p.darts)]
        self.checked += 1


@pytest.mark.parametrize("seed", range(20))
def test_cut_paths_have_constant_signature(seed):
    g, c, r = fuzz_instance(seed, 40)
    chk = CutPathCheck()
    LinearMSSP(g, c, r, listener=chk).run()
    assert chk.checked == len(mssp_reference(g, c, r))


def test_audit_state_counts():
    g = torus_grid(3, 3)
    eng = LinearMSSP(g, unit_costs(g), 0, audit=True)
    eng.run()
    assert eng.stats["audits"] > 0
    audit_state(eng)


def _initial_cut_graph(g):
    eng = LinearMSSP(g, unit_costs(g), 0)
    eng.initialize()
    cut, paths = reduced_cut_graph(eng.state)
    return cut, [(p.start, p.end, len(p.darts)) for p in paths]


def test_path_graph_has_only_special_pivots():
    g = path_graph(5)
    ev = mssp_linear(g, unit_costs(g), 0)
    assert ev and all(e.kind == "special" for e in ev)


def test_initial_reduced_cut_graphs_frozen():
    # planar: a single cut path from r to q
    assert _initial_cut_graph(planar_grid(3, 3)) == ([0, 1], [(0, 1, 2)])
    # bouquets: one loop per edge at the only face
    assert _initial_cut_graph(bouquet(1)) == ([0], [(0, 0, 1), (0, 0, 1)])
    assert _initial_cut_graph(torus_grid(3, 3)) == (
        [0, 1, 3, 4, 8],
        [(0, 3, 1), (1, 4, 1), (3, 4, 1), (3, 8, 1), (4, 8, 1), (8, 8, 3)],
    )


class SizeCheck(MSSPListener):
    def on_start(self, engine):
        self.engine = engine
        self.worst = 0

    def on_pivot(self, event):
        st = self.engine.state
        genus = st.graph.genus
        cut, paths = reduced_cut_graph(st)
        assert len(cut) <= 4 * genus + 2
        assert len(paths) <= 6 * genus + 1
        active = set(st.active_darts())
        entries = sum(1 for p in paths for q in (p, p.reversed()) if q.darts[0] in active)
        assert entries <= 2 * (6 * genus + 1)


@pytest.mark.parametrize("seed", range(25))
def test_reduced_cut_graph_size_bounds(seed):
    g, c, r = fuzz_instance(seed, 60)
    LinearMSSP(g, c, r, listener=SizeCheck()).run()
