"""Reference multiple-source shortest paths around one face.

The source of a holiest tree walks around face ``r``.  Each step from ``u``
to ``v`` starts with a *special pivot*: the predecessor dart of ``v`` leaves
the tree and ``v -> u`` enters it with a parametric cost ``lambda`` set to
``-dist(u, v)``.  Raising ``lambda`` towards the real cost of ``v -> u``
makes *active* darts (blue tail, red head) tense one at a time; each such
event is a regular pivot.

For an active dart ``d = x -> y`` the value
``K_d = dist(v, x) + c'(d) - dist(u, y)`` (distances inside the current
tree, with ``v -> u`` contributing nothing) is the ``lambda`` at which ``d``
becomes tense.  It does not depend on ``lambda``, so the next pivot is the
active dart of least ``K_d``, provided ``K_d`` stays below ``c'(v -> u)``.

This engine recomputes distances and colours from scratch after every
pivot.  It is slow on purpose and serves as the oracle for the staged
engine in :mod:`holiest.mssp_linear`.
"""

import json
from collections import namedtuple

from .errors import InternalInvariantViolation, NotPlanar, TieDetected, VariantMismatch
from .homology import homology_signatures, tree_cotree
from .perturb import MODIFIED, STANDARD, PerturbedCost, cotree_drainage, perturb_costs, vec_add, vec_sub
from .sssp import holiest_sssp, holiest_tree_small_int

SPECIAL = "special"
REGULAR = "regular"


class PivotEvent(namedtuple("PivotEvent", "iteration kind dart_in dart_out lambda_at")):
    """One tree exchange.

    ``lambda_at`` is the raw perturbed vector of ``lambda`` when the pivot
    fired; for a special pivot it is the initial ``-dist(u, v)``.
    """

    __slots__ = ()

    @property
    def lambda_c0(self):
        return self.lambda_at[0]

    def as_dict(self):
        return {
            "iter": self.iteration,
            "kind": self.kind,
            "in": self.dart_in,
            "out": self.dart_out,
            "lambda_c0": self.lambda_c0,
        }

    def to_json(self):
        return json.dumps(self.as_dict(), separators=(",", ":"))


def trace_lines(events):
    """JSON-lines rendering of a pivot stream."""
    return "".join(ev.to_json() + "\n" for ev in events)


class MSSPListener:
    """Callbacks fired by both MSSP engines.  All methods are optional."""

    def on_start(self, engine):
        pass

    def on_special_pivot(self, iteration, u, v, dist0_uv, dart_uv):
        pass

    def on_pivot(self, event):
        pass

    def on_round_completed(self, iteration, active_darts):
        pass

    def on_iteration_end(self, iteration, slack0):
        pass


def face_walk(g, r):
    """Darts ``u_i -> u_{i+1}`` around face ``r``; sources are their tails."""
    return list(g.faces[r])


def mssp_costs(g, c, r, variant=MODIFIED, root_vertex=None):
    """Perturbed costs shared by both engines for face ``r``.

    Signatures come from a BFS tree-cotree rooted at the first source and at
    ``r``; the drainage is the cotree drainage with sink ``r``.
    """
    if root_vertex is None:
        walk = face_walk(g, r)
        root_vertex = g.head[walk[0] ^ 1] if walk else 0
    tc = tree_cotree(g, root_vertex, r)
    sigs = homology_signatures(g, tc)
    dr = cotree_drainage(g, tc)
    return perturb_costs(g, c, sigs, dr, variant)


def initial_tree(g, c, costs, source):
    if costs.variant == MODIFIED:
        return holiest_tree_small_int(g, c, costs, source)
    return holiest_sssp(g, costs, source)


class ParametricState:
    """Tree, parametric dart and colours in the middle of an iteration.

    ``dist`` holds tree distances from the current root where the
    parametric dart contributes nothing, so a red vertex's entry is its
    distance from ``u`` and ``K_d`` needs no ``lambda``.
    """

    def __init__(self, g, costs, pred, root, param_dart=-1, lam=None):
        self.graph = g
        self.costs = costs
        self.pred = pred
        self.root = root
        self.param_dart = param_dart
        self.lam = lam
        self.dist = None
        self.red = None
        self.refresh()

    def refresh(self):
        g = self.graph
        n = g.num_vertices
        children = [[] for _ in range(n)]
        for y, d in enumerate(self.pred):
            if d >= 0:
                children[g.head[d ^ 1]].append(d)
        vecs = self.costs.vecs
        zero = self.costs.zero_vec()
        dist = [None] * n
        red = [False] * n
        dist[self.root] = zero
        stack = [self.root]
        seen = 1
        while stack:
            x = stack.pop()
            for d in children[x]:
                y = g.head[d]
                if d == self.param_dart:
                    dist[y] = zero
                    red[y] = True
                else:
                    dist[y] = vec_add(dist[x], vecs[d])
                    red[y] = red[x]
                stack.append(y)
                seen += 1
        if seen != n:
            raise InternalInvariantViolation("predecessor darts do not form a spanning tree")
        self.dist = dist
        self.red = red

    def is_active(self, d):
        g = self.graph
        return (not self.red[g.head[d ^ 1]]) and self.red[g.head[d]] and d != self.param_dart

    def active_darts(self):
        return [d for d in range(self.graph.num_darts) if self.is_active(d)]

    def threshold(self, d):
        """``K_d``: the ``lambda`` at which active dart ``d`` becomes tense."""
        g = self.graph
        return vec_sub(vec_add(self.dist[g.head[d ^ 1]], self.costs.vecs[d]), self.dist[g.head[d]])

    def true_dist(self, v):
        """Distance from the root under the current ``lambda``."""
        if self.red[v]:
            return vec_add(self.lam, self.dist[v])
        return self.dist[v]

    def slack(self, d):
        g = self.graph
        x, y = g.head[d ^ 1], g.head[d]
        cd = self.lam if d == self.param_dart else self.costs.vecs[d]
        return vec_sub(vec_add(self.true_dist(x), cd), self.true_dist(y))


def active_darts(state):
    """Darts with a blue tail and a red head."""
    return state.active_darts()


def leafmost_planar_pivot(state):
    """Leafmost active dart of minimum original slack (planar graphs).

    In a planar graph the non-tree edges form a dual spanning tree ``C``
    and the active darts are exactly the darts of the dual path from ``q``
    (the face right of the parametric dart) to ``r`` (its left face).  The
    rule picks the first dart of least original slack along that path.

    Raises
    ------
    NotPlanar
    """
    g = state.graph
    if g.genus != 0:
        raise NotPlanar(f"genus {g.genus}")
    if state.costs.variant != MODIFIED:
        raise VariantMismatch("the leafmost rule is stated for the modified variant")
    path = cotree_path_active(state)
    if not path:
        return None
    k0 = [state.threshold(d)[0] for d in path]
    best = min(k0)
    return path[k0.index(best)]


def cotree_path_active(state):
    """Active darts along the ``q -> r`` path of the complementary cotree."""
    g = state.graph
    pd = state.param_dart
    q, r = g.face_of[pd], g.face_of[pd ^ 1]
    in_tree = [False] * g.num_edges
    for d in state.pred:
        if d >= 0:
            in_tree[d >> 1] = True
    # BFS in the dual over non-tree edges from q, then read the path to r
    parent = {q: -1}
    queue = [q]
    fo = g.face_of
    for p in queue:
        if p == r:
            break
        for d in g.faces[p]:
            if in_tree[d >> 1]:
                continue
            o = fo[d ^ 1]
            if o not in parent:
                parent[o] = d ^ 1  # dual dart p -> o
                queue.append(o)
    if r not in parent:
        raise InternalInvariantViolation("q and r are disconnected in the cotree")
    path = []
    p = r
    while parent[p] != -1:
        d = parent[p]
        path.append(d)
        p = fo[d ^ 1]
    path.reverse()
    out = []
    for d in path:
        if state.is_active(d):
            out.append(d)
        elif state.is_active(d ^ 1):
            out.append(d ^ 1)
        else:
            raise InternalInvariantViolation(f"cotree path edge {d >> 1} carries no active dart")
    n_active = len(state.active_darts())
    if n_active != len(out):
        raise InternalInvariantViolation("active darts differ from the cotree path")
    return out


class ReferenceMSSP:
    """Recompute-per-pivot MSSP engine.

    Parameters
    ----------
    g : EmbeddedGraph
    c : list of int
        Original dart costs.
    r : int
        Face whose vertices serve as sources.
    costs : CostTable, optional
        Perturbed costs; built by :func:`mssp_costs` when omitted.
    variant : str
        Used only when ``costs`` is omitted.
    listener : MSSPListener, optional
    check_leafmost : bool
        On planar inputs, assert at every regular pivot that the leafmost
        rule picks the same dart (raises ``InternalInvariantViolation``).
    """

    def __init__(self, g, c, r, costs=None, variant=MODIFIED, listener=None, check_leafmost=False):
        if costs is None:
            costs = mssp_costs(g, c, r, variant)
        if costs.variant not in (STANDARD, MODIFIED):
            raise VariantMismatch(costs.variant)
        self.graph = g
        self.c = c
        self.r = r
        self.costs = costs
        self.listener = listener or MSSPListener()
        self.check_leafmost = check_leafmost
        self.walk = face_walk(g, r)
        self.events = []
        self.leafmost_checks = 0
        src = g.head[self.walk[0] ^ 1] if self.walk else 0
        tree = initial_tree(g, c, costs, src)
        self.pred = list(tree.pred)
        self.root = src
        self.initial_pred = list(tree.pred)
        self.initial_dist = tree.dist
        self.param_dart = -1

    def dist0_from_root(self):
        st = ParametricState(self.graph, self.costs, self.pred, self.root)
        return [x[0] for x in st.dist]

    def run(self):
        """Walk the source once around ``r``; returns the pivot stream."""
        g = self.graph
        self.listener.on_start(self)
        for i, d_uv in enumerate(self.walk):
            self._iteration(i, d_uv)
        return self.events

    def _emit(self, ev):
        self.events.append(ev)
        self.listener.on_pivot(ev)

    def _iteration(self, i, d_uv):
        g = self.graph
        costs = self.costs
        u, v = g.head[d_uv ^ 1], g.head[d_uv]
        dvu = d_uv ^ 1
        if u == v:
            # a loop on r: the source does not move
            self.listener.on_special_pivot(i, u, v, 0, d_uv)
            self.listener.on_iteration_end(i, self._slack0_table())
            return
        before = ParametricState(g, costs, self.pred, self.root)
        dist_uv = before.dist[v]
        lam = tuple(-x for x in dist_uv)
        out = self.pred[v]
        self.pred[v] = -1
        self.pred[u] = dvu
        self.root = v
        self.param_dart = dvu
        self._emit(PivotEvent(i, SPECIAL, dvu, out, lam))
        self.listener.on_special_pivot(i, u, v, dist_uv[0], d_uv)
        final = costs.vecs[dvu]
        round_c0 = lam[0]
        while True:
            st = ParametricState(g, costs, self.pred, self.root, dvu, lam)
            best, best_d, tie = None, -1, False
            for d in range(g.num_darts):
                if costs.vecs[d] is None or not st.is_active(d):
                    continue
                k = st.threshold(d)
                if best is None or k < best:
                    best, best_d, tie = k, d, False
                elif k == best:
                    tie = True
            if best is not None and best <= final:
                if tie or best == final:
                    raise TieDetected(f"iteration {i}: equal thresholds {best}")
            if best is None or best >= final:
                while round_c0 < final[0]:
                    self.listener.on_round_completed(i, st.active_darts())
                    round_c0 += 1
                break
            while round_c0 < best[0]:
                self.listener.on_round_completed(i, st.active_darts())
                round_c0 += 1
            if self.check_leafmost:
                choice = leafmost_planar_pivot(st)
                self.leafmost_checks += 1
                if choice != best_d:
                    raise InternalInvariantViolation(
                        f"leafmost rule picked {choice}, perturbed argmin is {best_d}"
                    )
            y = g.head[best_d]
            out = self.pred[y]
            self.pred[y] = best_d
            lam = best
            self._emit(PivotEvent(i, REGULAR, best_d, out, lam))
        self.listener.on_iteration_end(i, self._slack0_table())

    def _slack0_table(self):
        g = self.graph
        dist0 = self.dist0_from_root()
        c = self.c
        hd = g.head
        return [
            None if c[d] is None else dist0[hd[d ^ 1]] + c[d] - dist0[hd[d]]
            for d in range(g.num_darts)
        ]

    def slack0_table(self):
        """Unperturbed slack of every dart in the current tree."""
        return self._slack0_table()

    def tree_distance0(self, v):
        return tree_distance0(self.graph, self.c, self.pred, v)

    def pred_table(self):
        return self.pred

    def param_in_tree(self):
        pd = self.param_dart
        return pd >= 0 and self.pred[self.graph.head[pd]] == pd

    def state(self):
        return ParametricState(self.graph, self.costs, self.pred, self.root)


def tree_distance0(g, c, pred, v):
    """Unperturbed cost of the tree path from the root to ``v``."""
    total = 0
    hd = g.head
    while pred[v] >= 0:
        d = pred[v]
        total += c[d]
        v = hd[d ^ 1]
    return total


def mssp_reference(g, c, r, variant=MODIFIED, costs=None, listener=None, check_leafmost=False):
    """Run the reference engine and return its list of :class:`PivotEvent`."""
    eng = ReferenceMSSP(g, c, r, costs=costs, variant=variant, listener=listener, check_leafmost=check_leafmost)
    return eng.run()


def per_source_trees(g, c, r, costs):
    """Holiest tree from every source around ``r``, recomputed independently."""
    out = []
    for d in face_walk(g, r):
        out.append(initial_tree(g, c, costs, g.head[d]))
    return out


def lambda_cost(vec, variant):
    return PerturbedCost(vec, variant)
