"""Staged multiple-source shortest paths for small integer costs.

The engine produces the same pivot stream as :mod:`holiest.mssp_ref` under
the modified perturbation, but never looks at perturbed distances after
initialisation.  It keeps

* the unperturbed slack ``slack0`` of every dart and the unperturbed part
  ``lambda0`` of the parameter;
* the cut graph ``X`` (edges outside the tree) together with its 2-core
  (degree-one dual vertices other than ``q`` and ``r`` pruned away; the
  pruned forest is the *hair*, whose faces point towards the core through
  ``succ``);
* the fundamental cycle signature ``[cycle(T, d)]`` of every core dart.

Active darts are exactly the darts of the blue boundary walk whose reversal
is not on that walk.  Within a round (fixed ``lambda0``) the darts become
tense in increasing order of ``([cycle(T, d)], position on the walk)``, so a
round is a sweep through the active darts in that order with a cursor
separating the passed ones.  Stage 1 covers negative signatures, stage 2 the
path ``xi_q`` at the start of the walk, stage 3 the rest.  A dart with zero
unperturbed slack ahead of the cursor is the next pivot; when the cursor
runs off the end the round completes, ``lambda0`` grows by one and the
slacks of active darts and their reversals shift by one.

After a pivot that inserts ``d+`` and removes ``d-`` the cursor restarts at
``rev(d-)``, whose perturbed slack has zero homology and face parts.
Signatures change only for darts with exactly one endpoint whose colour
flips, which are read off the difference between the old and the new
active sets.
"""

from .errors import InputError, InternalInvariantViolation, VariantMismatch
from .mssp_ref import (
    REGULAR,
    SPECIAL,
    MSSPListener,
    PivotEvent,
    ParametricState,
    face_walk,
    mssp_costs,
    tree_distance0,
)
from .perturb import MODIFIED
from .sssp import holiest_tree_small_int


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


class CutGraphState:
    """Mutable bookkeeping of the staged engine.

    Attributes
    ----------
    pred : list of int
        Tree predecessor dart of each vertex (``-1`` at the root).
    root : int
        Current source ``v``.
    param_dart : int
        ``v -> u``; ``-1`` before the first special pivot.
    q, r : int
        Faces right and left of ``param_dart``.
    slack0 : list of int
    lambda0 : int
    in_x, core : list of bool
        Per-edge membership in the cut graph and in its 2-core.
    deg : list of int
        Core degree of every face.
    succ : list of int
        For hair faces, the dart leading towards the core.
    csig : list of tuple
        Fundamental cycle signature of every dart (zero off the core).
    """

    def __init__(self, g, c, r, sigs):
        self.graph = g
        self.c = c
        self.r = r
        self.sigs = sigs
        self.zero = sigs.zero
        self.pred = None
        self.root = None
        self.param_dart = -1
        self.q = r
        self.slack0 = None
        self.lambda0 = 0
        self.in_x = None
        self.core = None
        self.deg = None
        self.succ = None
        self.csig = None
        self.walk = None
        self.active = None
        self._act_pos = []
        self.cursor = 0

    # -- core maintenance ---------------------------------------------------

    def _spared(self, p):
        return p == self.q or p == self.r

    def _is_core_face(self, p):
        return self.deg[p] > 0 or p == self.q or p == self.r

    def _leaving(self, e, p):
        """Dart of edge ``e`` whose dual dart leaves face ``p``."""
        d = 2 * e
        return d if self.graph.face_of[d ^ 1] == p else d ^ 1

    def build_core(self):
        """Compute ``core``, ``deg`` and hair ``succ`` from ``in_x``."""
        g = self.graph
        fo = g.face_of
        nf = g.num_faces
        deg = [0] * nf
        for e, x in enumerate(self.in_x):
            if x:
                deg[fo[2 * e]] += 1
                deg[fo[2 * e + 1]] += 1
        self.core = list(self.in_x)
        self.deg = deg
        self.succ = [-1] * nf
        for p in range(nf):
            if deg[p] == 1 and not self._spared(p):
                self._prune(p)

    def _prune(self, p):
        """Strip a dangling core path starting at ``p`` into the hair."""
        g = self.graph
        fo = g.face_of
        core = self.core
        deg = self.deg
        while deg[p] == 1 and not self._spared(p):
            for d in g.faces[p]:
                if core[d >> 1]:
                    break
            else:  # pragma: no cover - degree bookkeeping broken
                raise InternalInvariantViolation(f"face {p} has no core edge")
            e = d >> 1
            core[e] = False
            self.csig[d] = self.csig[d ^ 1] = self.zero
            lv = self._leaving(e, p)
            self.succ[p] = lv
            deg[p] = 0
            o = fo[lv]
            deg[o] -= 1
            p = o

    def _grow(self, p):
        """Turn the hair path from ``p`` to the core into core edges."""
        fo = self.graph.face_of
        deg = self.deg
        if self._is_core_face(p):
            return
        while True:
            d = self.succ[p]
            if d < 0 or not self.in_x[d >> 1]:
                raise InternalInvariantViolation(f"hair face {p} has no successor")
            self.core[d >> 1] = True
            o = fo[d]
            stop = self._is_core_face(o)
            deg[p] += 1
            deg[o] += 1
            if stop:
                return
            p = o

    def add_x_edge(self, e):
        g = self.graph
        if self.in_x[e]:
            raise InternalInvariantViolation(f"edge {e} already in the cut graph")
        self.in_x[e] = True
        a, b = g.face_of[2 * e], g.face_of[2 * e + 1]
        self._grow(a)
        self._grow(b)
        self.core[e] = True
        self.deg[a] += 1
        self.deg[b] += 1

    def remove_x_edge(self, e):
        g = self.graph
        if not self.core[e]:
            raise InternalInvariantViolation(f"edge {e} leaves the cut graph from the hair")
        self.in_x[e] = False
        self.core[e] = False
        self.csig[2 * e] = self.csig[2 * e + 1] = self.zero
        a, b = g.face_of[2 * e], g.face_of[2 * e + 1]
        self.deg[a] -= 1
        self.deg[b] -= 1
        self._prune(a)
        self._prune(b)

    def set_q(self, q):
        old = self.q
        self.q = -1  # not yet spared, so the walk leaves q
        self._grow(q)
        self.q = q
        if old != q:
            self._prune(old)

    def shift_sig(self, d, delta):
        """Add ``delta`` to the signature of ``d`` (and its negation to the
        reversal); darts that just fell into the hair keep zero."""
        if self.core[d >> 1]:
            self.csig[d] = _vadd(self.csig[d], delta)
            self.csig[d ^ 1] = _vsub(self.csig[d ^ 1], delta)

    # -- blue boundary walk -------------------------------------------------

    def blue_walk(self):
        """Facial walk of the core plus ``rq`` starting after ``v -> u``."""
        pd = self.param_dart
        pi = self.graph.pi
        core = self.core
        epd = pd >> 1
        out = []
        d = pd
        while True:
            c = pi[d]
            while not (core[c >> 1] or (c >> 1) == epd):
                c = pi[c ^ 1]
            if c == pd:
                return out
            out.append(c)
            d = c

    def refresh_active(self, resort_only=False):
        """Recompute the walk and the sorted active darts.

        With ``resort_only`` the walk is reused and only the signature keys
        are refreshed.
        """
        if not resort_only:
            pd = self.param_dart
            if self.pred[self.graph.head[pd]] != pd:
                # v -> u left the tree: nothing is red any more
                self.walk = []
                self.active = []
                self._act_pos = []
                return
            w = self.blue_walk()
            on = set(w)
            on.add(pd)
            self.walk = w
            self._act_pos = [(i, d) for i, d in enumerate(w) if (d ^ 1) not in on]
        csig = self.csig
        act = [(csig[d], i, d) for i, d in self._act_pos]
        act.sort()
        self.active = act

    def active_darts(self):
        return [d for _, _, d in self.active]

    def index_of(self, d):
        for k, (_, _, x) in enumerate(self.active):
            if x == d:
                return k
        return -1


class LinearMSSP:
    """Staged linear-time MSSP engine.

    Parameters
    ----------
    g : EmbeddedGraph
    c : list of int
        Small non-negative integer costs, every directed cycle positive.
    r : int
        Face around which the source moves.
    costs : CostTable, optional
        Modified-variant costs; :func:`holiest.mssp_ref.mssp_costs` when
        omitted.  Only the initial tree uses them.
    listener : MSSPListener, optional
    audit : bool
        Compare the incremental state with a from-scratch rebuild after
        every event (slow; for tests).
    """

    def __init__(self, g, c, r, costs=None, listener=None, audit=False):
        if any(x is None for x in c):
            raise InputError("every dart needs a finite cost")
        if costs is None:
            costs = mssp_costs(g, c, r, MODIFIED)
        if costs.variant != MODIFIED:
            raise VariantMismatch("the staged engine uses the modified variant")
        self.graph = g
        self.c = c
        self.r = r
        self.costs = costs
        self.listener = listener or MSSPListener()
        self.audit = audit
        self.walk_r = face_walk(g, r)
        self.events = []
        self.stats = {"rounds": 0, "stage1": 0, "stage2": 0, "stage3": 0, "passed": 0, "audits": 0}
        sigs = costs.sigs
        if sigs is None:
            raise InputError("cost table carries no homology signatures")
        self.state = CutGraphState(g, c, r, sigs)
        self.initialize()

    # -- initialisation -----------------------------------------------------

    def initialize(self):
        g, c = self.graph, self.c
        st = self.state
        src = g.head[self.walk_r[0] ^ 1] if self.walk_r else 0
        tree = holiest_tree_small_int(g, c, self.costs, src)
        st.pred = list(tree.pred)
        st.root = src
        hd = g.head
        d0 = [x[0] for x in tree.dist]
        st.slack0 = [d0[hd[d ^ 1]] + c[d] - d0[hd[d]] for d in range(g.num_darts)]
        st.in_x = [True] * g.num_edges
        for d in st.pred:
            if d >= 0:
                st.in_x[d >> 1] = False
        st.csig = fundamental_signatures(g, st.pred, src, st.sigs)
        if self.walk_r:
            st.q = g.face_of[self.walk_r[0] ^ 1]
        st.build_core()
        for d in range(g.num_darts):
            if not st.core[d >> 1]:
                st.csig[d] = st.zero

    # -- main loop ----------------------------------------------------------

    def run(self):
        self.listener.on_start(self)
        for i, d_uv in enumerate(self.walk_r):
            self._iteration(i, d_uv)
        return self.events

    def _emit(self, ev):
        self.events.append(ev)
        self.listener.on_pivot(ev)

    def _iteration(self, i, d_uv):
        g = self.graph
        st = self.state
        u, v = g.head[d_uv ^ 1], g.head[d_uv]
        if u == v:
            self.listener.on_special_pivot(i, u, v, 0, d_uv)
            self.listener.on_iteration_end(i, st.slack0)
            return
        pd = d_uv ^ 1
        final0 = self.c[pd]
        dist_uv = self.special_pivot(i, u, v, d_uv)
        self.listener.on_special_pivot(i, u, v, dist_uv, d_uv)
        self._check()
        zero = st.zero
        while True:
            act = st.active
            k = st.cursor
            chosen = -1
            while k < len(act):
                s, _, d = act[k]
                if st.lambda0 == final0 and not s < zero:
                    break
                if st.slack0[d] == 0:
                    chosen = d
                    break
                k += 1
            self.stats["passed"] += k - st.cursor
            st.cursor = k
            if chosen >= 0:
                self._count_stage(k)
                self.regular_pivot(i, chosen)
                self._check()
                continue
            if st.lambda0 == final0:
                break
            self.complete_round(i)
            self._check()
        self.listener.on_iteration_end(i, st.slack0)

    def _count_stage(self, k):
        st = self.state
        s, pos, d = st.active[k]
        if s < st.zero:
            self.stats["stage1"] += 1
        elif s == st.zero and pos < len(xi_q_prefix(st)):
            self.stats["stage2"] += 1
        else:
            self.stats["stage3"] += 1

    def special_pivot(self, i, u, v, d_uv):
        """Reroot at ``v`` and insert ``v -> u``; returns ``dist0(u, v)``."""
        g = self.graph
        st = self.state
        pd = d_uv ^ 1
        dist_uv = self.c[d_uv] - st.slack0[d_uv]
        d_minus = st.pred[v]
        sig_pd = st.csig[pd]
        st.pred[v] = -1
        st.pred[u] = pd
        st.root = v
        st.param_dart = pd
        st.set_q(g.face_of[pd])
        if (d_minus >> 1) != (pd >> 1):
            st.add_x_edge(d_minus >> 1)
            st.remove_x_edge(pd >> 1)
        st.csig[pd] = st.csig[pd ^ 1] = st.zero
        st.lambda0 = -dist_uv
        st.slack0[pd] = 0
        st.slack0[d_uv] = st.lambda0 + self.c[d_uv]
        st.refresh_active()
        for _, _, d in st.active:
            st.shift_sig(d, tuple(-x for x in sig_pd))
        st.refresh_active(resort_only=True)
        self._emit(PivotEvent(i, SPECIAL, pd, d_minus, (st.lambda0,)))
        start = pd if (d_minus >> 1) == (pd >> 1) else d_minus ^ 1
        self._restart_at(start)
        return dist_uv

    def _restart_at(self, d):
        st = self.state
        if d == st.param_dart:
            # the parametric dart itself: signature zero, first on the walk
            k = 0
            while k < len(st.active) and st.active[k][0] < st.zero:
                k += 1
            st.cursor = k
            return
        k = st.index_of(d)
        if k < 0:
            raise InternalInvariantViolation(f"dart {d} should be active after the pivot")
        st.cursor = k

    def regular_pivot(self, i, d_plus):
        g = self.graph
        st = self.state
        y = g.head[d_plus]
        d_minus = st.pred[y]
        old = {d for _, _, d in st.active}
        sig = st.csig[d_plus]
        st.pred[y] = d_plus
        st.add_x_edge(d_minus >> 1)
        st.remove_x_edge(d_plus >> 1)
        st.refresh_active()
        new = {d for _, _, d in st.active}
        neg = tuple(-x for x in sig)
        for d in old:
            if d not in new and d != d_plus:
                st.shift_sig(d, neg)
        for d in new:
            if d not in old:
                st.shift_sig(d, sig)
        if st.core[d_minus >> 1]:
            st.csig[d_minus] = neg
            st.csig[d_minus ^ 1] = sig
        st.refresh_active(resort_only=True)
        self._emit(PivotEvent(i, REGULAR, d_plus, d_minus, (st.lambda0,)))
        if st.active:
            self._restart_at(d_minus ^ 1)
        else:
            st.cursor = 0

    def complete_round(self, i):
        st = self.state
        self.listener.on_round_completed(i, st.active_darts())
        sl = st.slack0
        for _, _, d in st.active:
            sl[d] -= 1
            sl[d ^ 1] += 1
        pd = st.param_dart
        u = self.graph.head[pd]
        if st.pred[u] == pd:
            sl[pd ^ 1] += 1
        else:
            sl[pd] += 1
        st.lambda0 += 1
        st.cursor = 0
        self.stats["rounds"] += 1

    # -- accessors shared with the reference engine ---------------------------

    def slack0_table(self):
        """Live unperturbed slack table (do not mutate)."""
        return self.state.slack0

    def tree_distance0(self, v):
        return tree_distance0(self.graph, self.c, self.state.pred, v)

    def pred_table(self):
        return self.state.pred

    def param_in_tree(self):
        st = self.state
        pd = st.param_dart
        return pd >= 0 and st.pred[self.graph.head[pd]] == pd

    # -- audits -------------------------------------------------------------

    def _check(self):
        if self.audit:
            audit_state(self)
            self.stats["audits"] += 1


def fundamental_signatures(g, pred, root, sigs):
    """``[cycle(T, d)]`` for every dart, from tree path potentials."""
    n = g.num_vertices
    children = [[] for _ in range(n)]
    for d in pred:
        if d >= 0:
            children[g.head[d ^ 1]].append(d)
    pot = [None] * n
    pot[root] = sigs.zero
    stack = [root]
    hd = g.head
    while stack:
        x = stack.pop()
        for d in children[x]:
            pot[hd[d]] = _vadd(pot[x], sigs.dart(d))
            stack.append(hd[d])
    return [_vsub(_vadd(pot[hd[d ^ 1]], sigs.dart(d)), pot[hd[d]]) for d in range(g.num_darts)]


def xi_q_prefix(st):
    """Darts of ``xi_q``: the walk prefix up to the first branch face or ``r``."""
    g = st.graph
    out = []
    for d in st.walk:
        out.append(d)
        p = g.face_of[d]
        if p == st.r or st.deg[p] != 2:
            break
    return out


class CutPath:
    """Maximal core path whose interior faces are not cut vertices.

    ``darts`` are oriented from face ``start`` to face ``end`` (each dual
    dart runs from its left face to its right face).
    """

    __slots__ = ("start", "end", "darts")

    def __init__(self, start, end, darts):
        self.start = start
        self.end = end
        self.darts = darts

    def reversed(self):
        return CutPath(self.end, self.start, [d ^ 1 for d in reversed(self.darts)])

    def __repr__(self):
        return f"CutPath({self.start}->{self.end}, {len(self.darts)} darts)"


def reduced_cut_graph(st):
    """Cut vertices and cut paths of the current 2-core.

    Cut vertices are ``q``, ``r`` and every core face whose core degree is
    not two.  Each cut path is reported once, in one orientation.
    """
    g = st.graph
    fo = g.face_of
    core = st.core
    cut = sorted({p for p in range(g.num_faces) if st.deg[p] not in (0, 2)} | {st.q, st.r})
    is_cut = [False] * g.num_faces
    for p in cut:
        is_cut[p] = True
    seen = set()
    paths = []
    for p in cut:
        for d0 in g.faces[p]:
            # dual darts leaving p are the reversals of darts whose right face is p
            d = d0 ^ 1
            if not core[d >> 1] or d in seen:
                continue
            darts = [d]
            seen.add(d)
            seen.add(d ^ 1)
            f = fo[d]
            while not is_cut[f]:
                nxt = -1
                for x in g.faces[f]:
                    if core[x >> 1] and (x ^ 1) not in seen:
                        nxt = x ^ 1
                        break
                if nxt < 0:  # pragma: no cover - degree bookkeeping broken
                    raise InternalInvariantViolation(f"core path stops at face {f}")
                darts.append(nxt)
                seen.add(nxt)
                seen.add(nxt ^ 1)
                f = fo[nxt]
            paths.append(CutPath(p, f, darts))
    return cut, paths


def audit_state(engine):
    """Check the incremental state against a from-scratch rebuild.

    Raises
    ------
    InternalInvariantViolation
    """
    g = engine.graph
    st = engine.state
    fresh = CutGraphState(g, engine.c, engine.r, st.sigs)
    fresh.pred = list(st.pred)
    fresh.root = st.root
    fresh.param_dart = st.param_dart
    fresh.q = st.q
    fresh.in_x = [True] * g.num_edges
    for d in st.pred:
        if d >= 0:
            fresh.in_x[d >> 1] = False
    if fresh.in_x != st.in_x:
        raise InternalInvariantViolation("cut graph membership drifted")
    fresh.csig = fundamental_signatures(g, st.pred, st.root, st.sigs)
    fresh.build_core()
    if fresh.core != st.core or fresh.deg != st.deg:
        raise InternalInvariantViolation("2-core drifted")
    for d in range(g.num_darts):
        want = fresh.csig[d] if st.core[d >> 1] else st.zero
        if st.csig[d] != want:
            raise InternalInvariantViolation(f"signature of dart {d} drifted: {st.csig[d]} vs {want}")
    fo = g.face_of
    for p in range(g.num_faces):
        if not st._is_core_face(p):
            d = st.succ[p]
            if d < 0 or not st.in_x[d >> 1] or fo[d ^ 1] != p:
                raise InternalInvariantViolation(f"hair face {p} has a bad successor")
    if st.param_dart >= 0:
        ps = ParametricState(g, engine.costs, st.pred, st.root, st.param_dart, None)
        if set(ps.active_darts()) != set(st.active_darts()):
            raise InternalInvariantViolation("active darts differ from the colour definition")
        hd = g.head
        lam = st.lambda0
        d0 = [x[0] + (lam if ps.red[v] else 0) for v, x in enumerate(ps.dist)]
        pd = st.param_dart
        for d in range(g.num_darts):
            cost = lam if d == pd else engine.c[d]
            if d0[hd[d ^ 1]] + cost - d0[hd[d]] != st.slack0[d]:
                raise InternalInvariantViolation(f"unperturbed slack of dart {d} drifted")


def mssp_linear(g, c, r, costs=None, listener=None, audit=False):
    """Run the staged engine and return its list of :class:`PivotEvent`."""
    return LinearMSSP(g, c, r, costs=costs, listener=listener, audit=audit).run()
