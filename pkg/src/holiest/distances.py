"""Unperturbed distances along a monotone correspondence.

Sources are the vertices ``A = <u_0, ..., u_{k1-1}>`` met along the boundary
of ``r`` (``u_i`` is the tail of the ``i``-th dart of the face walk), targets
follow an arbitrary walk ``B = <v_0, ..., v_{k2-1}>``.  A pair ``(i, j)``
asks for the distance from ``u_i`` to ``v_j``; the pairs must be
non-decreasing in both coordinates.

A single integer ``dist`` rides along an MSSP engine:

* moving the target across ``v_j -> v_{j+1}`` adds
  ``c(v_j -> v_{j+1}) - slack0(v_j -> v_{j+1})``;
* moving the source across ``u -> v`` subtracts ``dist(u, v)``;
* every completed round adds one when the target is red.

Redness is read off parity marks: an edge is marked when it occurs an odd
number of times on some walk from the current source to the current target,
so the target is red exactly when an odd number of marked edges cross the
blue/red cut, i.e. carry an active dart or the parametric dart.
"""

from .errors import InputError, InternalInvariantViolation, NonMonotone, WalkDisconnected
from .mssp_linear import LinearMSSP
from .mssp_ref import MSSPListener, ReferenceMSSP, face_walk, mssp_costs
from .perturb import MODIFIED

ENGINES = ("linear", "reference")


class MonotoneCorrespondence:
    """Source/target index pairs, non-decreasing in both coordinates.

    Parameters
    ----------
    pairs : iterable of (int, int)

    Raises
    ------
    NonMonotone
    """

    def __init__(self, pairs):
        self.pairs = [(int(i), int(j)) for i, j in pairs]
        for k in range(1, len(self.pairs)):
            (i0, j0), (i1, j1) = self.pairs[k - 1], self.pairs[k]
            if i1 < i0 or j1 < j0:
                raise NonMonotone(f"pair {k} {self.pairs[k]} follows {self.pairs[k - 1]}")

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def check_range(self, k1, k2):
        for i, j in self.pairs:
            if not (0 <= i < k1 and 0 <= j < k2):
                raise InputError(f"pair ({i}, {j}) outside {k1} sources x {k2} targets")


def source_sequence(g, r):
    """Vertices met along the boundary walk of ``r`` (tails of its darts)."""
    walk = face_walk(g, r)
    if not walk:
        return [0]
    hd = g.head
    return [hd[d ^ 1] for d in walk]


def walk_darts(g, vertices):
    """One dart per consecutive pair of ``vertices``.

    Raises
    ------
    WalkDisconnected
        If two consecutive vertices are not adjacent.
    """
    hd = g.head
    out = []
    for a, b in zip(vertices, vertices[1:]):
        for d_in in g.rotation[a]:
            d = d_in ^ 1
            if hd[d] == b:
                out.append(d)
                break
        else:
            raise WalkDisconnected(f"no edge from {a} to {b}")
    return out


class DistanceStream(MSSPListener):
    """Listener that emits the distances of a correspondence.

    Attributes
    ----------
    dist : int
        Distance from the current source to the current target.
    marks : bytearray
        Edge parities of a walk from the current source to the current target.
    results : list of (int, int, int)
    """

    def __init__(self, g, c, targets, corr, audit=False):
        if not targets:
            raise InputError("the target walk is empty")
        for v in targets:
            if not 0 <= v < g.num_vertices:
                raise InputError(f"vertex {v} out of range")
        self.graph = g
        self.c = c
        self.targets = list(targets)
        self.steps = walk_darts(g, self.targets)
        self.corr = corr
        self.audit = audit
        self.engine = None
        self.dist = 0
        self.marks = bytearray(g.num_edges)
        self.target = 0
        self.next_pair = 0
        self.param_dart = -1
        self.results = []

    def on_start(self, engine):
        g = self.graph
        self.engine = engine
        v = self.targets[0]
        self.dist = engine.tree_distance0(v)
        pred = engine.pred_table()
        hd = g.head
        while pred[v] >= 0:
            d = pred[v]
            self.marks[d >> 1] ^= 1
            v = hd[d ^ 1]
        self._answer(0, engine.slack0_table())

    def on_special_pivot(self, iteration, u, v, dist0_uv, dart_uv):
        self.dist -= dist0_uv
        self.marks[dart_uv >> 1] ^= 1
        self.param_dart = dart_uv ^ 1

    def on_round_completed(self, iteration, active_darts):
        m = self.marks
        odd = 0
        for d in active_darts:
            odd ^= m[d >> 1]
        if self.engine.param_in_tree():
            odd ^= m[self.param_dart >> 1]
        if self.audit and bool(odd) != self._target_is_red():
            raise InternalInvariantViolation("mark parity disagrees with the target colour")
        self.dist += odd

    def on_iteration_end(self, iteration, slack0):
        self._answer(iteration + 1, slack0)

    def _answer(self, src, slack0):
        pairs = self.corr.pairs
        c = self.c
        while self.next_pair < len(pairs) and pairs[self.next_pair][0] == src:
            _, j = pairs[self.next_pair]
            while self.target < j:
                d = self.steps[self.target]
                self.dist += c[d] - slack0[d]
                self.marks[d >> 1] ^= 1
                self.target += 1
            if self.audit:
                want = self.engine.tree_distance0(self.targets[j])
                if want != self.dist:
                    raise InternalInvariantViolation(f"pair {pairs[self.next_pair]}: {self.dist} vs {want}")
            self.results.append((src, j, self.dist))
            self.next_pair += 1

    def _target_is_red(self):
        eng = self.engine
        pred = eng.pred_table()
        hd = self.graph.head
        v = self.targets[self.target]
        while pred[v] >= 0:
            if pred[v] == self.param_dart:
                return True
            v = hd[pred[v] ^ 1]
        return False


def mssp_distances(g, c, r, targets, corr, engine="linear", costs=None, audit=False):
    """Distances from the sources around ``r`` to a target walk.

    Parameters
    ----------
    g : EmbeddedGraph
    c : list of int
        Non-negative integer dart costs with every directed cycle positive.
    r : int
        Face whose boundary supplies the sources.
    targets : list of int
        Vertices of a walk; consecutive entries must be adjacent.
    corr : MonotoneCorrespondence or iterable of (int, int)
    engine : {'linear', 'reference'}
    costs : CostTable, optional
        Modified-variant costs; built when omitted.
    audit : bool
        Cross-check every answer and every round against the engine's tree.

    Returns
    -------
    list of (int, int, int)
        ``(i, j, distance)`` in the order of ``corr``.

    Raises
    ------
    NonMonotone, WalkDisconnected, InputError
    """
    if engine not in ENGINES:
        raise InputError(f"unknown engine {engine!r}")
    if not isinstance(corr, MonotoneCorrespondence):
        corr = MonotoneCorrespondence(corr)
    corr.check_range(len(source_sequence(g, r)), len(targets))
    stream = DistanceStream(g, c, targets, corr, audit=audit)
    if costs is None:
        costs = mssp_costs(g, c, r, MODIFIED)
    if engine == "linear":
        eng = LinearMSSP(g, c, r, costs=costs, listener=stream)
    else:
        eng = ReferenceMSSP(g, c, r, costs=costs, listener=stream)
    eng.run()
    return stream.results
