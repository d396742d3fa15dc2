"""Holiest single-source shortest-path trees.

Two engines produce the same object, a :class:`HolyTree`:

* :func:`holiest_sssp` runs Dijkstra with lexicographic keys on the standard
  variant, whose dart costs are all lexicographically positive once the
  original costs are non-negative;
* :func:`holiest_tree_small_int` targets the modified variant with small
  integer costs.  A bucket-queue pass computes unperturbed distances, the
  darts of zero unperturbed slack form an acyclic graph ``H`` (no zero-cost
  cycles), and one relaxation pass over ``H`` in topological order applies
  the full perturbed costs.
"""

import heapq

from .errors import NegativeCostDart, UnreachedVertex, VariantMismatch, ZeroCostCycleDetected
from .perturb import MODIFIED, STANDARD, PerturbedCost, vec_add, vec_sub


class HolyTree:
    """Shortest-path tree under perturbed costs.

    Attributes
    ----------
    root : int
    pred : list of int
        Dart into each vertex from its parent, ``-1`` at the root and at
        unreached vertices.
    dist : list of tuple or None
        Raw perturbed distance vectors.
    variant : str
    """

    def __init__(self, graph, root, pred, dist, variant):
        self.graph = graph
        self.root = root
        self.pred = pred
        self.dist = dist
        self.variant = variant

    def distance(self, v):
        if self.dist[v] is None:
            raise UnreachedVertex(f"vertex {v}")
        return PerturbedCost(self.dist[v], self.variant)

    def dist_c0(self, v):
        return None if self.dist[v] is None else self.dist[v][0]

    def tree_darts(self):
        return {d for d in self.pred if d >= 0}

    def path_to(self, v):
        """Darts of the tree path from the root to ``v``."""
        if self.dist[v] is None:
            raise UnreachedVertex(f"vertex {v}")
        out = []
        hd = self.graph.head
        while self.pred[v] >= 0:
            d = self.pred[v]
            out.append(d)
            v = hd[d ^ 1]
        out.reverse()
        return out


def holiest_sssp(g, costs, source, allow_unreached=False):
    """Label-setting holiest tree for the standard variant.

    Raises
    ------
    VariantMismatch
        If ``costs`` is not a standard-variant table.
    NegativeCostDart
        If some original cost is negative.
    UnreachedVertex
        If a vertex cannot be reached and ``allow_unreached`` is false.
    """
    if costs.variant != STANDARD:
        raise VariantMismatch(f"holiest_sssp needs the standard variant, got {costs.variant}")
    vecs = costs.vecs
    for d, v in enumerate(vecs):
        if v is not None and v[0] < 0:
            raise NegativeCostDart(f"dart {d} has cost {v[0]}")
    n = g.num_vertices
    dist = [None] * n
    pred = [-1] * n
    done = [False] * n
    dist[source] = costs.zero_vec()
    heap = [(dist[source], source)]
    hd = g.head
    rot = g.rotation
    while heap:
        dx, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        for d_in in rot[x]:
            d = d_in ^ 1
            cv = vecs[d]
            if cv is None:
                continue
            y = hd[d]
            if done[y]:
                continue
            cand = vec_add(dx, cv)
            if dist[y] is None or cand < dist[y]:
                dist[y] = cand
                pred[y] = d
                heapq.heappush(heap, (cand, y))
    if not allow_unreached and not all(done):
        raise UnreachedVertex(f"vertex {done.index(False)} unreachable from {source}")
    return HolyTree(g, source, pred, dist, STANDARD)


def dial_sssp(g, c, source):
    """Unperturbed distances with a bucket queue (Dial's algorithm).

    Costs must be small non-negative integers; ``None`` marks unusable darts.
    Returns the distance list (``None`` when unreached).
    """
    n = g.num_vertices
    dist = [None] * n
    dist[source] = 0
    buckets = [[source]]
    hd = g.head
    rot = g.rotation
    done = [False] * n
    k = 0
    while k < len(buckets):
        bucket = buckets[k]
        while bucket:
            x = bucket.pop()
            if done[x] or dist[x] != k:
                continue
            done[x] = True
            for d_in in rot[x]:
                d = d_in ^ 1
                cd = c[d]
                if cd is None:
                    continue
                y = hd[d]
                nd = k + cd
                if dist[y] is None or nd < dist[y]:
                    dist[y] = nd
                    while len(buckets) <= nd:
                        buckets.append([])
                    buckets[nd].append(y)
        k += 1
    return dist


def zero_slack_order(g, c, dist0):
    """Topological order of the vertices along zero-slack darts.

    Raises
    ------
    ZeroCostCycleDetected
        If the zero-slack darts contain a directed cycle.
    """
    n = g.num_vertices
    hd = g.head
    indeg = [0] * n
    out = [[] for _ in range(n)]
    for d in range(g.num_darts):
        cd = c[d]
        if cd is None:
            continue
        x, y = hd[d ^ 1], hd[d]
        if dist0[x] is not None and dist0[x] + cd == dist0[y]:
            out[x].append(d)
            indeg[y] += 1
    order = [v for v in range(n) if indeg[v] == 0 and dist0[v] is not None]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for d in out[x]:
            y = hd[d]
            indeg[y] -= 1
            if indeg[y] == 0:
                order.append(y)
    reached = sum(1 for v in dist0 if v is not None)
    if len(order) < reached:
        raise ZeroCostCycleDetected("darts of zero slack contain a directed cycle")
    return order, out


def holiest_tree_small_int(g, c, costs, source):
    """Holiest tree for the modified variant via bucket queue plus DAG pass.

    Parameters
    ----------
    g : EmbeddedGraph
    c : list of int
        Original small non-negative integer costs.
    costs : CostTable
        Modified-variant perturbed costs built from ``c``.
    source : int

    Raises
    ------
    VariantMismatch, ZeroCostCycleDetected, UnreachedVertex
    """
    if costs.variant != MODIFIED:
        raise VariantMismatch(f"expected the modified variant, got {costs.variant}")
    dist0 = dial_sssp(g, c, source)
    if any(x is None for x in dist0):
        raise UnreachedVertex(f"vertex {dist0.index(None)} unreachable from {source}")
    order, out = zero_slack_order(g, c, dist0)
    n = g.num_vertices
    vecs = costs.vecs
    dist = [None] * n
    pred = [-1] * n
    dist[source] = costs.zero_vec()
    hd = g.head
    for x in order:
        dx = dist[x]
        for d in out[x]:
            y = hd[d]
            cand = vec_add(dx, vecs[d])
            if dist[y] is None or cand < dist[y]:
                dist[y] = cand
                pred[y] = d
    return HolyTree(g, source, pred, dist, MODIFIED)


def slack(g, costs, tree, d):
    """``dist(tail) + c'(d) - dist(head)`` as a :class:`PerturbedCost`."""
    x, y = g.head[d ^ 1], g.head[d]
    if tree.dist[x] is None or tree.dist[y] is None:
        raise UnreachedVertex(f"dart {d} has an unreached endpoint")
    if costs.variant != tree.variant:
        raise VariantMismatch(f"{costs.variant} costs with a {tree.variant} tree")
    return PerturbedCost(vec_sub(vec_add(tree.dist[x], costs.vecs[d]), tree.dist[y]), tree.variant)


def slack_vec(g, costs, tree, d):
    x, y = g.head[d ^ 1], g.head[d]
    return vec_sub(vec_add(tree.dist[x], costs.vecs[d]), tree.dist[y])
