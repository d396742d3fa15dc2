"""Tree-cotree decompositions and integer homology signatures.

A tree-cotree decomposition splits the edges into a spanning tree ``T``, a
spanning tree ``C`` of the dual graph avoiding ``T`` and ``2g`` leftover
edges ``L``.  The ``i``-th leftover edge closes a dual cycle ``gamma_i``
with ``C``; the signature of an edge records, per ``i``, whether its
canonical dart lies on ``gamma_i`` forwards (+1), backwards (-1) or not at
all (0).  Each ``gamma_i`` is oriented along the canonical dart of its
leftover edge and ``L`` is ordered by edge index, so signatures are fully
deterministic.

Signatures of closed walks classify homology: a circulation is the boundary
of a face potential exactly when its signature vanishes.
"""

from collections import deque

from .errors import NotACirculation, NotASpanningCotree


class TreeCotree:
    """Partition ``(T, L, C)`` of the edges.

    Attributes
    ----------
    root_vertex, root_face : int
    tree_pred : list of int
        Dart from the parent into each vertex (``-1`` at the root).
    cotree_succ : list of int
        For each face ``p`` the primal dart whose dual dart leaves ``p``
        towards the root face in ``C`` (``-1`` at the root face).
    in_tree, in_cotree : list of bool
        Per-edge membership.
    leftover_edges : list of int
        The ``2g`` leftover edges in increasing order.
    """

    def __init__(self, root_vertex, root_face, tree_pred, cotree_succ, in_tree, in_cotree, leftover):
        self.root_vertex = root_vertex
        self.root_face = root_face
        self.tree_pred = tree_pred
        self.cotree_succ = cotree_succ
        self.in_tree = in_tree
        self.in_cotree = in_cotree
        self.leftover_edges = leftover

    @property
    def tree_edges(self):
        return [e for e, t in enumerate(self.in_tree) if t]

    @property
    def cotree_edges(self):
        return [e for e, c in enumerate(self.in_cotree) if c]


def bfs_tree(g, root, allowed_edge=None):
    """Breadth-first spanning tree of the primal graph.

    Returns ``pred`` with the dart into every vertex from its parent
    (``-1`` at the root and at unreached vertices).
    """
    pred = [-1] * g.num_vertices
    seen = [False] * g.num_vertices
    seen[root] = True
    queue = deque([root])
    rot = g.rotation
    hd = g.head
    while queue:
        x = queue.popleft()
        for d_in in rot[x]:
            d = d_in ^ 1  # leaves x
            if allowed_edge is not None and not allowed_edge[d >> 1]:
                continue
            y = hd[d]
            if not seen[y]:
                seen[y] = True
                pred[y] = d
                queue.append(y)
    return pred


def dual_bfs_tree(g, root_face, allowed_edge):
    """Breadth-first spanning tree of the dual restricted to allowed edges.

    Returns ``succ`` where ``succ[p]`` is the primal dart whose dual dart
    leaves ``p`` towards ``root_face`` (left face ``p``, right face the
    parent), ``-1`` at the root and at unreached faces.
    """
    nf = g.num_faces
    succ = [-1] * nf
    seen = [False] * nf
    seen[root_face] = True
    queue = deque([root_face])
    fo = g.face_of
    faces = g.faces
    while queue:
        p = queue.popleft()
        for d in faces[p]:  # dual darts entering p
            if not allowed_edge[d >> 1]:
                continue
            o = fo[d ^ 1]
            if not seen[o]:
                seen[o] = True
                succ[o] = d  # leaves o, enters p
                queue.append(o)
    return succ, seen


def tree_cotree(g, root_vertex=0, root_face=0):
    """Compute a deterministic tree-cotree decomposition.

    ``T`` is a BFS tree from ``root_vertex``; ``C`` is a BFS tree of the
    dual graph on the edges outside ``T`` rooted at ``root_face``.
    """
    pred = bfs_tree(g, root_vertex)
    in_tree = [False] * g.num_edges
    for d in pred:
        if d >= 0:
            in_tree[d >> 1] = True
    allowed = [not t for t in in_tree]
    succ, seen = dual_bfs_tree(g, root_face, allowed)
    if not all(seen):
        raise NotASpanningCotree("edges outside the tree do not connect the dual")
    in_cotree = [False] * g.num_edges
    for d in succ:
        if d >= 0:
            in_cotree[d >> 1] = True
    leftover = [e for e in range(g.num_edges) if not in_tree[e] and not in_cotree[e]]
    return TreeCotree(root_vertex, root_face, pred, succ, in_tree, in_cotree, leftover)


def dual_depths(g, succ, root):
    """Depth of each face in a dual tree given by ``succ``."""
    nf = g.num_faces
    depth = [-1] * nf
    depth[root] = 0
    fo = g.face_of
    for p in range(nf):
        chain = []
        x = p
        while depth[x] < 0:
            chain.append(x)
            d = succ[x]
            if d < 0:
                raise NotASpanningCotree(f"face {x} has no successor")
            x = fo[d]
            if len(chain) > nf:
                raise NotASpanningCotree("successor pointers contain a cycle")
        base = depth[x]
        for y in reversed(chain):
            base += 1
            depth[y] = base
    return depth


def dual_tree_path(g, succ, depth, a, b):
    """Darts of the dual tree path from face ``a`` to face ``b``.

    Each returned primal dart's dual dart is traversed forwards.
    """
    fo = g.face_of
    up, down = [], []
    while depth[a] > depth[b]:
        d = succ[a]
        up.append(d)
        a = fo[d]
    while depth[b] > depth[a]:
        d = succ[b]
        down.append(d ^ 1)
        b = fo[d]
    while a != b:
        d = succ[a]
        up.append(d)
        a = fo[d]
        d = succ[b]
        down.append(d ^ 1)
        b = fo[d]
    down.reverse()
    return up + down


class HomologySignatures:
    """Per-edge signature table.

    ``edge_sig[e]`` is a tuple of length ``2g``; dart signatures follow by
    negating for non-canonical darts.
    """

    def __init__(self, g, tc, edge_sig):
        self.graph = g
        self.tree_cotree = tc
        self.edge_sig = edge_sig
        self.dim = 2 * g.genus
        self.zero = (0,) * self.dim

    def edge(self, e):
        return self.edge_sig[e]

    def dart(self, d):
        s = self.edge_sig[d >> 1]
        if d & 1:
            return tuple(-x for x in s)
        return s

    def dart_table(self):
        """Signatures of all darts as a list of tuples."""
        out = []
        for s in self.edge_sig:
            out.append(s)
            out.append(tuple(-x for x in s))
        return out

    def walk(self, darts):
        return walk_signature(self, darts)


def homology_signatures(g, tc):
    """Signature table for the decomposition ``tc``.

    Walks each dual fundamental cycle ``gamma_i`` of the ``i``-th leftover
    edge with the cotree, oriented along the leftover edge's canonical dart.
    """
    dim = 2 * g.genus
    zero = (0,) * dim
    if dim == 0:
        return HomologySignatures(g, tc, [zero] * g.num_edges)
    rows = {}
    succ = tc.cotree_succ
    depth = dual_depths(g, succ, tc.root_face)
    fo = g.face_of
    for i, e in enumerate(tc.leftover_edges):
        d = 2 * e
        # dual dart of d goes left -> right; close the cycle back in C
        cycle = [d] + dual_tree_path(g, succ, depth, fo[d], fo[d ^ 1])
        for x in cycle:
            row = rows.setdefault(x >> 1, [0] * dim)
            row[i] += -1 if x & 1 else 1
    edge_sig = [zero] * g.num_edges
    for e, row in rows.items():
        edge_sig[e] = tuple(row)
    return HomologySignatures(g, tc, edge_sig)


def walk_signature(sigs, walk):
    """Sum of dart signatures along ``walk`` (any iterable of darts).

    A mapping ``dart -> multiplicity`` is accepted as well.
    """
    acc = [0] * sigs.dim
    items = walk.items() if hasattr(walk, "items") else ((d, 1) for d in walk)
    es = sigs.edge_sig
    for d, k in items:
        if not k:
            continue
        s = es[d >> 1]
        if d & 1:
            k = -k
        for i, x in enumerate(s):
            if x:
                acc[i] += k * x
    return tuple(acc)


def _as_counts(flow):
    if hasattr(flow, "items"):
        return dict(flow)
    counts = {}
    for d in flow:
        counts[d] = counts.get(d, 0) + 1
    return counts


def imbalance(g, flow):
    """Net flow into each vertex: inflow minus outflow."""
    out = [0] * g.num_vertices
    hd = g.head
    for d, k in _as_counts(flow).items():
        out[hd[d]] += k
        out[hd[d ^ 1]] -= k
    return out


def dual_imbalance(g, z_of_dart):
    """Total dual flow into each face for an antisymmetric dart function."""
    out = [0] * g.num_faces
    for d in range(g.num_darts):
        out[g.face_of[d]] += z_of_dart(d)
    return out


def is_boundary_class(sigs, circulation):
    """Whether a circulation is the boundary of a face potential.

    Raises
    ------
    NotACirculation
        If some vertex has non-zero imbalance.
    """
    counts = _as_counts(circulation)
    bad = [v for v, b in enumerate(imbalance(sigs.graph, counts)) if b]
    if bad:
        raise NotACirculation(f"non-zero imbalance at vertices {bad[:10]}")
    return not any(walk_signature(sigs, counts))


def facial_walk(g, f):
    """Clockwise dart sequence of face ``f``."""
    return list(g.faces[f])


def tree_path_to_root(pred, head_of_tail, v):
    """Darts from the root to ``v`` following ``pred`` (root first)."""
    path = []
    while pred[v] >= 0:
        d = pred[v]
        path.append(d)
        v = head_of_tail(d)
    path.reverse()
    return path


def fundamental_cycle(g, pred, d):
    """Closed walk ``sigma(root, tail) . d . rev(sigma(root, head))``.

    Shared prefixes cancel in any signature computation, so they are left in.
    """
    tail = lambda x: g.head[x ^ 1]  # noqa: E731
    a = tree_path_to_root(pred, tail, g.head[d ^ 1])
    b = tree_path_to_root(pred, tail, g.head[d])
    return a + [d] + [x ^ 1 for x in reversed(b)]
