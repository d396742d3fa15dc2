"""Instance generators and brute-force ground truth.

Everything here favours obviousness over speed: the vector Bellman-Ford,
the exhaustive path enumeration and the exhaustive flow enumeration are the
references the fast engines are measured against.
"""

import heapq
import random

from .embedding import build_embedding
from .errors import BadParameters, Infeasible, NegativeCycle, TooLarge
from .homology import homology_signatures, tree_cotree
from .perturb import MODIFIED, STANDARD, cotree_drainage, perturb_costs, vec_add


# ---------------------------------------------------------------------------
# generators

def torus_grid(w, h):
    """``w x h`` grid with wrap-around in both directions (genus 1 for w, h >= 1).

    Vertex ``(i, j)`` has id ``j*w + i``.  Edge ``2*(j*w + i)`` runs east from
    it and edge ``2*(j*w + i) + 1`` runs north, canonical darts pointing away
    from ``(i, j)``.
    """
    if w < 1 or h < 1:
        raise BadParameters(f"torus_grid needs w, h >= 1, got {w}, {h}")
    vid = lambda i, j: (j % h) * w + (i % w)  # noqa: E731
    rotation = []
    for j in range(h):
        for i in range(w):
            v = vid(i, j)
            east = 2 * (2 * v) + 1  # reversal of my east edge, coming from the east
            north = 2 * (2 * v + 1) + 1
            west = 2 * (2 * vid(i - 1, j))
            south = 2 * (2 * vid(i, j - 1) + 1)
            rotation.append([east, north, west, south])
    return build_embedding(w * h, 2 * w * h, rotation)


def planar_grid(w, h):
    """``w x h`` grid graph with its planar embedding (genus 0)."""
    if w < 1 or h < 1:
        raise BadParameters(f"planar_grid needs w, h >= 1, got {w}, {h}")
    hor, ver = {}, {}
    ne = 0
    for j in range(h):
        for i in range(w):
            if i + 1 < w:
                hor[(i, j)] = ne
                ne += 1
            if j + 1 < h:
                ver[(i, j)] = ne
                ne += 1
    rotation = []
    for j in range(h):
        for i in range(w):
            rot = []
            if (i, j) in hor:
                rot.append(2 * hor[(i, j)] + 1)
            if (i, j) in ver:
                rot.append(2 * ver[(i, j)] + 1)
            if (i - 1, j) in hor:
                rot.append(2 * hor[(i - 1, j)])
            if (i, j - 1) in ver:
                rot.append(2 * ver[(i, j - 1)])
            rotation.append(rot)
    return build_embedding(w * h, ne, rotation)


def bouquet(g):
    """One vertex with ``2g`` loops in the order ``a b a' b' c d c' d' ...``."""
    if g < 0:
        raise BadParameters(f"bouquet needs g >= 0, got {g}")
    rot = []
    for k in range(g):
        a, b = 2 * k, 2 * k + 1
        rot.extend([2 * a, 2 * b, 2 * a + 1, 2 * b + 1])
    return build_embedding(1, 2 * g, [rot])


def path_graph(n):
    """Path on ``n`` vertices; a single face."""
    if n < 1:
        raise BadParameters("path_graph needs n >= 1")
    rotation = []
    for v in range(n):
        rot = []
        if v > 0:
            rot.append(2 * (v - 1))  # edge v-1 -> v
        if v + 1 < n:
            rot.append(2 * v + 1)
        rotation.append(rot)
    return build_embedding(n, n - 1, rotation)


def cycle_graph(n):
    """Cycle on ``n`` vertices embedded in the plane (two faces)."""
    if n < 1:
        raise BadParameters("cycle_graph needs n >= 1")
    return build_embedding(n, n, [[2 * ((v - 1) % n), 2 * v + 1] for v in range(n)])


def random_skeleton(n, m, seed):
    """Connected multigraph skeleton: a random spanning tree plus extra edges.

    Returns a list of ``(u, v)`` pairs; edge ``e`` is directed ``u -> v``.
    """
    if n < 1 or m < n - 1:
        raise BadParameters(f"cannot build a connected skeleton with n={n}, m={m}")
    rng = random.Random(seed)
    edges = []
    order = list(range(n))
    rng.shuffle(order)
    for k in range(1, n):
        edges.append((order[rng.randrange(k)], order[k]))
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v and n > 1:
            continue
        edges.append((u, v))
    rng.shuffle(edges)
    return [(u, v) if rng.random() < 0.5 else (v, u) for u, v in edges]


def random_rotation(skeleton, seed, num_vertices=None):
    """Embed a skeleton with a uniformly random rotation at every vertex."""
    rng = random.Random(seed)
    n = num_vertices if num_vertices is not None else 1 + max(max(e) for e in skeleton)
    incoming = [[] for _ in range(n)]
    for e, (u, v) in enumerate(skeleton):
        incoming[v].append(2 * e)
        incoming[u].append(2 * e + 1)
    for rot in incoming:
        rng.shuffle(rot)
    return build_embedding(n, len(skeleton), incoming)


def random_embedded(n, genus, seed, extra=None, attempts=200):
    """Random embedded graph on ``n`` vertices with the requested genus.

    Draws skeletons with ``n - 1 + extra`` edges and random rotations until
    the genus matches; ``BadParameters`` if no attempt succeeds.
    """
    rng = random.Random(seed)
    for _ in range(attempts):
        k = extra if extra is not None else 2 * genus + rng.randrange(0, max(2, n // 2))
        k = max(k, 2 * genus)
        sk = random_skeleton(n, n - 1 + k, rng.randrange(1 << 30))
        g = random_rotation(sk, rng.randrange(1 << 30), n)
        if g.genus == genus:
            return g
    raise BadParameters(f"no genus-{genus} embedding found for n={n}")


def insert_edge(g, d1, d2):
    """Add a new edge whose darts sit right after ``d1`` and ``d2``.

    The new canonical dart points into ``head(d1)`` and lands in the corner
    following ``d1``; its reversal lands after ``d2``.  Corners in the same
    face split that face, corners in different faces raise the genus by one.
    """
    e = g.num_edges
    rotation = [list(r) for r in g.rotation]
    for dart, after in ((2 * e, d1), (2 * e + 1, d2)):
        rot = rotation[g.head[after]]
        rot.insert(rot.index(after) + 1, dart)
    return build_embedding(g.num_vertices, e + 1, rotation)


def random_surface_graph(n, genus, seed, extra=None):
    """Random embedded graph with many faces and a prescribed genus.

    A random tree (planar for any rotation) receives ``extra`` chords inside
    faces, which keep it planar, then ``genus`` chords joining corners of
    two distinct faces, each adding a handle.
    """
    if n < 1 or genus < 0:
        raise BadParameters(f"bad n={n}, genus={genus}")
    rng = random.Random(seed)
    if extra is None:
        extra = rng.randrange(0, n + 1)
    if n == 1:
        return bouquet(genus)
    sk = random_skeleton(n, n - 1, rng.randrange(1 << 30))
    g = random_rotation(sk, rng.randrange(1 << 30), n)
    for _ in range(extra):
        f = g.faces[rng.randrange(g.num_faces)]
        d1, d2 = rng.choice(f), rng.choice(f)
        if g.head[d1] == g.head[d2]:
            continue
        g = insert_edge(g, d1, d2)
    while g.genus < genus:
        if g.num_faces < 2:
            f = g.faces[0]
            d1, d2 = rng.choice(f), rng.choice(f)
            if g.head[d1] != g.head[d2]:
                g = insert_edge(g, d1, d2)
            continue
        p, q = rng.sample(range(g.num_faces), 2)
        g = insert_edge(g, rng.choice(g.faces[p]), rng.choice(g.faces[q]))
    return g


def unit_costs(g):
    return [1] * g.num_darts


def uniform_random_costs(g, max_cost, seed, min_cost=0):
    rng = random.Random(seed)
    return [rng.randint(min_cost, max_cost) for _ in range(g.num_darts)]


def has_zero_cycle(g, c):
    """Whether the darts of zero original cost contain a directed cycle."""
    n = g.num_vertices
    indeg = [0] * n
    adj = [[] for _ in range(n)]
    for d in range(g.num_darts):
        if c[d] == 0:
            adj[g.head[d ^ 1]].append(g.head[d])
            indeg[g.head[d]] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        x = stack.pop()
        seen += 1
        for y in adj[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                stack.append(y)
    return seen < n


def positive_cycle_costs(g, max_cost, seed):
    """Random costs in ``[0, max_cost]`` with every directed cycle positive.

    Zero-cost darts are kept only when they point forward in a random vertex
    order, so they cannot close a cycle; the rest are redrawn from
    ``[1, max_cost]``.
    """
    rng = random.Random(seed)
    c = [rng.randint(0, max_cost) for _ in range(g.num_darts)]
    rank = list(range(g.num_vertices))
    rng.shuffle(rank)
    hd = g.head
    for d in range(g.num_darts):
        if c[d] == 0 and rank[hd[d ^ 1]] >= rank[hd[d]]:
            c[d] = rng.randint(1, max(1, max_cost))
    return c


class Instance:
    """An embedded graph with costs, a sink face and perturbation inputs."""

    def __init__(self, graph, costs, sink_face=0, name=""):
        self.graph = graph
        self.c = costs
        self.sink_face = sink_face
        self.name = name

    def __repr__(self):
        return f"Instance({self.name}, {self.graph!r}, r={self.sink_face})"


def make_instance(kind, params, cost_model="unit", max_cost=1, seed=0, sink_face=0):
    """Build an instance from a generator spec.

    ``kind`` is one of ``torus_grid``, ``planar_grid``, ``bouquet``,
    ``random_rotation``, ``path``, ``cycle``; ``cost_model`` is ``unit``,
    ``uniform_random`` or ``positive_random``.
    """
    if kind == "torus_grid":
        g = torus_grid(*params)
    elif kind == "planar_grid":
        g = planar_grid(*params)
    elif kind == "bouquet":
        g = bouquet(*params)
    elif kind == "random_rotation":
        n, genus = params
        g = random_embedded(n, genus, seed)
    elif kind == "path":
        g = path_graph(*params)
    elif kind == "cycle":
        g = cycle_graph(*params)
    else:
        raise BadParameters(f"unknown generator {kind!r}")
    if cost_model == "unit":
        c = unit_costs(g)
    elif cost_model == "uniform_random":
        c = uniform_random_costs(g, max_cost, seed)
    elif cost_model == "positive_random":
        c = positive_cycle_costs(g, max_cost, seed)
    else:
        raise BadParameters(f"unknown cost model {cost_model!r}")
    if not 0 <= sink_face < g.num_faces:
        raise BadParameters(f"sink face {sink_face} out of range")
    return Instance(g, c, sink_face, f"{kind}{tuple(params)}")


def standard_costs(g, c, root_vertex=0, sink_face=0):
    """Standard-variant table from a BFS tree-cotree and its cotree drainage."""
    tc = tree_cotree(g, root_vertex, sink_face)
    sigs = homology_signatures(g, tc)
    dr = cotree_drainage(g, tc)
    return perturb_costs(g, c, sigs, dr, STANDARD)


def modified_costs(g, c, root_vertex=0, sink_face=0):
    tc = tree_cotree(g, root_vertex, sink_face)
    sigs = homology_signatures(g, tc)
    dr = cotree_drainage(g, tc)
    return perturb_costs(g, c, sigs, dr, MODIFIED)


# ---------------------------------------------------------------------------
# brute-force oracles

def brute_sssp(g, costs, source):
    """Vector Bellman-Ford; returns ``(dist, pred)`` with ``None`` when unreached.

    Raises
    ------
    NegativeCycle
        If relaxation still improves after ``|V| - 1`` rounds.
    """
    n = g.num_vertices
    vecs = costs.vecs
    dist = [None] * n
    pred = [-1] * n
    dist[source] = costs.zero_vec()
    hd = g.head
    darts = [d for d in range(g.num_darts) if vecs[d] is not None]
    for _ in range(max(1, n)):
        changed = False
        for d in darts:
            x = hd[d ^ 1]
            if dist[x] is None:
                continue
            y = hd[d]
            cand = vec_add(dist[x], vecs[d])
            if dist[y] is None or cand < dist[y]:
                if y == source:
                    raise NegativeCycle(f"cycle through the source improves it via dart {d}")
                dist[y] = cand
                pred[y] = d
                changed = True
        if not changed:
            return dist, pred
    raise NegativeCycle("relaxation did not converge")


def _plain_dijkstra(g, c, source, reverse=False):
    n = g.num_vertices
    dist = [None] * n
    dist[source] = 0
    heap = [(0, source)]
    hd = g.head
    while heap:
        dx, x = heapq.heappop(heap)
        if dx != dist[x]:
            continue
        for d_in in g.rotation[x]:
            d = d_in if reverse else d_in ^ 1
            cd = c[d]
            if cd is None:
                continue
            y = hd[d ^ 1] if reverse else hd[d]
            nd = dx + cd
            if dist[y] is None or nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def dijkstra_distances(g, c, source):
    """Unperturbed single-source distances (``None`` when unreachable)."""
    return _plain_dijkstra(g, c, source)


def enumerate_min_paths(g, c, s, t, bound=12):
    """All simple ``s -> t`` paths of minimum original cost.

    Paths are dart lists.  A partial path is extended only while its cost
    plus the exact remaining distance stays within the optimum, so every
    optimal simple path is produced and nothing else is explored.

    Raises
    ------
    TooLarge
        If the graph has more than ``bound`` vertices.
    """
    if g.num_vertices > bound:
        raise TooLarge(f"{g.num_vertices} vertices exceed the bound {bound}")
    to_t = _plain_dijkstra(g, c, t, reverse=True)
    if to_t[s] is None:
        return []
    best = to_t[s]
    if s == t:
        return [[]]
    out = []
    on_path = [False] * g.num_vertices
    on_path[s] = True
    path = []
    hd = g.head

    def extend(x, cost):
        if x == t:
            out.append(list(path))
            return
        for d_in in g.rotation[x]:
            d = d_in ^ 1
            cd = c[d]
            if cd is None:
                continue
            y = hd[d]
            if on_path[y] or to_t[y] is None or cost + cd + to_t[y] > best:
                continue
            on_path[y] = True
            path.append(d)
            extend(y, cost + cd)
            path.pop()
            on_path[y] = False

    extend(s, 0)
    return out


def enumerate_min_flows(g, c, mu, b, max_edges=8, max_capacity=2):
    """All integral feasible flows of minimum original cost.

    Dart values range over ``0..mu[d]``; a flow is feasible when every
    vertex's inflow minus outflow equals ``b[v]``.  Flows are returned as
    tuples indexed by dart.

    Raises
    ------
    TooLarge
        If ``|E| > max_edges`` or some capacity exceeds ``max_capacity``.
    Infeasible
        If no feasible flow exists.
    """
    if g.num_edges > max_edges:
        raise TooLarge(f"{g.num_edges} edges exceed the bound {max_edges}")
    if any(m > max_capacity for m in mu):
        raise TooLarge(f"capacities exceed {max_capacity}")
    n = g.num_vertices
    nd = g.num_darts
    hd = g.head
    order = sorted(range(nd), key=lambda d: (min(hd[d], hd[d ^ 1]), d))
    # remaining in/out capacity at every vertex, for pruning
    rem_in = [0] * n
    rem_out = [0] * n
    for d in range(nd):
        rem_in[hd[d]] += mu[d]
        rem_out[hd[d ^ 1]] += mu[d]
    cur = [0] * n
    f = [0] * nd
    feasible = []

    def ok(v):
        need = b[v] - cur[v]
        return -rem_out[v] <= need <= rem_in[v]

    def go(k):
        if k == nd:
            if all(cur[v] == b[v] for v in range(n)):
                feasible.append(tuple(f))
            return
        d = order[k]
        y, x = hd[d], hd[d ^ 1]
        rem_in[y] -= mu[d]
        rem_out[x] -= mu[d]
        for val in range(mu[d] + 1):
            cur[y] += val
            cur[x] -= val
            f[d] = val
            if ok(x) and ok(y):
                go(k + 1)
            cur[y] -= val
            cur[x] += val
        f[d] = 0
        rem_in[y] += mu[d]
        rem_out[x] += mu[d]

    go(0)
    if not feasible:
        raise Infeasible("no integral flow meets the demands")
    costs = [sum(fd * c[d] for d, fd in enumerate(fl)) for fl in feasible]
    best = min(costs)
    return [fl for fl, k in zip(feasible, costs) if k == best]


def flow_cost_vector(costs, flow):
    """Perturbed cost of a flow given as a per-dart tuple."""
    acc = [0] * costs.length
    for d, k in enumerate(flow):
        if k:
            for i, x in enumerate(costs.vecs[d]):
                acc[i] += k * x
    return tuple(acc)


def lex_winners(costs, candidates, cost_of):
    """Candidates achieving the lexicographically least perturbed cost."""
    scored = [(cost_of(costs, cand), i) for i, cand in enumerate(candidates)]
    best = min(s for s, _ in scored)
    return [candidates[i] for s, i in scored if s == best]


def path_cost_vector(costs, path):
    acc = costs.zero_vec()
    for d in path:
        acc = vec_add(acc, costs.vecs[d])
    return acc



def fuzz_instance(seed, max_n=200, max_genus=3, max_cost=5):
    """Seeded random instance for the cross-engine campaigns.

    Returns ``(g, c, r)``: a random surface graph with at most ``max_n``
    vertices and genus at most ``max_genus``, costs in ``[0, max_cost]`` with
    every directed cycle positive, and a face ``r`` (the longest face half
    of the time, so the source visits many vertices).
    """
    rng = random.Random(seed)
    n = rng.randint(1, max(1, max_n))
    genus = rng.randint(0, max_genus)
    g = random_surface_graph(n, genus, rng.randrange(1 << 30))
    c = positive_cycle_costs(g, rng.randint(0, max_cost), rng.randrange(1 << 30))
    if rng.random() < 0.5:
        r = max(range(g.num_faces), key=lambda f: len(g.faces[f]))
    else:
        r = rng.randrange(g.num_faces)
    return g, c, r
