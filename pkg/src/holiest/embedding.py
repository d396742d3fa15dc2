"""Rotation-system representation of cellularly embedded graphs.

Every edge ``e`` owns two darts, ``2e`` (the canonical dart) and ``2e + 1``;
reversal flips the lowest bit.  A rotation lists, for one vertex, the darts
directed *into* that vertex in counterclockwise order.  From these lists we
derive the permutation ``pi`` (next incoming dart counterclockwise), the
faces as orbits of ``rev o pi`` and the genus from Euler's formula.

The face orbit containing a dart is the face on the *right* of that dart.
Seen from the dual graph, dart ``d`` runs from the face on its left
(``face_of[rev(d)]``) to the face on its right (``face_of[d]``), i.e. the
dual dart crosses the primal one from left to right.

Examples
--------
>>> g = build_embedding(1, 2, [[0, 2, 1, 3]])
>>> g.num_faces, g.genus
(1, 1)
"""

from collections import deque

from .errors import (
    DartMissing,
    DartMultiplyListed,
    NonIntegralGenus,
    NotConnected,
    ParseError,
)


def rev(d):
    """Reversal of dart ``d``."""
    return d ^ 1


def edge_of(d):
    """Edge owning dart ``d``."""
    return d >> 1


class EmbeddedGraph:
    """Immutable cellularly embedded multigraph given by a rotation system.

    Use :func:`build_embedding` rather than calling the constructor with
    unchecked data.

    Attributes
    ----------
    num_vertices, num_edges, num_faces : int
    head : list of int
        Vertex each dart points into.
    pi : list of int
        Counterclockwise successor of each dart among the darts sharing its
        head.
    rotation : list of list of int
        Incoming darts per vertex, counterclockwise.
    face_of : list of int
        Face on the right of each dart.
    faces : list of list of int
        Clockwise dart sequence of every face, each starting at its smallest
        dart.
    face_pos : list of int
        Position of each dart inside its face list.
    genus : int
    """

    __slots__ = (
        "num_vertices",
        "num_edges",
        "num_faces",
        "head",
        "pi",
        "rotation",
        "face_of",
        "faces",
        "face_pos",
        "genus",
    )

    def __init__(self, num_vertices, num_edges, head, pi, rotation, face_of, faces, face_pos, genus):
        self.num_vertices = num_vertices
        self.num_edges = num_edges
        self.head = head
        self.pi = pi
        self.rotation = rotation
        self.face_of = face_of
        self.faces = faces
        self.face_pos = face_pos
        self.num_faces = len(faces)
        self.genus = genus

    @property
    def num_darts(self):
        return 2 * self.num_edges

    def tail(self, d):
        return self.head[d ^ 1]

    def left_face(self, d):
        """Face on the left of ``d`` (tail of the dual dart)."""
        return self.face_of[d ^ 1]

    def right_face(self, d):
        """Face on the right of ``d`` (head of the dual dart)."""
        return self.face_of[d]

    def out_darts(self, v):
        """Darts leaving ``v``, in the order of its rotation."""
        return [d ^ 1 for d in self.rotation[v]]

    def size(self):
        return self.num_vertices + self.num_edges + self.num_faces

    def __repr__(self):
        return (
            f"EmbeddedGraph(V={self.num_vertices}, E={self.num_edges}, "
            f"F={self.num_faces}, genus={self.genus})"
        )


def _face_orbits(num_darts, pi):
    face_of = [-1] * num_darts
    face_pos = [0] * num_darts
    faces = []
    for start in range(num_darts):
        if face_of[start] >= 0:
            continue
        f = len(faces)
        orbit = []
        d = start
        while face_of[d] < 0:
            face_of[d] = f
            face_pos[d] = len(orbit)
            orbit.append(d)
            d = pi[d] ^ 1
        faces.append(orbit)
    return faces, face_of, face_pos


def build_embedding(num_vertices, num_edges, rotation, head=None):
    """Validate a rotation system and derive faces and genus.

    Parameters
    ----------
    num_vertices, num_edges : int
    rotation : sequence of sequence of int
        ``rotation[v]`` lists the darts directed into ``v`` in
        counterclockwise order.
    head : sequence of int, optional
        Redundant head map; when given it must agree with ``rotation``.

    Returns
    -------
    EmbeddedGraph

    Raises
    ------
    DartMultiplyListed, DartMissing, NotConnected, NonIntegralGenus
    """
    if num_vertices < 1:
        raise NotConnected("an embedded graph needs at least one vertex")
    if len(rotation) != num_vertices:
        raise ParseError(f"expected {num_vertices} rotation lists, got {len(rotation)}")
    nd = 2 * num_edges
    hd = [-1] * nd
    pi = [-1] * nd
    rot = []
    for v, darts in enumerate(rotation):
        darts = [int(d) for d in darts]
        for d in darts:
            if not 0 <= d < nd:
                raise DartMissing(f"dart {d} at vertex {v} is outside 0..{nd - 1}")
            if hd[d] >= 0:
                raise DartMultiplyListed(f"dart {d} listed at vertices {hd[d]} and {v}")
            hd[d] = v
        k = len(darts)
        for i, d in enumerate(darts):
            pi[d] = darts[(i + 1) % k]
        rot.append(darts)
    missing = [d for d in range(nd) if hd[d] < 0]
    if missing:
        raise DartMissing(f"darts not in any rotation: {missing[:10]}")
    if head is not None and list(head) != hd:
        raise ParseError("head map disagrees with rotation lists")

    # connectivity over the underlying undirected graph
    seen = [False] * num_vertices
    seen[0] = True
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for d in rot[x]:
            y = hd[d ^ 1]
            if not seen[y]:
                seen[y] = True
                queue.append(y)
    if not all(seen):
        raise NotConnected(f"vertex {seen.index(False)} unreachable from vertex 0")

    if nd == 0:
        # a lone vertex on the sphere: one face with an empty boundary
        faces, face_of, face_pos = [[]], [], []
    else:
        faces, face_of, face_pos = _face_orbits(nd, pi)
    twice_g = 2 - num_vertices + num_edges - len(faces)
    if twice_g < 0 or twice_g % 2:
        raise NonIntegralGenus(
            f"V - E + F = {num_vertices - num_edges + len(faces)} is not 2 - 2g"
        )
    return EmbeddedGraph(num_vertices, num_edges, hd, pi, rot, face_of, faces, face_pos, twice_g // 2)


def faces(g):
    """Clockwise dart sequences of the faces of ``g``."""
    return [list(f) for f in g.faces]


def genus(g):
    """Genus recovered from ``|V| - |E| + |F| = 2 - 2g``."""
    twice_g = 2 - g.num_vertices + g.num_edges - g.num_faces
    if twice_g < 0 or twice_g % 2:
        raise NonIntegralGenus(str(twice_g))
    return twice_g // 2


class DualView:
    """Dual incidences of an embedded graph.

    The dual dart of ``d`` runs from ``tail_face[d]`` (left of ``d``) to
    ``head_face[d]`` (right of ``d``).  Faces of the primal graph, listed
    as orbits of ``rev o pi``, serve as the rotations of the dual vertices.
    """

    def __init__(self, g):
        self.primal = g
        self.head_face = list(g.face_of)
        self.tail_face = [g.face_of[d ^ 1] for d in range(g.num_darts)]
        self.rotation = faces(g)

    def as_graph(self):
        """The dual as an :class:`EmbeddedGraph` (dual vertices are faces)."""
        g = self.primal
        if g.num_edges == 0:
            return build_embedding(1, 0, [[]])
        return build_embedding(g.num_faces, g.num_edges, self.rotation)


def dual(g):
    """Return the :class:`DualView` of ``g``."""
    return DualView(g)


# ---------------------------------------------------------------------------
# .emg text format

def read_emg(text):
    """Parse the ``.emg`` format into an :class:`EmbeddedGraph`.

    Line 1 is ``emg 1``, line 2 ``V E``, then one line per vertex with its
    counterclockwise rotation of incoming dart ids.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    if not lines or lines[0].split() != ["emg", "1"]:
        raise ParseError("first line must be 'emg 1'")
    try:
        nv, ne = (int(t) for t in lines[1].split())
    except (IndexError, ValueError):
        raise ParseError("second line must be '<V> <E>'") from None
    # a rotation line may be empty (a lone vertex), so only lines past the
    # last vertex may be blank padding
    body = lines[2:2 + nv]
    if len(body) != nv or any(lines[2 + nv:]):
        raise ParseError(f"expected {nv} rotation lines, got {len(lines) - 2}")
    try:
        rotation = [[int(t) for t in ln.split()] for ln in body]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return build_embedding(nv, ne, rotation)


def write_emg(g):
    """Serialize ``g`` in the ``.emg`` format."""
    out = ["emg 1", f"{g.num_vertices} {g.num_edges}"]
    out.extend(" ".join(str(d) for d in r) for r in g.rotation)
    return "\n".join(out) + "\n"


def load_emg(path):
    with open(path, encoding="utf-8") as fh:
        return read_emg(fh.read())
