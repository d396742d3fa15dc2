"""Drainages and lexicographically perturbed dart costs.

A drainage is an antisymmetric dual flow whose dual imbalance is negative at
every face except a sink face ``r``.  The cotree drainage sends one unit of
dual flow from every face to ``r`` along a rooted dual spanning tree.

Perturbed costs append small symbolic terms to each original cost:

* ``standard``:  ``(c(d), 1) ++ [d] ++ (z(d,))``, length ``2g + 3``;
* ``modified``:  ``(c(d),) ++ [d] ++ (z(d,))``, length ``2g + 2``.

Vectors compare lexicographically.  The minimum-cost flow under the
standard variant is unique; the modified variant keeps this guarantee when
every directed cycle has strictly positive original cost.
"""

from .errors import DartMissing, DimensionMismatch, NotASpanningCotree, ParseError, VariantMismatch
from .homology import dual_depths

STANDARD = "standard"
MODIFIED = "modified"
VARIANTS = (STANDARD, MODIFIED)


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a):
    return tuple(-x for x in a)


class Drainage:
    """Antisymmetric dual flow stored once per edge.

    ``z[e]`` is the value on the canonical dart ``2e``; the other dart
    carries the negation.
    """

    __slots__ = ("sink", "z")

    def __init__(self, sink, z):
        self.sink = sink
        self.z = z

    def dart(self, d):
        v = self.z[d >> 1]
        return -v if d & 1 else v


def cotree_drainage(g, succ, sink=None):
    """Drainage that routes one unit from every face to the root of ``succ``.

    Parameters
    ----------
    g : EmbeddedGraph
    succ : list of int or TreeCotree
        ``succ[p]`` is the dart whose dual dart leaves face ``p`` towards the
        root (``-1`` at the root).  A :class:`TreeCotree` contributes its
        cotree.
    sink : int, optional
        Root face; inferred when omitted.

    Raises
    ------
    NotASpanningCotree
    """
    if hasattr(succ, "cotree_succ"):
        succ = succ.cotree_succ
    nf = g.num_faces
    if len(succ) != nf:
        raise NotASpanningCotree("successor table has the wrong length")
    roots = [p for p in range(nf) if succ[p] < 0]
    if len(roots) != 1 or (sink is not None and roots[0] != sink):
        raise NotASpanningCotree(f"expected a single root face, found {roots}")
    r = roots[0]
    fo = g.face_of
    for p in range(nf):
        d = succ[p]
        if d >= 0 and fo[d ^ 1] != p:
            raise NotASpanningCotree(f"successor of face {p} does not leave it")
    depth = dual_depths(g, succ, r)
    size = [1] * nf
    for p in sorted(range(nf), key=depth.__getitem__, reverse=True):
        d = succ[p]
        if d >= 0:
            size[fo[d]] += size[p]
    z = [0] * g.num_edges
    for p in range(nf):
        d = succ[p]
        if d >= 0:
            z[d >> 1] = -size[p] if d & 1 else size[p]
    return Drainage(r, z)


def dual_imbalance_of(g, dr):
    """Dual imbalance of a drainage, face by face."""
    out = [0] * g.num_faces
    z = dr.z
    for d in range(g.num_darts):
        v = z[d >> 1]
        out[g.face_of[d]] += -v if d & 1 else v
    return out


def cut_sum(g, dr, face_subset):
    """Sum of ``z`` over the clockwise neighbourhood of a face set.

    The clockwise neighbourhood holds the darts whose right face is inside
    the set and whose left face is outside it.
    """
    inside = [False] * g.num_faces
    for p in face_subset:
        inside[p] = True
    fo = g.face_of
    z = dr.z
    total = 0
    for d in range(g.num_darts):
        if inside[fo[d]] and not inside[fo[d ^ 1]]:
            v = z[d >> 1]
            total += -v if d & 1 else v
    return total


class PerturbedCost:
    """Integer vector compared lexicographically.

    Parameters
    ----------
    vec : tuple
        ``(c0, [unit], h_1..h_2g, z)``.
    variant : {'standard', 'modified'}
    """

    __slots__ = ("vec", "variant")

    def __init__(self, vec, variant=STANDARD):
        if variant not in VARIANTS:
            raise VariantMismatch(f"unknown variant {variant!r}")
        self.vec = tuple(vec)
        self.variant = variant

    @classmethod
    def zero(cls, genus, variant=STANDARD):
        n = 2 * genus + (3 if variant == STANDARD else 2)
        return cls((0,) * n, variant)

    @property
    def genus(self):
        extra = 3 if self.variant == STANDARD else 2
        return (len(self.vec) - extra) // 2

    @property
    def c0(self):
        return self.vec[0]

    @property
    def unit(self):
        return self.vec[1] if self.variant == STANDARD else None

    @property
    def h(self):
        off = 2 if self.variant == STANDARD else 1
        return self.vec[off:-1]

    @property
    def z(self):
        return self.vec[-1]

    def _check(self, other):
        if not isinstance(other, PerturbedCost):
            raise DimensionMismatch(f"cannot combine PerturbedCost with {type(other).__name__}")
        if other.variant != self.variant:
            raise VariantMismatch(f"{self.variant} vs {other.variant}")
        if len(other.vec) != len(self.vec):
            raise DimensionMismatch(f"length {len(self.vec)} vs {len(other.vec)}")

    def __add__(self, other):
        self._check(other)
        return PerturbedCost(vec_add(self.vec, other.vec), self.variant)

    def __sub__(self, other):
        self._check(other)
        return PerturbedCost(vec_sub(self.vec, other.vec), self.variant)

    def __neg__(self):
        return PerturbedCost(vec_neg(self.vec), self.variant)

    def scale(self, k):
        return PerturbedCost(tuple(k * x for x in self.vec), self.variant)

    def __eq__(self, other):
        if not isinstance(other, PerturbedCost):
            return NotImplemented
        self._check(other)
        return self.vec == other.vec

    def __hash__(self):
        return hash((self.vec, self.variant))

    def __lt__(self, other):
        self._check(other)
        return self.vec < other.vec

    def __le__(self, other):
        self._check(other)
        return self.vec <= other.vec

    def __gt__(self, other):
        self._check(other)
        return self.vec > other.vec

    def __ge__(self, other):
        self._check(other)
        return self.vec >= other.vec

    def __repr__(self):
        return f"PerturbedCost({self.vec}, {self.variant!r})"


def compare(a, b):
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    a._check(b)
    return (a.vec > b.vec) - (a.vec < b.vec)


def add(a, b):
    return a + b


def negate(a):
    return -a


def scale(a, k):
    return a.scale(k)


class CostTable:
    """Perturbed cost of every dart.

    Attributes
    ----------
    variant : str
    genus : int
    c : list
        Original costs (``None`` marks an unusable dart).
    vecs : list of tuple
        Raw perturbed vectors, the form the engines work with.
    sigs, drainage :
        The inputs the table was assembled from.
    """

    def __init__(self, variant, genus, c, vecs, sigs=None, drainage=None):
        self.variant = variant
        self.genus = genus
        self.c = c
        self.vecs = vecs
        self.sigs = sigs
        self.drainage = drainage

    @property
    def length(self):
        return 2 * self.genus + (3 if self.variant == STANDARD else 2)

    @property
    def h_offset(self):
        return 2 if self.variant == STANDARD else 1

    def __len__(self):
        return len(self.vecs)

    def __getitem__(self, d):
        return PerturbedCost(self.vecs[d], self.variant)

    def zero(self):
        return PerturbedCost.zero(self.genus, self.variant)

    def zero_vec(self):
        return (0,) * self.length

    def sum_over(self, walk):
        return sum_over(self, walk)


def sum_over(costs, walk):
    """Total perturbed cost of a dart sequence or ``dart -> count`` mapping."""
    acc = [0] * costs.length
    items = walk.items() if hasattr(walk, "items") else ((d, 1) for d in walk)
    vecs = costs.vecs
    for d, k in items:
        for i, x in enumerate(vecs[d]):
            acc[i] += k * x
    return PerturbedCost(tuple(acc), costs.variant)


def perturb_costs(g, c, sigs, dr, variant=STANDARD):
    """Assemble perturbed costs from original costs, signatures and drainage.

    Darts whose original cost is ``None`` are unusable and keep ``None``.
    """
    if variant not in VARIANTS:
        raise VariantMismatch(f"unknown variant {variant!r}")
    if len(c) != g.num_darts:
        raise DimensionMismatch(f"expected {g.num_darts} costs, got {len(c)}")
    if sigs.dim != 2 * g.genus:
        raise DimensionMismatch("signature table belongs to another genus")
    vecs = []
    head = (1,) if variant == STANDARD else ()
    es = sigs.edge_sig
    z = dr.z
    for d in range(g.num_darts):
        cd = c[d]
        if cd is None:
            vecs.append(None)
            continue
        s = es[d >> 1]
        zd = z[d >> 1]
        if d & 1:
            s = tuple(-x for x in s)
            zd = -zd
        vecs.append((cd,) + head + s + (zd,))
    return CostTable(variant, g.genus, list(c), vecs, sigs, dr)


# ---------------------------------------------------------------------------
# .cst text format

def read_cst(text, num_darts, default_cost=None):
    """Parse ``dart_id cost`` lines into a per-dart cost list."""
    c = [None] * num_darts
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'dart_id cost'")
        try:
            d, cost = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer field") from None
        if not 0 <= d < num_darts:
            raise ParseError(f"line {lineno}: dart {d} out of range")
        if cost < 0:
            raise ParseError(f"line {lineno}: negative cost {cost}")
        if c[d] is not None:
            raise ParseError(f"line {lineno}: dart {d} given twice")
        c[d] = cost
    missing = [d for d, x in enumerate(c) if x is None]
    if missing:
        if default_cost is None:
            raise DartMissing(f"no cost for darts {missing[:10]}")
        for d in missing:
            c[d] = default_cost
    return c


def write_cst(c):
    return "".join(f"{d} {x}\n" for d, x in enumerate(c))
