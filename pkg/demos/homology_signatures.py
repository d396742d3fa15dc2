"""
Tree-cotree decompositions and homology signatures
==================================================

Removing a spanning tree and a dual spanning tree leaves ``2g`` edges.  Each
of them closes a dual cycle, and counting how often an edge crosses these
cycles gives its homology signature.
"""

from holiest import homology_signatures, tree_cotree
from holiest.homology import facial_walk, walk_signature
from holiest.oracles import torus_grid

g = torus_grid(4, 4)
tc = tree_cotree(g, 0, 0)
sigs = homology_signatures(g, tc)
print(len(tc.tree_edges), "tree edges,", len(tc.cotree_edges), "cotree edges")
print("leftover edges:", tc.leftover_edges)

###############################################################################
# Tree edges carry no signature and each leftover edge carries a unit vector.

for e in tc.leftover_edges:
    print("edge", e, sigs.edge_sig[e])
assert all(sigs.edge_sig[e] == (0, 0) for e in tc.tree_edges)

###############################################################################
# Walking once around a face crosses every dual cycle as often forwards as
# backwards, so facial walks are null-homologous.

print({walk_signature(sigs, facial_walk(g, p)) for p in range(g.num_faces)})

###############################################################################
# A row of the grid wraps around the torus and is not.

row = [2 * e for e in range(0, 8, 2)]
print("a row of the grid:", walk_signature(sigs, row))
