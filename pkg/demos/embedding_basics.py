"""
Rotation systems and surfaces
=============================

A graph embedded on an orientable surface is fully described by the cyclic
order of darts around each vertex.  Faces, genus and the dual graph all
follow from that order.
"""

from holiest import build_embedding
from holiest.embedding import dual
from holiest.oracles import torus_grid

# One vertex, two loops.  Edge ``e`` owns darts ``2e`` and ``2e + 1``; the
# rotation lists incoming darts counterclockwise.
bouquet = build_embedding(1, 2, [[0, 2, 1, 3]])
print(bouquet)
print("faces:", bouquet.faces)

###############################################################################
# Interleaving the two loops forces a single face, so Euler's formula gives
# ``1 - 2 + 1 = 2 - 2g`` and the surface is a torus.

print("genus:", bouquet.genus)

###############################################################################
# A 3 x 3 grid with wrap-around is another torus.  Its dual has a vertex per
# face and is again a 3 x 3 torus grid.

g = torus_grid(3, 3)
h = dual(g).as_graph()
print(g, "->", h)
print("dual face sizes:", sorted(len(f) for f in h.faces))
