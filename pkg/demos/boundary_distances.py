"""
Distances along a monotone correspondence
=========================================

Pairs ``(i, j)`` ask for the distance from the ``i``-th vertex on the
boundary of a face to the ``j``-th vertex of a walk.  When the pairs never
step backwards a single scalar can ride along the source sweep and answer
all of them.
"""

from holiest import mssp_distances, source_sequence
from holiest.oracles import dijkstra_distances, positive_cycle_costs, torus_grid

g = torus_grid(5, 5)
c = positive_cycle_costs(g, 4, seed=1)
sources = source_sequence(g, 0)
walk = [0, 1, 2, 7, 12, 13, 18, 23]
pairs = [(0, 0), (0, 3), (1, 4), (2, 6), (3, 7)]

for i, j, dist in mssp_distances(g, c, 0, walk, pairs):
    check = dijkstra_distances(g, c, sources[i])[walk[j]]
    print(f"from {sources[i]:2d} to {walk[j]:2d}: {dist} (Dijkstra {check})")
